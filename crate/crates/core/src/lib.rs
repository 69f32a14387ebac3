//! Numerics for Flett-type mean value theorems.
//!
//! Given a function `f` (and optionally `g`) on `⟨a, b⟩`, this crate locates
//! witness points `η` for Flett's theorem and its higher-order and
//! two-function generalizations, replays the constructive cascade of nested
//! Flett points, and evaluates Trahan-type sufficient conditions.
//!
//! * [`jet`]: truncated Taylor arithmetic for exact higher derivatives.
//! * [`expr`]: parser and evaluator for one-variable expressions.
//! * [`theorems`]: K-ratios, Taylor polynomials, residuals, auxiliary
//!   functions and condition checks.
//! * [`solver`]: grid scan plus bisection, `solve` and `cascade_solve`.
//!
//! The crate is `no_std` and only needs `alloc`.

// `!(x < y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod expr;
pub mod jet;
pub mod solver;
pub mod theorems;

pub use error::Error;
pub use expr::{parse, Expr, ParseError};
pub use jet::{Jet, JetError};
pub use solver::{
    cascade_solve, find_roots, solve, CascadeWitness, RootPolicy, RootScan, ScanSettings, SolverConfig, Witness,
    WitnessStatus,
};
pub use theorems::{ConditionReport, MvtProblem, Variant};
