//! Constrained polynomial generation, batch verification, JSON/CSV output
//! and the `flett` command line on top of `flett-core`.

// `!(x < y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod generator;
pub mod output;
pub mod verify;

pub use generator::{gen_constrained_poly, ConstrainedPoly, GenError, GeneratorSpec};
pub use verify::{verify_batch, verify_problem, BatchSpec, Outcome, VerificationReport, VerifyError};
