//! Formulas behind the Flett-type theorems: K-ratios, Taylor polynomials,
//! signed residuals whose roots are witness points, the auxiliary functions
//! of the cascade construction, and the Trahan-type condition checks.
//!
//! Residual orientation (roots are what matter, the sign is a convention):
//!
//! | variant        | residual r(x)                                              |
//! |----------------|------------------------------------------------------------|
//! | Flett          | f'(x)(x-a) - (f(x) - f(a))                                 |
//! | Riedel–Sahoo   | f'(x) - (f(x)-f(a))/(x-a) - K(f')(x-a)/2                   |
//! | Pawlikowska    | f(a) - T_n(f,x)(a)                                         |
//! | Theorem 7      | f(a) - T_n(f,x)(a) - (a-x)^(n+1)/(n+1)! K(f^(n))           |
//! | two-function   | f(a) - T_n(f,x)(a) - K(f^(n),g^(n)) (g(a) - T_n(g,x)(a))   |

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::Error;
use crate::expr::{BinOp, Expr};
use crate::jet::{factorial, Jet};

/// Points sampled when estimating the derivative scale of a function.
pub const SCALE_SAMPLES: usize = 33;

/// Default relative tolerance of the equal-derivative boundary condition.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

/// Default relative tolerance of the Trahan-type checks.
pub const DEFAULT_CONDITION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Flett,
    RiedelSahoo,
    Pawlikowska,
    Theorem7,
    TwoFunction,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Flett,
        Variant::RiedelSahoo,
        Variant::Pawlikowska,
        Variant::Theorem7,
        Variant::TwoFunction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Flett => "flett",
            Variant::RiedelSahoo => "riedel-sahoo",
            Variant::Pawlikowska => "pawlikowska",
            Variant::Theorem7 => "theorem7",
            Variant::TwoFunction => "two-function",
        }
    }

    pub fn from_name(name: &str) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.name() == name)
    }

    /// Flett and Riedel–Sahoo are first-order statements.
    pub fn forces_order_one(self) -> bool {
        matches!(self, Variant::Flett | Variant::RiedelSahoo)
    }

    /// Whether the theorem assumes `f^(n)(a) = f^(n)(b)`.
    pub fn needs_equal_derivatives(self) -> bool {
        matches!(self, Variant::Flett | Variant::Pawlikowska)
    }
}

fn check_interval(a: f64, b: f64) -> Result<(), Error> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(Error::InvalidInterval { a, b })
    }
}

fn sign_pow(i: usize) -> f64 {
    if i.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `T_n(f, x0)(x)` from a jet of `f` at `x0` of order at least `n`.
fn taylor_from_jet(jet: &Jet, n: usize, x: f64) -> f64 {
    let h = x - jet.base_point();
    jet.coeffs()[..=n].iter().rev().fold(0.0, |acc, c| acc * h + c)
}

/// `(f^(n)(b) - f^(n)(a)) / (g^(n)(b) - g^(n)(a))`; without `g` the
/// denominator is `b - a`.
pub fn k_ratio(f: &Expr, g: Option<&Expr>, a: f64, b: f64, n: usize) -> Result<f64, Error> {
    let fa = f.eval_jet(a, n)?.derivative(n)?;
    let fb = f.eval_jet(b, n)?.derivative(n)?;
    let denominator = match g {
        Some(g) => {
            let ga = g.eval_jet(a, n)?.derivative(n)?;
            let gb = g.eval_jet(b, n)?.derivative(n)?;
            if gb - ga == 0.0 {
                return Err(Error::ZeroDenominator { at_a: ga, at_b: gb });
            }
            gb - ga
        }
        None => {
            if b - a == 0.0 {
                return Err(Error::ZeroDenominator { at_a: a, at_b: b });
            }
            b - a
        }
    };
    let k = (fb - fa) / denominator;
    if k.is_finite() {
        Ok(k)
    } else {
        Err(Error::NonFinite { x: b, value: k })
    }
}

/// `T_n(f, x0)(x) = Σ_{i≤n} f^(i)(x0) (x - x0)^i / i!`.
pub fn taylor_poly_eval(f: &Expr, x0: f64, n: usize, x: f64) -> Result<f64, Error> {
    Ok(taylor_from_jet(&f.eval_jet(x0, n)?, n, x))
}

/// `max(1, max |f^(i)(x)|)` over `i ≤ max_order` and [`SCALE_SAMPLES`]
/// uniformly spaced points of `⟨a, b⟩`.
pub fn derivative_scale(f: &Expr, a: f64, b: f64, max_order: usize) -> Result<f64, Error> {
    let mut scale: f64 = 1.0;
    for i in 0..SCALE_SAMPLES {
        let x = a + (b - a) * (i as f64) / ((SCALE_SAMPLES - 1) as f64);
        for d in f.eval_jet(x, max_order)?.derivatives() {
            scale = scale.max(d.abs());
        }
    }
    Ok(scale)
}

/// `d^m/dx^m [(f(x) - f(a)) / (x - a)]` at `x > a`, by jet division.
pub fn divided_difference_derivative(f: &Expr, a: f64, m: usize, x: f64) -> Result<f64, Error> {
    if !(x > a) {
        return Err(Error::LeftEndpoint { x, a });
    }
    let fa = f.eval(a)?;
    let num = f.eval_jet(x, m)?.add_scalar(-fa)?;
    let den = Jet::variable(x, m)?.add_scalar(-a)?;
    Ok(num.div(&den)?.derivative(m)?)
}

/// Outcome of the equal-derivative precondition check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCheck {
    /// Whether the variant assumes the condition at all.
    pub required: bool,
    pub at_a: f64,
    pub at_b: f64,
    pub gap: f64,
    pub tolerance: f64,
    pub holds: bool,
}

/// A theorem instance: variant, function(s), interval and order.
#[derive(Debug, Clone)]
pub struct MvtProblem {
    variant: Variant,
    f: Expr,
    g: Option<Expr>,
    a: f64,
    b: f64,
    n: usize,
    f_at_a: Jet,
    f_at_b: Jet,
    g_at_a: Option<Jet>,
    constant: f64,
    scale: f64,
}

impl MvtProblem {
    /// Validates the instance and caches endpoint jets, the variant's
    /// K-ratio and the derivative scale. Flett and Riedel–Sahoo always use
    /// `n = 1`.
    pub fn new(variant: Variant, f: Expr, g: Option<Expr>, a: f64, b: f64, n: usize) -> Result<MvtProblem, Error> {
        check_interval(a, b)?;
        let n = if variant.forces_order_one() { 1 } else { n };
        if n == 0 {
            return Err(Error::InvalidOrder { n });
        }
        let g = match variant {
            Variant::TwoFunction => Some(g.ok_or(Error::MissingSecondFunction)?),
            _ => None,
        };
        let f_at_a = f.eval_jet(a, n + 1)?;
        let f_at_b = f.eval_jet(b, n + 1)?;
        let constant = match variant {
            Variant::Flett | Variant::Pawlikowska => 0.0,
            Variant::RiedelSahoo | Variant::Theorem7 => k_ratio(&f, None, a, b, n)?,
            Variant::TwoFunction => k_ratio(&f, g.as_ref(), a, b, n)?,
        };
        let g_at_a = match &g {
            Some(g) => Some(g.eval_jet(a, n + 1)?),
            None => None,
        };
        let mut scale = derivative_scale(&f, a, b, n)?;
        if let Some(g) = &g {
            scale = scale.max(constant.abs() * derivative_scale(g, a, b, n)?);
        }
        Ok(MvtProblem {
            variant,
            f,
            g,
            a,
            b,
            n,
            f_at_a,
            f_at_b,
            g_at_a,
            constant,
            scale,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn f(&self) -> &Expr {
        &self.f
    }

    pub fn g(&self) -> Option<&Expr> {
        self.g.as_ref()
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The K-ratio entering the residual (zero for Flett and Pawlikowska).
    pub fn k_constant(&self) -> f64 {
        self.constant
    }

    /// `max(1, max |f^(i)|)` over the interval for `i ≤ n` (the two-function
    /// variant also includes `|K|·|g^(i)|`).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Bound on how much the terms of a residual can exceed `scale`:
    /// `Σ_{i≤n+1} (b-a)^i/i! · max(1, |a|, |b|)`.
    pub fn interval_factor(&self) -> f64 {
        let w = self.b - self.a;
        let series: f64 = (0..=self.n + 1).map(|i| libm::pow(w, i as f64) / factorial(i)).sum();
        series * 1f64.max(self.a.abs()).max(self.b.abs())
    }

    /// Checks `|f^(n)(a) - f^(n)(b)| ≤ rel_tol · max(1, |f^(n)(a)|, |f^(n)(b)|)`.
    pub fn boundary_check(&self, rel_tol: f64) -> BoundaryCheck {
        let at_a = self.f_at_a.derivative(self.n).unwrap_or(f64::NAN);
        let at_b = self.f_at_b.derivative(self.n).unwrap_or(f64::NAN);
        let gap = (at_a - at_b).abs();
        let tolerance = rel_tol * 1f64.max(at_a.abs()).max(at_b.abs());
        let required = self.variant.needs_equal_derivatives();
        BoundaryCheck {
            required,
            at_a,
            at_b,
            gap,
            tolerance,
            holds: !required || gap <= tolerance,
        }
    }

    /// `f(a) - T_n(f, x)(a)`.
    fn taylor_remainder(&self, x: f64) -> Result<f64, Error> {
        let jet = self.f.eval_jet(x, self.n)?;
        Ok(self.f_at_a.value() - taylor_from_jet(&jet, self.n, self.a))
    }

    /// `(f(x) - f(a)) / (x - a)`. Close to `a` the quotient is summed from
    /// the Taylor series at `x` when that series has visibly converged,
    /// which avoids the cancellation in `f(x) - f(a)`.
    fn difference_quotient(&self, x: f64) -> Result<f64, Error> {
        const NEAR: f64 = 1e-3;
        const SERIES_ORDER: usize = 16;
        let h = x - self.a;
        if h < NEAR * (self.b - self.a) {
            let jet = self.f.eval_jet(x, SERIES_ORDER)?;
            let c = jet.coeffs();
            let mut sum = 0.0;
            let mut power = 1.0;
            let mut last = 0.0;
            for (i, ci) in c.iter().enumerate().skip(1) {
                last = sign_pow(i + 1) * ci * power;
                sum += last;
                power *= h;
            }
            if last.abs() <= f64::EPSILON * sum.abs() * 1e-2 || last == 0.0 {
                return Ok(sum);
            }
        }
        Ok((self.f.eval(x)? - self.f_at_a.value()) / h)
    }

    /// Signed residual of the variant at `x`; witnesses are its roots.
    pub fn residual(&self, x: f64) -> Result<f64, Error> {
        let (a, n) = (self.a, self.n);
        let r = match self.variant {
            Variant::Flett => {
                let jet = self.f.eval_jet(x, 1)?;
                jet.coeffs()[1] * (x - a) - (jet.value() - self.f_at_a.value())
            }
            Variant::RiedelSahoo => {
                if !(x > a) {
                    return Err(Error::LeftEndpoint { x, a });
                }
                let slope = self.f.eval_jet(x, 1)?.coeffs()[1];
                slope - self.difference_quotient(x)? - self.constant * (x - a) / 2.0
            }
            Variant::Pawlikowska => self.taylor_remainder(x)?,
            Variant::Theorem7 => {
                let correction = libm::pow(a - x, (n + 1) as f64) / factorial(n + 1);
                self.taylor_remainder(x)? - correction * self.constant
            }
            Variant::TwoFunction => {
                let g = self.g.as_ref().ok_or(Error::MissingSecondFunction)?;
                let g_at_a = self.g_at_a.as_ref().ok_or(Error::MissingSecondFunction)?;
                let g_jet = g.eval_jet(x, n)?;
                let g_rem = g_at_a.value() - taylor_from_jet(&g_jet, n, a);
                self.taylor_remainder(x)? - self.constant * g_rem
            }
        };
        if r.is_finite() {
            Ok(r)
        } else {
            Err(Error::NonFinite { x, value: r })
        }
    }
}

/// Order-1 jet of `(x - a)^i` at `x`, with `h = x - a`.
fn offset_power(x: f64, h: f64, i: usize) -> Result<Jet, Error> {
    let slope = if i == 0 {
        0.0
    } else {
        i as f64 * libm::pow(h, (i - 1) as f64)
    };
    Ok(Jet::from_coeffs(x, &[libm::pow(h, i as f64), slope])?)
}

/// The auxiliary function `φ_k` of the cascade construction, optionally
/// corrected to `ψ_k` for the variant without endpoint conditions:
///
/// ```text
/// φ_k(x) = x f^(n-k+1)(a) + Σ_{i=0}^{k} ((-1)^(i+1)/i!) (k-i) (x-a)^i f^(n-k+i)(x)
/// ψ_k(x) = φ_k(x) + ((-1)^(k+1)/(k+1)!) (x-a)^(k+1) K(f^(n))
/// ```
#[derive(Debug, Clone)]
pub struct AuxFunction<'a> {
    f: &'a Expr,
    a: f64,
    n: usize,
    k: usize,
    anchor: f64,
    correction: Option<f64>,
}

impl<'a> AuxFunction<'a> {
    /// `φ_k` for `1 ≤ k ≤ n`.
    pub fn phi(f: &'a Expr, a: f64, n: usize, k: usize) -> Result<Self, Error> {
        Self::build(f, a, n, k, None)
    }

    /// `ψ_k` on `⟨a, b⟩` for `1 ≤ k ≤ n`.
    pub fn psi(f: &'a Expr, a: f64, b: f64, n: usize, k: usize) -> Result<Self, Error> {
        check_interval(a, b)?;
        let kr = k_ratio(f, None, a, b, n)?;
        Self::build(f, a, n, k, Some(kr))
    }

    /// `φ_k` when `correction` is `None`, else `ψ_k` with the given
    /// `K(f^(n))`.
    pub fn build(f: &'a Expr, a: f64, n: usize, k: usize, correction: Option<f64>) -> Result<Self, Error> {
        if k == 0 || k > n {
            return Err(Error::StageIndex { k, n });
        }
        let anchor = f.eval_jet(a, n - k + 1)?.derivative(n - k + 1)?;
        Ok(AuxFunction {
            f,
            a,
            n,
            k,
            anchor,
            correction,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Order-1 jet (value and first derivative) at `x`.
    pub fn jet(&self, x: f64) -> Result<Jet, Error> {
        let (a, n, k) = (self.a, self.n, self.k);
        let fjet = self.f.eval_jet(x, n)?;
        let d: Vec<f64> = fjet.derivatives().collect();
        let h = x - a;
        let mut acc = Jet::variable(x, 1)?.scale(self.anchor)?;
        // The i = k term carries the factor (k - i) = 0.
        for i in 0..k {
            let weight = sign_pow(i + 1) / factorial(i) * (k - i) as f64;
            let j = n - k + i;
            let power = offset_power(x, h, i)?;
            let deriv = Jet::from_coeffs(x, &[d[j], d[j + 1]])?;
            acc = acc.add(&power.mul(&deriv)?.scale(weight)?)?;
        }
        if let Some(kr) = self.correction {
            let weight = sign_pow(k + 1) / factorial(k + 1) * kr;
            let power = offset_power(x, h, k + 1)?;
            acc = acc.add(&power.scale(weight)?)?;
        }
        Ok(acc)
    }

    pub fn value(&self, x: f64) -> Result<f64, Error> {
        Ok(self.jet(x)?.value())
    }

    pub fn derivative(&self, x: f64) -> Result<f64, Error> {
        Ok(self.jet(x)?.coeffs()[1])
    }

    /// Flett residual of the auxiliary function:
    /// `aux'(u)(u - a) - (aux(u) - aux(a))`.
    pub fn flett_residual(&self, u: f64, value_at_a: f64) -> Result<f64, Error> {
        let jet = self.jet(u)?;
        Ok(jet.coeffs()[1] * (u - self.a) - (jet.value() - value_at_a))
    }

    /// Closed-form stage identity satisfied at a Flett point of this
    /// function: `f^(n-k)(a) - T_k(f^(n-k), u)(a)`, minus
    /// `(a-u)^(k+1)/(k+1)! K` for `ψ_k`. The Flett residual equals `-k`
    /// times this quantity.
    pub fn stage_identity(&self, u: f64) -> Result<f64, Error> {
        let (n, k) = (self.n, self.k);
        let j = n - k;
        let at_a = self.f.eval_jet(self.a, j)?.derivative(j)?;
        let shifted = self.f.eval_jet(u, n)?.derivative_jet(j)?;
        let mut r = at_a - taylor_from_jet(&shifted, k, self.a);
        if let Some(kr) = self.correction {
            r -= libm::pow(self.a - u, (k + 1) as f64) / factorial(k + 1) * kr;
        }
        Ok(r)
    }
}

pub fn phi_k_eval(f: &Expr, a: f64, n: usize, k: usize, x: f64) -> Result<f64, Error> {
    AuxFunction::phi(f, a, n, k)?.value(x)
}

pub fn phi_k_deriv(f: &Expr, a: f64, n: usize, k: usize, x: f64) -> Result<f64, Error> {
    AuxFunction::phi(f, a, n, k)?.derivative(x)
}

pub fn psi_k_eval(f: &Expr, a: f64, b: f64, n: usize, k: usize, x: f64) -> Result<f64, Error> {
    AuxFunction::psi(f, a, b, n, k)?.value(x)
}

pub fn psi_k_deriv(f: &Expr, a: f64, b: f64, n: usize, k: usize, x: f64) -> Result<f64, Error> {
    AuxFunction::psi(f, a, b, n, k)?.derivative(x)
}

/// The auxiliary function `G_f` and its derivative.
///
/// `G_f(x) = g^(n-1)(x)` with `g(x) = (f(x) - f(a))/(x - a)` for `x > a`,
/// `G_f(a) = f^(n)(a)/n`. With `derivative_order = 1` the closed form
///
/// ```text
/// G_f'(x) = (-1)^n n! / (x-a)^(n+1) · (f(x) - f(a) + Σ_{i=1}^{n} ((-1)^i/i!) (x-a)^i f^(i)(x))
/// ```
///
/// is returned, which requires `x > a`.
pub fn g_f_eval(f: &Expr, a: f64, n: usize, x: f64, derivative_order: usize) -> Result<f64, Error> {
    if n == 0 {
        return Err(Error::InvalidOrder { n });
    }
    match derivative_order {
        0 if x == a => Ok(f.eval_jet(a, n)?.derivative(n)? / n as f64),
        0 => divided_difference_derivative(f, a, n - 1, x),
        1 => {
            if !(x > a) {
                return Err(Error::LeftEndpoint { x, a });
            }
            let bracket = taylor_poly_eval(f, x, n, a)? - f.eval(a)?;
            Ok(sign_pow(n) * factorial(n) / libm::pow(x - a, (n + 1) as f64) * bracket)
        }
        order => Err(Error::UnsupportedDerivativeOrder { order }),
    }
}

/// Evaluated sign condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionReport {
    pub left_factor: f64,
    pub right_factor: f64,
    pub product: f64,
    /// `T_{n-1}(f, b)(a) - f(a)`; zero for the first-order check.
    pub m_f: f64,
    pub satisfied: bool,
    pub tolerance_used: f64,
}

impl ConditionReport {
    fn new(left_factor: f64, right_factor: f64, m_f: f64, tolerance_used: f64) -> Self {
        let product = left_factor * right_factor;
        ConditionReport {
            left_factor,
            right_factor,
            product,
            m_f,
            satisfied: product >= -tolerance_used,
            tolerance_used,
        }
    }
}

/// `(f'(a) - K(f)) (f'(b) - K(f)) ≥ 0`; `tol` is relative to the
/// derivative scale of `f`.
pub fn trahan_original_check(f: &Expr, a: f64, b: f64, tol: f64) -> Result<ConditionReport, Error> {
    check_interval(a, b)?;
    let ja = f.eval_jet(a, 1)?;
    let jb = f.eval_jet(b, 1)?;
    let secant = (jb.value() - ja.value()) / (b - a);
    let tolerance = tol * derivative_scale(f, a, b, 1)?;
    Ok(ConditionReport::new(
        ja.coeffs()[1] - secant,
        jb.coeffs()[1] - secant,
        0.0,
        tolerance,
    ))
}

/// `(f^(n)(a)(a-b)^n/n! + M_f)(f^(n)(b)(a-b)^n/n! + M_f) ≥ 0` with
/// `M_f = T_{n-1}(f, b)(a) - f(a)`.
pub fn trahan_general_check(f: &Expr, a: f64, b: f64, n: usize, tol: f64) -> Result<ConditionReport, Error> {
    check_interval(a, b)?;
    if n == 0 {
        return Err(Error::InvalidOrder { n });
    }
    let ja = f.eval_jet(a, n)?;
    let jb = f.eval_jet(b, n)?;
    let m_f = taylor_from_jet(&jb, n - 1, a) - ja.value();
    let weight = libm::pow(a - b, n as f64) / factorial(n);
    let tolerance = tol * derivative_scale(f, a, b, n)?;
    Ok(ConditionReport::new(
        ja.derivative(n)? * weight + m_f,
        jb.derivative(n)? * weight + m_f,
        m_f,
        tolerance,
    ))
}

/// `h(x) = f(x) - K(f^(n), g^(n)) · g(x)`, which satisfies
/// `h^(n)(a) = h^(n)(b)`.
pub fn build_h(f: &Expr, g: &Expr, a: f64, b: f64, n: usize) -> Result<Expr, Error> {
    check_interval(a, b)?;
    let k = k_ratio(f, Some(g), a, b, n)?;
    Ok(Expr::Binary(
        BinOp::Sub,
        Box::new(f.clone()),
        Box::new(Expr::Binary(BinOp::Mul, Box::new(Expr::Const(k)), Box::new(g.clone()))),
    ))
}

/// Pieces of the two-function sign check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoFunctionSign {
    pub k_ratio: f64,
    pub f_at_a: f64,
    pub f_at_b: f64,
    pub f_prime_at_b: f64,
    /// `F'(b) · (F(b) - F(a))`, never positive in exact arithmetic.
    pub product: f64,
}

/// Evaluates `F'(b)(F(b) - F(a))` for the two-function auxiliary
/// `F = φ^(n-1) - K ψ^(n-1)`, where `φ, ψ` are the difference quotients of
/// `f, g` at `a`, `F(a) = (f^(n)(a) - K g^(n)(a))/n`, and `F'(b)` uses the
/// closed form in terms of Taylor remainders.
pub fn f_two_fn_check(f: &Expr, g: &Expr, a: f64, b: f64, n: usize) -> Result<TwoFunctionSign, Error> {
    check_interval(a, b)?;
    if n == 0 {
        return Err(Error::InvalidOrder { n });
    }
    let k = k_ratio(f, Some(g), a, b, n)?;
    let f_at_b = divided_difference_derivative(f, a, n - 1, b)? - k * divided_difference_derivative(g, a, n - 1, b)?;
    let fa = f.eval_jet(a, n)?.derivative(n)?;
    let ga = g.eval_jet(a, n)?.derivative(n)?;
    let f_at_a = (fa - k * ga) / n as f64;
    let f_rem = taylor_poly_eval(f, b, n, a)? - f.eval(a)?;
    let g_rem = taylor_poly_eval(g, b, n, a)? - g.eval(a)?;
    let f_prime_at_b = sign_pow(n) * factorial(n) / libm::pow(b - a, (n + 1) as f64) * (f_rem - k * g_rem);
    Ok(TwoFunctionSign {
        k_ratio: k,
        f_at_a,
        f_at_b,
        f_prime_at_b,
        product: f_prime_at_b * (f_at_b - f_at_a),
    })
}
