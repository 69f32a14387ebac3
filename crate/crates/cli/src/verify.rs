//! Batch verification over generated constrained polynomials.

use std::fmt;

use flett_core::theorems::DEFAULT_CONDITION_TOL;
use flett_core::theorems::{g_f_eval, taylor_poly_eval, trahan_general_check, trahan_original_check};
use flett_core::{cascade_solve, solve, Error, MvtProblem, SolverConfig, Variant, WitnessStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::generator::{gen_constrained_poly, GenError, GeneratorSpec};
use crate::output::{BoundaryOut, CascadeOut, ConditionOut, SolverEcho, WitnessOut};

/// `|residual(η)| ≤ WITNESS_TOL · scale` for a found witness.
pub const WITNESS_TOL: f64 = 1e-8;
/// `|aux_k'(u_{k-1})| ≤ STAGE_DERIVATIVE_TOL · scale` on every stage.
pub const STAGE_DERIVATIVE_TOL: f64 = 1e-9;
/// Closed-form `G_f'` against the residual, relative to scale.
pub const IDENTITY_TOL: f64 = 1e-10;
const IDENTITY_POINTS: usize = 16;
/// Degrees are drawn from `n+1 ..= n+MAX_EXTRA_DEGREE`.
pub const MAX_EXTRA_DEGREE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchSpec {
    pub count: usize,
    /// Inclusive range of orders; cases cycle through it.
    pub n_range: (usize, usize),
    pub coefficient_range: (f64, f64),
    pub interval: (f64, f64),
    pub seed: u64,
}

impl Default for BatchSpec {
    fn default() -> Self {
        BatchSpec {
            count: 100,
            n_range: (1, 3),
            coefficient_range: (-1.0, 1.0),
            interval: (-1.0, 1.0),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerifyError {
    ZeroCount,
    BadOrderRange { lo: usize, hi: usize },
    Generator(GenError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::ZeroCount => f.write_str("count must be at least 1"),
            VerifyError::BadOrderRange { lo, hi } => {
                write!(f, "invalid order range {lo}..={hi} (need 1 <= lo <= hi)")
            }
            VerifyError::Generator(e) => write!(f, "generator: {e}"),
        }
    }
}

impl std::error::Error for VerifyError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Degenerate,
}

/// Everything checked for one problem.
#[derive(Debug, Clone, Serialize)]
pub struct ProblemCheck {
    pub theorem: &'static str,
    pub f: String,
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub boundary: Option<BoundaryOut>,
    pub witness: Option<WitnessOut>,
    pub cascade: Option<CascadeOut>,
    pub trahan_original: Option<ConditionOut>,
    pub trahan_general: Option<ConditionOut>,
    /// Largest `|G_f'(x)(x-a)^{n+1}/((-1)^n n!) + r(x)| / scale` on the
    /// sample points.
    pub identity_gap: f64,
    pub outcome: Outcome,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseRecord {
    pub index: usize,
    pub seed: u64,
    pub degree: usize,
    pub degenerate_tendency: bool,
    #[serde(flatten)]
    pub check: ProblemCheck,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub degenerate: usize,
}

impl Counts {
    fn record(&mut self, outcome: Outcome) {
        self.total += 1;
        match outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail => self.fail += 1,
            Outcome::Degenerate => self.degenerate += 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchEcho {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub coefficient_range: [f64; 2],
    pub interval: [f64; 2],
    pub solver: SolverEcho,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub config: BatchEcho,
    pub counts: Counts,
    pub cases: Vec<CaseRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counts.fail == 0
    }
}

/// Runs the solver, the cascade (for the Taylor-remainder theorems), both
/// sign conditions and the `G_f'` cross-check on one problem. Errors are
/// recorded as failures.
pub fn verify_problem(p: &MvtProblem, cfg: &SolverConfig) -> ProblemCheck {
    let (a, b, n) = (p.a(), p.b(), p.n());
    let scale = p.scale();
    let mut failures = Vec::new();
    let mut fail = |what: String| failures.push(what);

    let boundary = p.boundary_check(cfg.boundary_tol);
    if boundary.required && !boundary.holds {
        fail(format!(
            "boundary hypothesis violated: gap {:e} > {:e}",
            boundary.gap, boundary.tolerance
        ));
    }

    let mut degenerate = false;
    let witness = match solve(p, cfg) {
        Ok(w) => {
            match w.status {
                WitnessStatus::Found => {
                    if !(a < w.eta && w.eta < b) {
                        fail(format!("witness {} outside ({a}, {b})", w.eta));
                    }
                    if !(w.residual_at_eta.abs() <= WITNESS_TOL * scale) {
                        fail(format!(
                            "witness residual {:e} above {:e}",
                            w.residual_at_eta,
                            WITNESS_TOL * scale
                        ));
                    }
                }
                WitnessStatus::DegenerateAllPoints => degenerate = true,
                WitnessStatus::NotFound => fail("no witness found".into()),
            }
            Some(WitnessOut::from(&w))
        }
        Err(e) => {
            fail(format!("solve: {e}"));
            None
        }
    };

    let cascade = match p.variant() {
        Variant::Flett | Variant::Pawlikowska | Variant::Theorem7 => {
            let unconstrained = p.variant() == Variant::Theorem7;
            match cascade_solve(p.f(), a, b, n, unconstrained, cfg) {
                Ok(c) => {
                    if !c.is_strictly_nested(a, b) {
                        fail(format!("cascade chain {:?} -> {} not strictly nested", c.chain, c.eta));
                    }
                    for s in &c.stages {
                        if !(s.derivative_at_upper.abs() <= STAGE_DERIVATIVE_TOL * scale) {
                            fail(format!(
                                "stage {} derivative {:e} at upper end above {:e}",
                                s.k,
                                s.derivative_at_upper,
                                STAGE_DERIVATIVE_TOL * scale
                            ));
                        }
                    }
                    if !(c.final_residual.abs() <= WITNESS_TOL * scale) {
                        fail(format!(
                            "cascade residual {:e} above {:e}",
                            c.final_residual,
                            WITNESS_TOL * scale
                        ));
                    }
                    Some(CascadeOut::new(&c, a, b))
                }
                Err(e) => {
                    fail(format!("cascade: {e}"));
                    None
                }
            }
        }
        Variant::RiedelSahoo | Variant::TwoFunction => None,
    };

    let original = trahan_original_check(p.f(), a, b, DEFAULT_CONDITION_TOL);
    let general = trahan_general_check(p.f(), a, b, n, DEFAULT_CONDITION_TOL);
    if let (1, Ok(o), Ok(g)) = (n, &original, &general) {
        if o.satisfied != g.satisfied {
            fail(format!(
                "first-order sign checks disagree: {} vs {}",
                o.product, g.product
            ));
        }
    }
    let trahan_original = match original {
        Ok(r) => Some(ConditionOut::from(&r)),
        Err(e) => {
            fail(format!("trahan-original: {e}"));
            None
        }
    };
    let trahan_general = match general {
        Ok(r) => Some(ConditionOut::from(&r)),
        Err(e) => {
            fail(format!("trahan-general: {e}"));
            None
        }
    };

    let identity_gap = match identity_gap(p) {
        Ok(gap) => {
            if !(gap <= IDENTITY_TOL) {
                fail(format!("G_f' identity gap {gap:e} above {IDENTITY_TOL:e}"));
            }
            gap
        }
        Err(e) => {
            fail(format!("G_f' identity: {e}"));
            f64::NAN
        }
    };

    let outcome = if !failures.is_empty() {
        Outcome::Fail
    } else if degenerate {
        Outcome::Degenerate
    } else {
        Outcome::Pass
    };
    ProblemCheck {
        theorem: p.variant().name(),
        f: p.f().to_string(),
        a,
        b,
        n,
        boundary: Some((&boundary).into()),
        witness,
        cascade,
        trahan_original,
        trahan_general,
        identity_gap,
        outcome,
        failures,
    }
}

/// Relative gap of `G_f'(x)(x-a)^{n+1}/((-1)^n n!) = T_n(f,x)(a) - f(a)`
/// on interior points, measured against the Taylor form directly.
fn identity_gap(p: &MvtProblem) -> Result<f64, Error> {
    let (f, a, b, n) = (p.f(), p.a(), p.b(), p.n());
    let fa = f.eval(a)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let factorial: f64 = (1..=n).map(|i| i as f64).product();
    let mut worst: f64 = 0.0;
    for i in 1..=IDENTITY_POINTS {
        let x = a + (b - a) * i as f64 / IDENTITY_POINTS as f64;
        let closed = g_f_eval(f, a, n, x, 1)? * (x - a).powi(n as i32 + 1) / (sign * factorial);
        let residual = fa - taylor_poly_eval(f, x, n, a)?;
        worst = worst.max((closed + residual).abs() / p.scale());
    }
    Ok(worst)
}

/// Generates `count` constrained polynomials, cycling `n` through
/// `n_range`, and verifies each as a Pawlikowska problem.
pub fn verify_batch(spec: &BatchSpec, cfg: &SolverConfig) -> Result<VerificationReport, VerifyError> {
    let (lo, hi) = spec.n_range;
    if spec.count == 0 {
        return Err(VerifyError::ZeroCount);
    }
    if lo == 0 || lo > hi {
        return Err(VerifyError::BadOrderRange { lo, hi });
    }
    let mut master = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut counts = Counts::default();
    let mut cases = Vec::with_capacity(spec.count);
    for index in 0..spec.count {
        let n = lo + index % (hi - lo + 1);
        let degree = n + 1 + master.gen_range(0..MAX_EXTRA_DEGREE);
        let seed: u64 = master.gen();
        let gen = GeneratorSpec {
            n,
            degree,
            coefficient_range: spec.coefficient_range,
            seed,
            interval: spec.interval,
        };
        let poly = gen_constrained_poly(&gen).map_err(VerifyError::Generator)?;
        let (a, b) = spec.interval;
        let check = match MvtProblem::new(Variant::Pawlikowska, poly.expr.clone(), None, a, b, n) {
            Ok(p) => verify_problem(&p, cfg),
            Err(e) => setup_failure(Variant::Pawlikowska, poly.source.clone(), a, b, n, e),
        };
        counts.record(check.outcome);
        cases.push(CaseRecord {
            index,
            seed,
            degree,
            degenerate_tendency: poly.degenerate_tendency,
            check,
        });
    }
    Ok(VerificationReport {
        seed: spec.seed,
        config: BatchEcho {
            count: spec.count,
            n_min: lo,
            n_max: hi,
            coefficient_range: [spec.coefficient_range.0, spec.coefficient_range.1],
            interval: [spec.interval.0, spec.interval.1],
            solver: cfg.into(),
        },
        counts,
        cases,
    })
}

/// Record for a problem that could not even be constructed.
pub fn setup_failure(variant: Variant, f: String, a: f64, b: f64, n: usize, e: Error) -> ProblemCheck {
    ProblemCheck {
        theorem: variant.name(),
        f,
        a,
        b,
        n,
        boundary: None,
        witness: None,
        cascade: None,
        trahan_original: None,
        trahan_general: None,
        identity_gap: f64::NAN,
        outcome: Outcome::Fail,
        failures: vec![format!("setup: {e}")],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_flett_is_degenerate() {
        let f = flett_core::parse("3*x - 2").unwrap();
        let p = MvtProblem::new(Variant::Flett, f, None, 0.0, 1.0, 1).unwrap();
        let check = verify_problem(&p, &SolverConfig::default());
        assert_eq!(check.outcome, Outcome::Degenerate, "{:?}", check.failures);
    }

    #[test]
    fn zero_count_is_rejected() {
        let spec = BatchSpec {
            count: 0,
            ..BatchSpec::default()
        };
        assert_eq!(
            verify_batch(&spec, &SolverConfig::default()).unwrap_err(),
            VerifyError::ZeroCount
        );
        let spec = BatchSpec {
            n_range: (0, 2),
            ..BatchSpec::default()
        };
        assert!(matches!(
            verify_batch(&spec, &SolverConfig::default()),
            Err(VerifyError::BadOrderRange { .. })
        ));
    }

    #[test]
    fn small_batch_counts_add_up() {
        let spec = BatchSpec {
            count: 30,
            seed: 7,
            ..BatchSpec::default()
        };
        let report = verify_batch(&spec, &SolverConfig::default()).unwrap();
        let c = report.counts;
        assert_eq!(c.total, 30);
        assert_eq!(c.pass + c.fail + c.degenerate, c.total);
        let failures: Vec<_> = report.cases.iter().filter(|c| !c.check.failures.is_empty()).collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }

    #[test]
    fn violated_boundary_is_a_failure() {
        let f = flett_core::parse("x^3").unwrap();
        let p = MvtProblem::new(Variant::Flett, f, None, 0.0, 1.0, 1).unwrap();
        let check = verify_problem(&p, &SolverConfig::default());
        assert_eq!(check.outcome, Outcome::Fail);
        assert!(check.failures[0].starts_with("boundary"));
    }
}
