//! Witness location: a uniform sign-change scan refined by bisection, the
//! per-variant `solve`, and the cascade of nested Flett points.

use alloc::vec::Vec;

use crate::error::Error;
use crate::expr::Expr;
use crate::theorems::{AuxFunction, BoundaryCheck, MvtProblem, Variant, DEFAULT_BOUNDARY_TOL};

/// Which root to report when a residual has several.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootPolicy {
    Leftmost,
    Rightmost,
}

impl RootPolicy {
    pub fn name(self) -> &'static str {
        match self {
            RootPolicy::Leftmost => "leftmost",
            RootPolicy::Rightmost => "rightmost",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Subintervals of the initial scan.
    pub grid: usize,
    /// Relative bracket width and residual target (times scale).
    pub solve_tol: f64,
    /// Relative tolerance of the equal-derivative precondition.
    pub boundary_tol: f64,
    /// Residuals below `degenerate_tol · scale` everywhere count as
    /// identically zero.
    pub degenerate_tol: f64,
    /// The grid is doubled at most this many times when no sign change
    /// shows up.
    pub max_grid_doublings: u32,
    /// Values below `noise_tol · scale · interval_factor` carry no sign
    /// information.
    pub noise_tol: f64,
    /// The scan starts at `a + left_clearance · (b - a)`.
    pub left_clearance: f64,
    pub policy: RootPolicy,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grid: 1024,
            solve_tol: 1e-12,
            boundary_tol: DEFAULT_BOUNDARY_TOL,
            degenerate_tol: 1e-11,
            max_grid_doublings: 7,
            noise_tol: 1e-13,
            left_clearance: 1e-12,
            policy: RootPolicy::Leftmost,
        }
    }
}

/// Thresholds of a single scan, in absolute units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    pub grid: usize,
    /// Bisection stops once the bracket is narrower than `tol · (hi - lo)`.
    pub tol: f64,
    pub degenerate_level: f64,
    pub noise_level: f64,
    /// Refined points with a larger residual are discarded (sign changes
    /// through poles).
    pub residual_level: f64,
}

impl ScanSettings {
    pub fn new(grid: usize, tol: f64) -> Self {
        ScanSettings {
            grid,
            tol,
            degenerate_level: 1e-11,
            noise_level: 0.0,
            residual_level: f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub value: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RootScan {
    /// Ascending roots.
    Roots(Vec<Root>),
    /// Every grid value was below the degenerate level.
    Degenerate { max_abs: f64 },
}

const MAX_BISECTIONS: usize = 2000;

fn eval_checked<F>(f: &mut F, x: f64) -> Result<f64, Error>
where
    F: FnMut(f64) -> Result<f64, Error>,
{
    let v = f(x)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { x, value: v })
    }
}

fn bisect<F>(
    f: &mut F,
    (mut lo, mut lo_val): (f64, f64),
    (mut hi, mut hi_val): (f64, f64),
    width: f64,
    residual_level: f64,
) -> Result<Root, Error>
where
    F: FnMut(f64) -> Result<f64, Error>,
{
    let lo_positive = lo_val > 0.0;
    for iterations in 1..=MAX_BISECTIONS {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid)?;
        if !v.is_finite() {
            // Sign change through a singularity.
            return Ok(Root {
                x: mid,
                value: f64::INFINITY,
                bracket: (lo, hi),
                iterations,
            });
        }
        if v == 0.0 {
            return Ok(Root {
                x: mid,
                value: v,
                bracket: (lo, hi),
                iterations,
            });
        }
        if (v > 0.0) == lo_positive {
            lo = mid;
            lo_val = v;
        } else {
            hi = mid;
            hi_val = v;
        }
        if hi - lo <= width && v.abs() <= residual_level {
            return Ok(Root {
                x: mid,
                value: v,
                bracket: (lo, hi),
                iterations,
            });
        }
    }
    // Floating-point resolution reached.
    let (x, value) = if lo_val.abs() <= hi_val.abs() {
        (lo, lo_val)
    } else {
        (hi, hi_val)
    };
    Ok(Root {
        x,
        value,
        bracket: (lo, hi),
        iterations: MAX_BISECTIONS,
    })
}

/// Scans `grid + 1` uniform points of `[lo, hi]` for sign changes and
/// refines each bracket by bisection.
///
/// Values with magnitude at most `noise_level` carry no sign. A sign change
/// across such a run is bisected as usual; a run between two values of the
/// same sign yields its smallest point as a touching root, as does a run
/// reaching `hi`. A run starting at `lo` is skipped: the residuals scanned
/// here all vanish at the left end of their interval. With the default
/// `noise_level = 0` the runs are exact zeros.
pub fn find_roots<F>(mut f: F, lo: f64, hi: f64, settings: &ScanSettings) -> Result<RootScan, Error>
where
    F: FnMut(f64) -> Result<f64, Error>,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInterval { a: lo, b: hi });
    }
    let grid = settings.grid;
    if grid < 2 {
        return Err(Error::InvalidGrid { grid });
    }
    let xs: Vec<f64> = (0..=grid)
        .map(|i| {
            if i == grid {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / grid as f64)
            }
        })
        .collect();
    let mut vs = Vec::with_capacity(xs.len());
    for &x in &xs {
        vs.push(eval_checked(&mut f, x)?);
    }
    let max_abs = vs.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if max_abs <= settings.degenerate_level {
        return Ok(RootScan::Degenerate { max_abs });
    }

    let width = settings.tol * (hi - lo);
    let significant = |v: f64| v.abs() > settings.noise_level;
    let touching = |from: usize, to: usize| {
        (from..to)
            .min_by(|&i, &j| vs[i].abs().total_cmp(&vs[j].abs()))
            .map(|i| Root {
                x: xs[i],
                value: vs[i],
                bracket: (xs[i], xs[i]),
                iterations: 0,
            })
    };

    let mut roots = Vec::new();
    let mut last: Option<usize> = None;
    for i in 0..=grid {
        if !significant(vs[i]) {
            continue;
        }
        if let Some(p) = last {
            if (vs[p] > 0.0) != (vs[i] > 0.0) {
                roots.push(bisect(
                    &mut f,
                    (xs[p], vs[p]),
                    (xs[i], vs[i]),
                    width,
                    settings.residual_level,
                )?);
            } else if i > p + 1 {
                roots.extend(touching(p + 1, i));
            }
        }
        last = Some(i);
    }
    if let Some(p) = last {
        if p < grid {
            roots.extend(touching(p + 1, grid + 1));
        }
    }
    roots.retain(|r| r.value.abs() <= settings.residual_level);
    Ok(RootScan::Roots(roots))
}

/// Runs [`find_roots`], doubling the grid while no acceptable root appears.
fn scan_with_doubling<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    mut settings: ScanSettings,
    doublings: u32,
    accept: impl Fn(&Root) -> bool,
) -> Result<(RootScan, usize), Error>
where
    F: FnMut(f64) -> Result<f64, Error>,
{
    let mut attempt = 0;
    loop {
        let scan = find_roots(&mut f, lo, hi, &settings)?;
        let done = match &scan {
            RootScan::Degenerate { .. } => true,
            RootScan::Roots(roots) => roots.iter().any(&accept),
        };
        if done || attempt == doublings {
            return Ok((scan, settings.grid));
        }
        attempt += 1;
        settings.grid *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStatus {
    Found,
    /// The residual vanishes on the whole grid: every point is a witness.
    DegenerateAllPoints,
    NotFound,
}

impl WitnessStatus {
    pub fn name(self) -> &'static str {
        match self {
            WitnessStatus::Found => "Found",
            WitnessStatus::DegenerateAllPoints => "DegenerateAllPoints",
            WitnessStatus::NotFound => "NotFound",
        }
    }
}

/// A located witness point with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub variant: Variant,
    pub status: WitnessStatus,
    /// The selected root; the midpoint for degenerate residuals, NaN when
    /// nothing was found.
    pub eta: f64,
    pub residual_at_eta: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// Every accepted root, ascending.
    pub roots: Vec<f64>,
    pub grid_used: usize,
    pub scale: f64,
    pub boundary: BoundaryCheck,
    pub policy: RootPolicy,
}

fn pick(roots: &[Root], policy: RootPolicy) -> Option<&Root> {
    match policy {
        RootPolicy::Leftmost => roots.first(),
        RootPolicy::Rightmost => roots.last(),
    }
}

fn problem_settings(p: &MvtProblem, cfg: &SolverConfig, weight: f64) -> ScanSettings {
    let scale = p.scale() * weight;
    ScanSettings {
        grid: cfg.grid,
        tol: cfg.solve_tol,
        degenerate_level: cfg.degenerate_tol * scale,
        noise_level: cfg.noise_tol * scale * p.interval_factor(),
        residual_level: cfg.solve_tol * scale,
    }
}

/// Locates a witness of the problem's theorem on `(a, b)`.
///
/// The residual is scanned on `[a + left_clearance·(b-a), b]`; roots at `b`
/// itself are listed but never selected.
pub fn solve(p: &MvtProblem, cfg: &SolverConfig) -> Result<Witness, Error> {
    let (a, b) = (p.a(), p.b());
    let lo = a + cfg.left_clearance * (b - a);
    let settings = problem_settings(p, cfg, 1.0);
    let (scan, grid_used) =
        scan_with_doubling(|x| p.residual(x), lo, b, settings, cfg.max_grid_doublings, |r| r.x < b)?;
    let mut witness = Witness {
        variant: p.variant(),
        status: WitnessStatus::NotFound,
        eta: f64::NAN,
        residual_at_eta: f64::NAN,
        bracket: (lo, b),
        iterations: 0,
        roots: Vec::new(),
        grid_used,
        scale: p.scale(),
        boundary: p.boundary_check(cfg.boundary_tol),
        policy: cfg.policy,
    };
    match scan {
        RootScan::Degenerate { .. } => {
            let mid = a + (b - a) / 2.0;
            witness.status = WitnessStatus::DegenerateAllPoints;
            witness.eta = mid;
            witness.residual_at_eta = p.residual(mid)?;
        }
        RootScan::Roots(roots) => {
            witness.roots = roots.iter().map(|r| r.x).collect();
            let interior: Vec<Root> = roots.into_iter().filter(|r| r.x < b).collect();
            if let Some(root) = pick(&interior, cfg.policy) {
                witness.status = WitnessStatus::Found;
                witness.eta = root.x;
                witness.residual_at_eta = p.residual(root.x)?;
                witness.bracket = root.bracket;
                witness.iterations = root.iterations;
            }
        }
    }
    Ok(witness)
}

/// One Flett application of the cascade.
#[derive(Debug, Clone, PartialEq)]
pub struct StageRecord {
    /// Auxiliary function index `k` (1-based).
    pub k: usize,
    /// Right end of the stage interval `⟨a, u_{k-1}⟩` (`u_0 = b`).
    pub upper: f64,
    /// The Flett point `u_k` of the auxiliary function.
    pub u: f64,
    /// `aux_k'(u)(u - a) - (aux_k(u) - aux_k(a))`.
    pub flett_residual: f64,
    /// Closed-form identity the stage establishes for `f^(n-k)` at `u`.
    pub identity_residual: f64,
    /// `aux_k'(a)`, zero by construction.
    pub derivative_at_a: f64,
    /// `aux_k'(u_{k-1})`: the Flett hypothesis on this stage.
    pub derivative_at_upper: f64,
    /// The stage residual vanished identically; `u` is the midpoint.
    pub degenerate: bool,
    /// Number of Flett points the scan produced.
    pub candidates: usize,
}

/// The nested chain `b > u_1 > … > u_{n-1} > η > a`.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeWitness {
    pub chain: Vec<f64>,
    pub eta: f64,
    /// `|aux_k'(u_k)(u_k - a) - (aux_k(u_k) - aux_k(a))|` per stage.
    pub stage_residuals: Vec<f64>,
    pub stages: Vec<StageRecord>,
    /// Pawlikowska (or, unconstrained, Theorem 7) residual at `η`.
    pub final_residual: f64,
    pub scale: f64,
    pub boundary: BoundaryCheck,
    pub unconstrained: bool,
    pub policy: RootPolicy,
    /// Stage scans performed, including abandoned branches.
    pub stage_scans: usize,
}

impl CascadeWitness {
    /// `a < η < u_{n-1} < … < u_1 < b`.
    pub fn is_strictly_nested(&self, a: f64, b: f64) -> bool {
        let mut upper = b;
        for &u in self.chain.iter().chain(core::iter::once(&self.eta)) {
            if !(u < upper && u > a) {
                return false;
            }
            upper = u;
        }
        true
    }
}

const CASCADE_SCAN_BUDGET: usize = 64;

struct Cascade<'a> {
    problem: &'a MvtProblem,
    cfg: &'a SolverConfig,
    aux: Vec<(AuxFunction<'a>, f64)>,
    scans: usize,
    deepest_failure: usize,
}

impl<'a> Cascade<'a> {
    fn stage_settings(&self, k: usize) -> ScanSettings {
        // The stage residual is -k times a Taylor-remainder identity.
        problem_settings(self.problem, self.cfg, k as f64)
    }

    fn record(&self, k: usize, upper: f64, u: f64, degenerate: bool, candidates: usize) -> Result<StageRecord, Error> {
        let (aux, at_a) = &self.aux[k - 1];
        let a = self.problem.a();
        Ok(StageRecord {
            k,
            upper,
            u,
            flett_residual: aux.flett_residual(u, *at_a)?,
            identity_residual: aux.stage_identity(u)?,
            derivative_at_a: aux.derivative(a)?,
            derivative_at_upper: aux.derivative(upper)?,
            degenerate,
            candidates,
        })
    }

    /// Depth-first over the candidate Flett points of each stage.
    fn run(&mut self, k: usize, upper: f64) -> Result<Option<Vec<StageRecord>>, Error> {
        let n = self.problem.n();
        if k > n {
            return Ok(Some(Vec::new()));
        }
        if self.scans >= CASCADE_SCAN_BUDGET {
            return Ok(None);
        }
        self.scans += 1;
        let a = self.problem.a();
        let lo = a + self.cfg.left_clearance * (self.problem.b() - a);
        if !(lo < upper) {
            self.deepest_failure = self.deepest_failure.max(k);
            return Ok(None);
        }
        let settings = self.stage_settings(k);
        let (aux, at_a) = (&self.aux[k - 1].0, self.aux[k - 1].1);
        let (scan, _) = scan_with_doubling(
            |u| aux.flett_residual(u, at_a),
            lo,
            upper,
            settings,
            self.cfg.max_grid_doublings,
            |r| r.x < upper,
        )?;
        let (candidates, degenerate): (Vec<f64>, bool) = match scan {
            RootScan::Degenerate { .. } => ([a + (upper - a) / 2.0].into(), true),
            RootScan::Roots(roots) => {
                let mut xs: Vec<f64> = roots.iter().map(|r| r.x).filter(|&x| x < upper).collect();
                if self.cfg.policy == RootPolicy::Rightmost {
                    xs.reverse();
                }
                (xs, false)
            }
        };
        let count = candidates.len();
        for u in candidates {
            if let Some(mut rest) = self.run(k + 1, u)? {
                rest.insert(0, self.record(k, upper, u, degenerate, count)?);
                return Ok(Some(rest));
            }
        }
        self.deepest_failure = self.deepest_failure.max(k);
        Ok(None)
    }
}

/// Replays the constructive proof: for `k = 1..=n` find a Flett point
/// `u_k` of `φ_k` (or `ψ_k` when `unconstrained`) on `⟨a, u_{k-1}⟩`, with
/// `u_0 = b`; the last one is `η`.
///
/// Stages pick roots by `cfg.policy` and backtrack to the next candidate if
/// a later stage finds nothing.
pub fn cascade_solve(
    f: &Expr,
    a: f64,
    b: f64,
    n: usize,
    unconstrained: bool,
    cfg: &SolverConfig,
) -> Result<CascadeWitness, Error> {
    let variant = if unconstrained {
        Variant::Theorem7
    } else {
        Variant::Pawlikowska
    };
    let problem = MvtProblem::new(variant, f.clone(), None, a, b, n)?;
    let correction = unconstrained.then(|| problem.k_constant());
    let mut aux = Vec::with_capacity(n);
    for k in 1..=n {
        let function = AuxFunction::build(f, a, n, k, correction)?;
        let at_a = function.value(a)?;
        aux.push((function, at_a));
    }
    let mut cascade = Cascade {
        problem: &problem,
        cfg,
        aux,
        scans: 0,
        deepest_failure: 1,
    };
    let stages = cascade.run(1, b)?.ok_or(Error::StageFailed {
        stage: cascade.deepest_failure,
    })?;
    let eta = stages.last().map(|s| s.u).unwrap_or(f64::NAN);
    Ok(CascadeWitness {
        chain: stages[..stages.len() - 1].iter().map(|s| s.u).collect(),
        eta,
        stage_residuals: stages.iter().map(|s| s.flett_residual.abs()).collect(),
        final_residual: problem.residual(eta)?,
        scale: problem.scale(),
        boundary: problem.boundary_check(cfg.boundary_tol),
        unconstrained,
        policy: cfg.policy,
        stage_scans: cascade.scans,
        stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn roots_of(scan: RootScan) -> Vec<f64> {
        match scan {
            RootScan::Roots(r) => r.into_iter().map(|r| r.x).collect(),
            RootScan::Degenerate { .. } => panic!("unexpected degenerate scan"),
        }
    }

    #[test]
    fn exact_grid_zero() {
        let scan = find_roots(|x| Ok(x * x - 0.25), 0.0, 1.0, &ScanSettings::new(16, 1e-12)).unwrap();
        assert_eq!(roots_of(scan), [0.5]);
    }

    #[test]
    fn tangent_zero_on_grid_counts() {
        let scan = find_roots(|x| Ok((x - 0.25) * (x - 0.25)), 0.0, 1.0, &ScanSettings::new(8, 1e-12)).unwrap();
        assert_eq!(roots_of(scan), [0.25]);
    }

    #[test]
    fn several_roots_ascending() {
        let scan = find_roots(|x| Ok(libm::sin(x)), 0.5, 10.0, &ScanSettings::new(64, 1e-13)).unwrap();
        let roots = roots_of(scan);
        assert_eq!(roots.len(), 3);
        for (r, k) in roots.iter().zip(1..) {
            assert!((r - k as f64 * core::f64::consts::PI).abs() < 1e-11);
        }
    }

    #[test]
    fn zero_function_is_degenerate() {
        let scan = find_roots(|_| Ok(0.0), 0.0, 1.0, &ScanSettings::new(16, 1e-12)).unwrap();
        assert_eq!(scan, RootScan::Degenerate { max_abs: 0.0 });
    }

    #[test]
    fn scan_errors() {
        let s = ScanSettings::new(16, 1e-12);
        assert!(matches!(
            find_roots(Ok, 1.0, 0.0, &s),
            Err(Error::InvalidInterval { .. })
        ));
        assert_eq!(
            find_roots(Ok, 0.0, 1.0, &ScanSettings::new(1, 1e-12)).unwrap_err(),
            Error::InvalidGrid { grid: 1 }
        );
        let err = find_roots(|x| Ok(1.0 / (x - 0.5)), 0.0, 1.0, &s).unwrap_err();
        assert!(matches!(err, Error::NonFinite { x, .. } if x == 0.5));
    }

    #[test]
    fn pole_sign_change_is_rejected() {
        let mut s = ScanSettings::new(10, 1e-12);
        s.residual_level = 1e-6;
        let scan = find_roots(|x| Ok(1.0 / (x - 0.537)), 0.0, 1.0, &s).unwrap();
        assert!(roots_of(scan).is_empty());
    }

    #[test]
    fn noise_run_at_left_end_is_skipped() {
        let mut s = ScanSettings::new(100, 1e-12);
        s.noise_level = 1e-9;
        // tiny alternating values near 0, genuine root at 0.7
        let scan = find_roots(
            |x| Ok(if x < 0.05 { 1e-12 * libm::sin(1e4 * x) } else { x - 0.7 }),
            0.0,
            1.0,
            &s,
        )
        .unwrap();
        let roots = roots_of(scan);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 0.7).abs() < 1e-11);
    }

    #[test]
    fn flett_examples() {
        let cfg = SolverConfig::default();
        let p = MvtProblem::new(Variant::Flett, parse("x^3 - x").unwrap(), None, -1.0, 1.0, 1).unwrap();
        let w = solve(&p, &cfg).unwrap();
        assert_eq!(w.status, WitnessStatus::Found);
        assert!((w.eta - 0.5).abs() < 1e-9);
        assert!(w.residual_at_eta.abs() <= cfg.solve_tol * w.scale);
    }

    #[test]
    fn riedel_sahoo_quadratic_is_degenerate() {
        let p = MvtProblem::new(Variant::RiedelSahoo, parse("x^2").unwrap(), None, 0.0, 1.0, 1).unwrap();
        let w = solve(&p, &SolverConfig::default()).unwrap();
        assert_eq!(w.status, WitnessStatus::DegenerateAllPoints);
        assert_eq!(w.eta, 0.5);
    }

    #[test]
    fn not_found_without_hypothesis() {
        // f' strictly increasing and f'(a) ≠ f'(b): no Flett point on (0, 1]
        let p = MvtProblem::new(Variant::Flett, parse("exp(x)").unwrap(), None, 0.0, 1.0, 1).unwrap();
        let w = solve(&p, &SolverConfig::default()).unwrap();
        assert!(!w.boundary.holds);
        assert_eq!(w.status, WitnessStatus::NotFound);
        assert!(w.eta.is_nan());
    }

    #[test]
    fn cascade_quartic() {
        let cfg = SolverConfig::default();
        let c = cascade_solve(&parse("x^4").unwrap(), -1.0, 1.0, 2, false, &cfg).unwrap();
        assert_eq!(c.chain.len(), 1);
        assert!((c.chain[0] - 0.5).abs() < 1e-9);
        assert!((c.eta - 1.0 / 3.0).abs() < 1e-9);
        assert!(c.is_strictly_nested(-1.0, 1.0));
        assert!(c.stages[1].derivative_at_upper.abs() < 1e-9);
        assert!(c.final_residual.abs() <= cfg.solve_tol * c.scale, "{c:?}");
    }

    #[test]
    fn cascade_policy_rightmost_still_nested() {
        let cfg = SolverConfig {
            policy: RootPolicy::Rightmost,
            ..SolverConfig::default()
        };
        let f = parse("sin(3*x) + x^5/4").unwrap();
        let c = cascade_solve(&f, -1.0, 2.0, 3, true, &cfg).unwrap();
        assert!(c.is_strictly_nested(-1.0, 2.0));
        assert!(c.final_residual.abs() < 1e-9 * c.scale);
    }

    #[test]
    fn cascade_order_one_matches_flett_solve() {
        let cfg = SolverConfig::default();
        let f = parse("x^3 - x").unwrap();
        let c = cascade_solve(&f, -1.0, 1.0, 1, false, &cfg).unwrap();
        let p = MvtProblem::new(Variant::Flett, f, None, -1.0, 1.0, 1).unwrap();
        let w = solve(&p, &cfg).unwrap();
        assert!(c.chain.is_empty());
        assert!((c.eta - w.eta).abs() < 1e-12);
    }

    #[test]
    fn cascade_unconstrained_cubic() {
        let c = cascade_solve(&parse("x^3").unwrap(), 0.0, 1.0, 1, true, &SolverConfig::default()).unwrap();
        assert!((c.eta - 0.75).abs() < 1e-9);
    }
}
