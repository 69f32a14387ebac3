//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always appear in the test output.

// `!(x <= tol)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::process::ExitCode;
use std::time::{Duration, Instant};

use flett_cli::{verify_batch, BatchSpec};
use flett_core::theorems::{
    f_two_fn_check, g_f_eval, trahan_general_check, trahan_original_check, DEFAULT_CONDITION_TOL,
};
use flett_core::{cascade_solve, parse, solve, Expr, MvtProblem, SolverConfig, Variant, WitnessStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expr(s: &str) -> Expr {
    parse(s).unwrap()
}

fn witness(
    variant: Variant,
    f: &str,
    g: Option<&str>,
    a: f64,
    b: f64,
    n: usize,
) -> Result<flett_core::Witness, String> {
    let p = MvtProblem::new(variant, expr(f), g.map(expr), a, b, n).map_err(|e| e.to_string())?;
    solve(&p, &SolverConfig::default()).map_err(|e| e.to_string())
}

fn found_near(w: &flett_core::Witness, target: f64, tol: f64, what: &str) -> Result<(), String> {
    ensure(
        w.status == WitnessStatus::Found && (w.eta - target).abs() <= tol,
        || format!("{what}: status {:?}, eta {} (want {target})", w.status, w.eta),
    )
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

/// Plain bisection for a sign change of `g` on `[lo, hi]`.
fn bisection_oracle(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    assert!(g(lo).signum() != g(hi).signum());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid).signum() == g(lo).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Random polynomial of degree `lo..=hi` with coefficients in [-1, 1].
fn random_poly(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Expr {
    let degree = rng.gen_range(lo..=hi);
    let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    expr(&flett_cli::generator::render(&coeffs))
}

fn flett_oracles() -> Outcome {
    let start = Instant::now();
    let w = witness(Variant::Flett, "x^3 - x", None, -1.0, 1.0, 1)?;
    found_near(&w, 0.5, 1e-9, "x^3 - x")?;
    // tan x = x written as sin x - x cos x to avoid the poles of tan.
    let oracle = bisection_oracle(|x| x.sin() - x * x.cos(), 4.0, 4.7);
    let w = witness(Variant::Flett, "sin(x)", None, 0.0, 2.0 * std::f64::consts::PI, 1)?;
    found_near(&w, oracle, 1e-9, "sin")?;
    within(start.elapsed(), Duration::from_millis(100))?;
    Ok(format!("eta = {} vs tan-root oracle {oracle}", w.eta))
}

fn pawlikowska_oracle() -> Outcome {
    let start = Instant::now();
    let w = witness(Variant::Pawlikowska, "x^4", None, -1.0, 1.0, 2)?;
    found_near(&w, 1.0 / 3.0, 1e-9, "solve")?;
    let c = cascade_solve(&expr("x^4"), -1.0, 1.0, 2, false, &SolverConfig::default()).map_err(|e| e.to_string())?;
    ensure(c.chain.len() == 1 && (c.chain[0] - 0.5).abs() <= 1e-9, || {
        format!("chain {:?}", c.chain)
    })?;
    ensure((c.eta - 1.0 / 3.0).abs() <= 1e-9, || format!("cascade eta {}", c.eta))?;
    within(start.elapsed(), Duration::from_millis(100))?;
    Ok(format!("eta = {}, chain = {:?}", w.eta, c.chain))
}

fn unconstrained_oracles() -> Outcome {
    let start = Instant::now();
    let w = witness(Variant::Theorem7, "x^3", None, 0.0, 1.0, 1)?;
    found_near(&w, 0.75, 1e-9, "theorem7 x^3")?;
    let rs = witness(Variant::RiedelSahoo, "x^3", None, 0.0, 1.0, 1)?;
    found_near(&rs, 0.75, 1e-9, "riedel-sahoo x^3")?;
    let d = witness(Variant::RiedelSahoo, "x^2", None, 0.0, 1.0, 1)?;
    ensure(d.status == WitnessStatus::DegenerateAllPoints, || {
        format!("x^2: {:?}", d.status)
    })?;
    let d7 = witness(Variant::Theorem7, "x^2", None, 0.0, 1.0, 1)?;
    ensure(d7.status == WitnessStatus::DegenerateAllPoints, || {
        format!("theorem7 x^2: {:?}", d7.status)
    })?;
    within(start.elapsed(), Duration::from_millis(100))?;
    Ok(format!("eta = {}; x^2 degenerate", w.eta))
}

fn two_function_oracle() -> Outcome {
    let w = witness(Variant::TwoFunction, "x^2", Some("x^3"), 0.0, 1.0, 1)?;
    found_near(&w, 0.75, 1e-9, "x^2 / x^3")?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for case in 0..20 {
        let n = 1 + case % 3;
        let f = random_poly(&mut rng, n + 1, n + 5);
        let fact: f64 = (1..=n + 1).map(|i| i as f64).product();
        let g = expr(&format!("x^{}/{fact}", n + 1));
        let two = MvtProblem::new(Variant::TwoFunction, f.clone(), Some(g), -1.0, 1.0, n).map_err(|e| e.to_string())?;
        let seven = MvtProblem::new(Variant::Theorem7, f.clone(), None, -1.0, 1.0, n).map_err(|e| e.to_string())?;
        for i in 1..=200 {
            let x = -1.0 + 2.0 * i as f64 / 200.0;
            let (r2, r7) = (
                two.residual(x).map_err(|e| e.to_string())?,
                seven.residual(x).map_err(|e| e.to_string())?,
            );
            let gap = (r2 - r7).abs() / seven.scale();
            worst = worst.max(gap);
            ensure(gap <= 1e-12, || format!("f = {f}, n = {n}, x = {x}: {r2} vs {r7}"))?;
        }
    }
    Ok(format!("eta = {}; max residual gap {worst:.2e}·scale", w.eta))
}

fn property_suite() -> Outcome {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let mut summary = Vec::new();
    for n in 1..=5 {
        let spec = BatchSpec {
            count: 1000,
            n_range: (n, n),
            seed: 0x5eed + n as u64,
            ..BatchSpec::default()
        };
        let report = verify_batch(&spec, &cfg).map_err(|e| e.to_string())?;
        for case in &report.cases {
            let check = &case.check;
            let fail = |msg: String| Err(format!("n = {n}, case {} ({}): {msg}", case.index, check.f));
            let Some(w) = &check.witness else {
                return fail("no witness".into());
            };
            let scale = w.scale;
            match w.status {
                "Found" => {
                    if !(w.residual.abs() <= 1e-8 * scale && -1.0 < w.eta && w.eta < 1.0) {
                        return fail(format!("eta {} residual {}", w.eta, w.residual));
                    }
                }
                "DegenerateAllPoints" => {}
                other => return fail(format!("status {other}")),
            }
            let Some(c) = &check.cascade else {
                return fail("no cascade".into());
            };
            if !c.nested {
                return fail(format!("chain {:?} -> {} not nested", c.chain, c.eta));
            }
            if let Some(s) = c.stages.iter().find(|s| !(s.derivative_at_upper.abs() <= 1e-9 * scale)) {
                return fail(format!("stage {} derivative {}", s.k, s.derivative_at_upper));
            }
            if !check.failures.is_empty() {
                return fail(check.failures.join("; "));
            }
        }
        let c = report.counts;
        summary.push(format!("n={n}: {}+{}d", c.pass, c.degenerate));
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{} in {:.1?}", summary.join(", "), start.elapsed()))
}

fn g_f_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for case in 0..50 {
        let n = 1 + case % 3;
        let f = random_poly(&mut rng, n + 1, n + 6);
        let p = MvtProblem::new(Variant::Pawlikowska, f.clone(), None, -1.0, 1.0, n).map_err(|e| e.to_string())?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        for i in 1..=200 {
            let x = -1.0 + 2.0 * i as f64 / 200.0;
            let g = g_f_eval(&f, -1.0, n, x, 1).map_err(|e| e.to_string())?;
            let r = p.residual(x).map_err(|e| e.to_string())?;
            let gap = (g * (x + 1.0).powi(n as i32 + 1) / (sign * fact) + r).abs() / p.scale();
            worst = worst.max(gap);
            ensure(gap <= 1e-10, || format!("f = {f}, n = {n}, x = {x}: gap {gap:e}"))?;
        }
    }
    Ok(format!("max gap {worst:.2e}·scale"))
}

fn trahan_checks() -> Outcome {
    let tol = DEFAULT_CONDITION_TOL;
    let r = trahan_general_check(&expr("x^3 - x"), -1.0, 1.0, 1, tol).map_err(|e| e.to_string())?;
    ensure(r.product == 16.0 && r.satisfied, || format!("x^3 - x: {r:?}"))?;
    let r = trahan_general_check(&expr("x^2"), 0.0, 1.0, 1, tol).map_err(|e| e.to_string())?;
    ensure(r.product == -1.0 && !r.satisfied, || format!("x^2: {r:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut satisfied = 0;
    for _ in 0..500 {
        let f = random_poly(&mut rng, 3, 4);
        let o = trahan_original_check(&f, -1.0, 1.0, tol).map_err(|e| e.to_string())?;
        let g = trahan_general_check(&f, -1.0, 1.0, 1, tol).map_err(|e| e.to_string())?;
        ensure(o.satisfied == g.satisfied, || format!("f = {f}: {o:?} vs {g:?}"))?;
        satisfied += usize::from(o.satisfied);
    }
    Ok(format!("examples 16 / -1; 500 verdicts agree ({satisfied} satisfied)"))
}

fn f_sign_invariant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut done, mut worst) = (0, f64::NEG_INFINITY);
    while done < 50 {
        let n = 1 + done % 3;
        let f = random_poly(&mut rng, n + 1, n + 4);
        let g = random_poly(&mut rng, n + 1, n + 4);
        let Ok(p) = MvtProblem::new(Variant::TwoFunction, f.clone(), Some(g.clone()), -1.0, 1.0, n) else {
            continue; // g^(n)(a) = g^(n)(b): not a valid triple
        };
        let s = f_two_fn_check(&f, &g, -1.0, 1.0, n).map_err(|e| e.to_string())?;
        worst = worst.max(s.product / p.scale());
        ensure(s.product <= 1e-9 * p.scale(), || {
            format!("f = {f}, g = {g}, n = {n}: {s:?}")
        })?;
        done += 1;
    }
    Ok(format!("max product {worst:.2e}·scale"))
}

fn ad_soundness() -> Outcome {
    let corpus: [(&str, f64, f64); 10] = [
        ("sin(x)*exp(x)", -2.0, 2.0),
        ("ln(1 + x^2)", -2.0, 2.0),
        ("sqrt(x + 3)", -2.0, 2.0),
        ("x^5 - 3*x^2 + 2", -1.5, 1.5),
        ("exp(-x^2)", -2.0, 2.0),
        ("cos(x)/(2 + sin(x))", -3.0, 3.0),
        ("x^2.5 - x", 0.5, 3.0),
        ("x*ln(x)", 0.5, 3.0),
        ("2^x * cos(3*x)", -1.0, 1.0),
        ("(x^2 - 1)/(x - 2)", -1.0, 1.0),
    ];
    let mut worst: f64 = 0.0;
    for (source, lo, hi) in corpus {
        let f = expr(source);
        for i in 0..100 {
            let x = lo + (hi - lo) * (i as f64 + 0.5) / 100.0;
            let jet = f.derivatives(x, 4).map_err(|e| e.to_string())?;
            for (k, &dk) in jet.iter().enumerate().skip(1) {
                // Central difference of the (k-1)-th derivative, Richardson
                // extrapolated; k = 1 uses plain evaluation.
                let below = |t: f64| {
                    if k == 1 {
                        f.eval(t).unwrap()
                    } else {
                        f.derivatives(t, k - 1).unwrap()[k - 1]
                    }
                };
                let central = |h: f64| (below(x + h) - below(x - h)) / (2.0 * h);
                let h = 1e-3;
                let fd = (4.0 * central(h / 2.0) - central(h)) / 3.0;
                let err = (dk - fd).abs() / dk.abs().max(1.0);
                worst = worst.max(err);
                ensure(err <= 1e-6, || {
                    format!("{source} at x = {x}, order {k}: jet {dk} vs fd {fd}")
                })?;
            }
        }
    }
    Ok(format!("max relative error {worst:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("flett oracles", flett_oracles),
        ("higher-order oracle and cascade", pawlikowska_oracle),
        ("unconstrained first-order oracles", unconstrained_oracles),
        ("two-function oracle and reduction", two_function_oracle),
        ("random constrained polynomial suite", property_suite),
        ("G_f' closed form vs residual", g_f_identity),
        ("sign condition checks", trahan_checks),
        ("two-function sign invariant", f_sign_invariant),
        ("jet derivatives vs finite differences", ad_soundness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
