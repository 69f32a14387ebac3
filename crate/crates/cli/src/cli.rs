//! Argument parsing and subcommand dispatch for the `flett` binary.
//!
//! Results go to `out` as one JSON document (or CSV); the human-readable
//! summary goes to `err`. Exit codes: 0 success, 1 verification failure or
//! no witness, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flett_core::theorems::{
    f_two_fn_check, taylor_poly_eval, trahan_general_check, trahan_original_check, DEFAULT_CONDITION_TOL,
};
use flett_core::{
    cascade_solve, parse, solve, Error, Expr, MvtProblem, RootPolicy, SolverConfig, Variant, WitnessStatus,
};
use serde::Serialize;

use crate::output::{
    csv_field, document, write_csv, write_records, CascadeOut, ConditionOut, SolverEcho, TwoFunctionOut, WitnessOut,
};
use crate::verify::{setup_failure, verify_batch, verify_problem, BatchSpec, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Relative tolerance of the two-function sign check (`product ≤ tol·scale`).
pub const TWO_FUNCTION_SIGN_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "flett", version, about = "Witness points for Flett-type mean value theorems")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum PolicyArg {
    Leftmost,
    Rightmost,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format (plot-data defaults to csv, everything else to json).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Initial number of scan cells.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Bisection tolerance (absolute, on x).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Suppress the summary on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    /// Relative tolerance of the equal-derivative boundary condition.
    #[arg(long, global = true)]
    boundary_tol: Option<f64>,
    /// Residuals below this multiple of the scale count as identically zero.
    #[arg(long, global = true)]
    degenerate_tol: Option<f64>,
    /// How often the grid may double when no root is found.
    #[arg(long, global = true)]
    max_grid_doublings: Option<u32>,
    /// Which root to report when several exist.
    #[arg(long, global = true, value_enum)]
    policy: Option<PolicyArg>,
}

impl GlobalArgs {
    fn solver_config(&self) -> SolverConfig {
        let mut cfg = SolverConfig::default();
        if let Some(grid) = self.grid {
            cfg.grid = grid;
        }
        if let Some(tol) = self.tol {
            cfg.solve_tol = tol;
        }
        if let Some(tol) = self.boundary_tol {
            cfg.boundary_tol = tol;
        }
        if let Some(tol) = self.degenerate_tol {
            cfg.degenerate_tol = tol;
        }
        if let Some(d) = self.max_grid_doublings {
            cfg.max_grid_doublings = d;
        }
        if let Some(p) = self.policy {
            cfg.policy = match p {
                PolicyArg::Leftmost => RootPolicy::Leftmost,
                PolicyArg::Rightmost => RootPolicy::Rightmost,
            };
        }
        cfg
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Locate a witness point of one theorem.
    Solve(SolveArgs),
    /// Replay the chain of nested Flett points leading to η.
    Cascade(CascadeArgs),
    /// Evaluate a sufficient sign condition.
    Check(CheckArgs),
    /// Verify generated constrained polynomials, or a single problem with --f.
    Verify(VerifyArgs),
    /// Print Taylor polynomial values T_n(f, x0)(x).
    Taylor(TaylorArgs),
    /// Sample f, f', the Flett residual and the tangent diagnostic on [a, b].
    PlotData(PlotArgs),
}

#[derive(Debug, Args, Serialize)]
struct SolveArgs {
    /// flett, riedel-sahoo, pawlikowska, theorem7 or two-function.
    #[arg(long, value_parser = parse_theorem)]
    theorem: String,
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Second function for the two-function theorem.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    a: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    b: f64,
    #[arg(long, default_value_t = 1)]
    n: usize,
}

#[derive(Debug, Args, Serialize)]
struct CascadeArgs {
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    a: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    b: f64,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Use the corrected auxiliaries, dropping the f^(n)(a) = f^(n)(b) hypothesis.
    #[arg(long)]
    unconstrained: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CheckType {
    TrahanOriginal,
    TrahanGeneral,
    TwoFunctionSign,
}

#[derive(Debug, Args, Serialize)]
struct CheckArgs {
    #[arg(long = "type", value_enum)]
    #[serde(rename = "type")]
    kind: CheckType,
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Second function for two-function-sign.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    a: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    b: f64,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Relative tolerance of the sign decision.
    #[arg(long)]
    condition_tol: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true, value_parser = parse_point)]
    a: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true, value_parser = parse_point)]
    b: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    coef_min: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    coef_max: f64,
    /// Verify this function instead of a generated batch.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Theorem for a single --f problem.
    #[arg(long, default_value = "pawlikowska", value_parser = parse_theorem)]
    theorem: String,
    /// Order for a single --f problem.
    #[arg(long, default_value_t = 1)]
    n: usize,
}

#[derive(Debug, Args, Serialize)]
struct TaylorArgs {
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    x0: f64,
    #[arg(long)]
    n: usize,
    /// Evaluation point; repeat for several.
    #[arg(long, required = true, allow_hyphen_values = true, value_parser = parse_point)]
    x: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
struct PlotArgs {
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    a: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    b: f64,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(2..))]
    points: u32,
}

/// A number or a constant expression such as `2*pi`.
fn parse_point(s: &str) -> Result<f64, String> {
    if let Ok(v) = s.parse::<f64>() {
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("'{s}' is not finite"))
        };
    }
    let e = parse(s).map_err(|e| e.to_string())?;
    if !e.is_constant() {
        return Err(format!("'{s}' must not depend on x"));
    }
    match e.eval(0.0) {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => Err(format!("'{s}' evaluates to {v}")),
        Err(err) => Err(err.to_string()),
    }
}

fn parse_theorem(s: &str) -> Result<String, String> {
    match Variant::from_name(s) {
        Some(v) => Ok(v.name().to_string()),
        None => {
            let names: Vec<&str> = Variant::ALL.iter().map(|v| v.name()).collect();
            Err(format!("unknown theorem '{s}' (expected one of: {})", names.join(", ")))
        }
    }
}

fn variant(name: &str) -> Variant {
    Variant::from_name(name).expect("validated by the argument parser")
}

#[derive(Serialize)]
struct Config<'a, A: Serialize> {
    seed: u64,
    format: Format,
    solver: SolverEcho,
    args: &'a A,
}

/// Failure that ends a command: message plus exit code.
struct Abort {
    code: i32,
    message: String,
}

impl Abort {
    fn input(message: impl Into<String>) -> Self {
        Abort {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::StageFailed { .. } => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Abort {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Abort {
    fn from(e: std::io::Error) -> Self {
        Abort {
            code: EXIT_FAILURE,
            message: format!("write failed: {e}"),
        }
    }
}

impl From<csv::Error> for Abort {
    fn from(e: csv::Error) -> Self {
        Abort {
            code: EXIT_FAILURE,
            message: format!("write failed: {e}"),
        }
    }
}

struct Ctx<'w> {
    global: GlobalArgs,
    cfg: SolverConfig,
    format: Format,
    out: &'w mut dyn Write,
    err: &'w mut dyn Write,
}

impl Ctx<'_> {
    fn config<'a, A: Serialize>(&self, args: &'a A) -> Config<'a, A> {
        Config {
            seed: self.global.seed,
            format: self.format,
            solver: (&self.cfg).into(),
            args,
        }
    }

    fn json<A: Serialize, R: Serialize>(&mut self, command: &str, args: &A, result: R) -> Result<(), Abort> {
        let doc = document(command, self.config(args), result);
        writeln!(self.out, "{doc}")?;
        Ok(())
    }

    fn summary(&mut self, line: std::fmt::Arguments<'_>) {
        if !self.global.quiet {
            // The summary is best effort; a closed stderr must not change the exit code.
            let _ = writeln!(self.err, "{line}");
        }
    }
}

fn expr(source: &str, what: &str) -> Result<Expr, Abort> {
    parse(source).map_err(|e| Abort::input(format!("--{what}: {e}")))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let cfg = cli.global.solver_config();
    let format = cli.global.format.unwrap_or(match cli.command {
        Command::PlotData(_) => Format::Csv,
        _ => Format::Json,
    });
    let mut ctx = Ctx {
        global: cli.global,
        cfg,
        format,
        out,
        err,
    };
    let result = match &cli.command {
        Command::Solve(args) => run_solve(&mut ctx, args),
        Command::Cascade(args) => run_cascade(&mut ctx, args),
        Command::Check(args) => run_check(&mut ctx, args),
        Command::Verify(args) => run_verify(&mut ctx, args),
        Command::Taylor(args) => run_taylor(&mut ctx, args),
        Command::PlotData(args) => run_plot(&mut ctx, args),
    };
    match result {
        Ok(code) => code,
        Err(Abort { code, message }) => {
            let _ = writeln!(ctx.err, "error: {message}");
            code
        }
    }
}

fn run_solve(ctx: &mut Ctx<'_>, args: &SolveArgs) -> Result<i32, Abort> {
    let f = expr(&args.f, "f")?;
    let g = args.g.as_deref().map(|g| expr(g, "g")).transpose()?;
    let p = MvtProblem::new(variant(&args.theorem), f, g, args.a, args.b, args.n)?;
    let w = solve(&p, &ctx.cfg)?;
    let out = WitnessOut::from(&w);
    match ctx.format {
        Format::Json => ctx.json("solve", args, &out)?,
        Format::Csv => write_records(
            &mut *ctx.out,
            &["theorem", "status", "eta", "residual", "scale", "grid_used"],
            &[vec![
                out.theorem.into(),
                out.status.into(),
                csv_field(out.eta),
                csv_field(out.residual),
                csv_field(out.scale),
                out.grid_used.to_string(),
            ]],
        )?,
    }
    if w.boundary.required && !w.boundary.holds {
        ctx.summary(format_args!(
            "warning: f^({n})(a) and f^({n})(b) differ by {:e}; the theorem's hypothesis does not hold",
            w.boundary.gap,
            n = p.n()
        ));
    }
    ctx.summary(format_args!(
        "{}: {} eta = {} (residual {:e})",
        out.theorem, out.status, w.eta, w.residual_at_eta
    ));
    Ok(if w.status == WitnessStatus::NotFound {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

fn run_cascade(ctx: &mut Ctx<'_>, args: &CascadeArgs) -> Result<i32, Abort> {
    let f = expr(&args.f, "f")?;
    let c = cascade_solve(&f, args.a, args.b, args.n, args.unconstrained, &ctx.cfg)?;
    let out = CascadeOut::new(&c, args.a, args.b);
    match ctx.format {
        Format::Json => ctx.json("cascade", args, &out)?,
        Format::Csv => {
            let rows: Vec<Vec<f64>> = c
                .stages
                .iter()
                .map(|s| vec![s.k as f64, s.upper, s.u, s.flett_residual, s.derivative_at_upper])
                .collect();
            write_csv(
                &mut *ctx.out,
                &["k", "upper", "u", "flett_residual", "derivative_at_upper"],
                &rows,
            )?;
        }
    }
    ctx.summary(format_args!(
        "cascade: chain {:?} -> eta = {} (residual {:e}, nested: {})",
        c.chain, c.eta, c.final_residual, out.nested
    ));
    Ok(EXIT_OK)
}

fn run_check(ctx: &mut Ctx<'_>, args: &CheckArgs) -> Result<i32, Abort> {
    let f = expr(&args.f, "f")?;
    let (a, b, n) = (args.a, args.b, args.n);
    let (satisfied, product, body) = match args.kind {
        CheckType::TrahanOriginal | CheckType::TrahanGeneral => {
            let tol = args.condition_tol.unwrap_or(DEFAULT_CONDITION_TOL);
            let report = if args.kind == CheckType::TrahanOriginal {
                trahan_original_check(&f, a, b, tol)?
            } else {
                trahan_general_check(&f, a, b, n, tol)?
            };
            let out = ConditionOut::from(&report);
            (out.satisfied, out.product, CheckBody::Condition(out))
        }
        CheckType::TwoFunctionSign => {
            let g = args
                .g
                .as_deref()
                .ok_or_else(|| Abort::input("two-function-sign needs --g"))?;
            let g = expr(g, "g")?;
            let tol = args.condition_tol.unwrap_or(TWO_FUNCTION_SIGN_TOL);
            let p = MvtProblem::new(Variant::TwoFunction, f.clone(), Some(g.clone()), a, b, n)?;
            let sign = f_two_fn_check(&f, &g, a, b, n)?;
            let out = TwoFunctionOut::new(&sign, tol * p.scale());
            (out.satisfied, out.product, CheckBody::TwoFunction(out))
        }
    };
    let name = args
        .kind
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    match ctx.format {
        Format::Json => ctx.json("check", args, &body)?,
        Format::Csv => write_records(
            &mut *ctx.out,
            &["type", "product", "satisfied"],
            &[vec![name.clone(), csv_field(product), satisfied.to_string()]],
        )?,
    }
    ctx.summary(format_args!(
        "{name}: product = {product} ({})",
        if satisfied { "satisfied" } else { "not satisfied" }
    ));
    Ok(EXIT_OK)
}

#[derive(Serialize)]
#[serde(untagged)]
enum CheckBody {
    Condition(ConditionOut),
    TwoFunction(TwoFunctionOut),
}

fn run_verify(ctx: &mut Ctx<'_>, args: &VerifyArgs) -> Result<i32, Abort> {
    if let Some(source) = &args.f {
        let f = expr(source, "f")?;
        let g = args.g.as_deref().map(|g| expr(g, "g")).transpose()?;
        let v = variant(&args.theorem);
        let check = match MvtProblem::new(v, f, g, args.a, args.b, args.n) {
            Ok(p) => verify_problem(&p, &ctx.cfg),
            Err(
                e @ (Error::Parse(_)
                | Error::InvalidInterval { .. }
                | Error::InvalidOrder { .. }
                | Error::MissingSecondFunction),
            ) => return Err(e.into()),
            Err(e) => setup_failure(v, source.clone(), args.a, args.b, args.n, e),
        };
        match ctx.format {
            Format::Json => ctx.json("verify", args, &check)?,
            Format::Csv => write_records(&mut *ctx.out, &CASE_HEADER, &[case_row(0, &check)])?,
        }
        ctx.summary(format_args!("verify: {:?}", check.outcome));
        for failure in &check.failures {
            ctx.summary(format_args!("  {failure}"));
        }
        return Ok(if check.outcome == Outcome::Fail {
            EXIT_FAILURE
        } else {
            EXIT_OK
        });
    }

    let spec = BatchSpec {
        count: args.count,
        n_range: (args.n_min, args.n_max),
        coefficient_range: (args.coef_min, args.coef_max),
        interval: (args.a, args.b),
        seed: ctx.global.seed,
    };
    let report = verify_batch(&spec, &ctx.cfg).map_err(|e| Abort::input(e.to_string()))?;
    match ctx.format {
        Format::Json => ctx.json("verify", args, &report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report.cases.iter().map(|c| case_row(c.index, &c.check)).collect();
            write_records(&mut *ctx.out, &CASE_HEADER, &rows)?;
        }
    }
    let c = report.counts;
    ctx.summary(format_args!(
        "verify: {} cases, {} pass, {} degenerate, {} fail",
        c.total, c.pass, c.degenerate, c.fail
    ));
    for case in report.cases.iter().filter(|c| c.check.outcome == Outcome::Fail) {
        ctx.summary(format_args!(
            "  case {} (n = {}, f = {}): {}",
            case.index,
            case.check.n,
            case.check.f,
            case.check.failures.join("; ")
        ));
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}

const CASE_HEADER: [&str; 8] = ["index", "theorem", "n", "outcome", "status", "eta", "residual", "f"];

fn case_row(index: usize, check: &crate::verify::ProblemCheck) -> Vec<String> {
    let (status, eta, residual) = match &check.witness {
        Some(w) => (w.status.to_string(), csv_field(w.eta), csv_field(w.residual)),
        None => (String::new(), String::new(), String::new()),
    };
    let outcome = match check.outcome {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Degenerate => "degenerate",
    };
    vec![
        index.to_string(),
        check.theorem.to_string(),
        check.n.to_string(),
        outcome.to_string(),
        status,
        eta,
        residual,
        check.f.clone(),
    ]
}

#[derive(Serialize)]
struct TaylorPoint {
    x: f64,
    taylor: f64,
    f: f64,
}

fn run_taylor(ctx: &mut Ctx<'_>, args: &TaylorArgs) -> Result<i32, Abort> {
    let f = expr(&args.f, "f")?;
    let points = args
        .x
        .iter()
        .map(|&x| {
            Ok(TaylorPoint {
                x,
                taylor: taylor_poly_eval(&f, args.x0, args.n, x)?,
                f: f.eval(x).unwrap_or(f64::NAN),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    match ctx.format {
        Format::Json => ctx.json("taylor", args, &points)?,
        Format::Csv => {
            let rows: Vec<Vec<f64>> = points.iter().map(|p| vec![p.x, p.taylor, p.f]).collect();
            write_csv(&mut *ctx.out, &["x", "taylor", "f"], &rows)?;
        }
    }
    ctx.summary(format_args!(
        "taylor: T_{}(f, {}) at {} points",
        args.n,
        args.x0,
        points.len()
    ));
    Ok(EXIT_OK)
}

pub const PLOT_COLUMNS: [&str; 5] = ["x", "f", "f_prime", "flett_residual", "tangent_at_a"];

#[derive(Serialize)]
struct PlotColumns {
    x: Vec<f64>,
    f: Vec<f64>,
    f_prime: Vec<f64>,
    flett_residual: Vec<f64>,
    tangent_at_a: Vec<f64>,
}

fn run_plot(ctx: &mut Ctx<'_>, args: &PlotArgs) -> Result<i32, Abort> {
    let f = expr(&args.f, "f")?;
    let (a, b) = (args.a, args.b);
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval { a, b }.into());
    }
    let fa = f.eval(a).map_err(Error::from)?;
    let last = args.points as usize - 1;
    let rows: Vec<Vec<f64>> = (0..=last)
        .map(|i| {
            let x = if i == last {
                b
            } else {
                a + (b - a) * i as f64 / last as f64
            };
            match f.eval_jet(x, 1) {
                Ok(jet) => {
                    let (value, slope) = (jet.value(), jet.coeffs()[1]);
                    let residual = slope * (x - a) - (value - fa);
                    // t(x) = f(a) + f'(x)(x - a) - f(x): zero where the tangent at x meets (a, f(a)).
                    let tangent = fa + slope * (x - a) - value;
                    vec![x, value, slope, residual, tangent]
                }
                Err(_) => vec![x, f64::NAN, f64::NAN, f64::NAN, f64::NAN],
            }
        })
        .collect();
    match ctx.format {
        Format::Csv => write_csv(&mut *ctx.out, &PLOT_COLUMNS, &rows)?,
        Format::Json => {
            let column = |j: usize| rows.iter().map(|r| r[j]).collect::<Vec<f64>>();
            let columns = PlotColumns {
                x: column(0),
                f: column(1),
                f_prime: column(2),
                flett_residual: column(3),
                tangent_at_a: column(4),
            };
            ctx.json("plot-data", args, &columns)?;
        }
    }
    ctx.summary(format_args!("plot-data: {} points on [{a}, {b}]", rows.len()));
    Ok(EXIT_OK)
}
