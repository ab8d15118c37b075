//! `gengamma`: evaluate the Gamma families, sweep the sandwich inequalities
//! and monotonicity theorems, and run the oracle self-test.

// `!(x > 0.0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod format;
mod grid;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gengamma::inequality::{
    check_sandwich, sandwich_hypotheses, scan_monotone, Auxiliary, GenParams, HypothesisStatus,
    InequalityReport, DEFAULT_TOL_REPORT,
};
use gengamma::selftest::{self, SelftestOptions};
use gengamma::{Constants, EvalResult, FamilyParam, SeriesControl};

use format::sig17;

const MAX_TERMS_ENV: &str = "GAMMA_GEN_MAX_TERMS";

#[derive(Debug)]
pub enum CliError {
    Lib(gengamma::Error),
    Usage(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) => e.exit_code() as u8,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<gengamma::Error> for CliError {
    fn from(e: gengamma::Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "gengamma",
    version,
    about = "Generalized Gamma functions and their inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at a point.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Check the sandwich inequality of a family over a grid in (0,1).
    #[command(allow_negative_numbers = true)]
    Verify(SweepArgs),
    /// Scan Ω, φ or θ for monotonicity over a grid.
    #[command(allow_negative_numbers = true)]
    Scan(SweepArgs),
    /// Cross-validate every fast path against the extended-precision oracle.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Function {
    Gamma,
    Psi,
    GammaP,
    PsiP,
    GammaQ,
    PsiQ,
    GammaK,
    PsiK,
    Omega,
    Phi,
    Theta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    P,
    Q,
    K,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// p-family parameter, an integer ≥ 1.
    #[arg(long)]
    p: Option<u64>,
    /// q-family parameter in (0,1).
    #[arg(long)]
    q: Option<f64>,
    /// k-family parameter, > 0.
    #[arg(long)]
    k: Option<f64>,
    /// Absolute tolerance for infinite series and products.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct EvalArgs {
    function: Function,
    #[arg(long)]
    t: f64,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[command(flatten)]
    params: ParamArgs,
    /// `start:stop:step` or a comma-separated list of points.
    #[arg(long, conflicts_with = "samples")]
    grid: Option<String>,
    /// Draw this many random grid points instead of `--grid`.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Slack below zero tolerated in margins before a point fails.
    #[arg(long, default_value_t = DEFAULT_TOL_REPORT)]
    tol_report: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run a reduced sample of every suite.
    #[arg(long)]
    quick: bool,
    #[arg(long, default_value_t = SelftestOptions::default().seed)]
    seed: u64,
    /// Replaces the Euler–Mascheroni constant used by the fast paths.
    #[arg(long, hide = true)]
    euler_gamma: Option<f64>,
}

fn series_control(tol: Option<f64>) -> CliResult<SeriesControl> {
    let max_terms = match std::env::var(MAX_TERMS_ENV) {
        Ok(s) => s.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!(
                "{MAX_TERMS_ENV} must be a positive integer (got `{s}`)"
            ))
        })?,
        Err(_) => SeriesControl::DEFAULT_MAX_TERMS,
    };
    Ok(SeriesControl::new(
        max_terms,
        tol.unwrap_or(SeriesControl::DEFAULT_TOL),
    )?)
}

fn family_param(family: Family, params: &ParamArgs) -> CliResult<FamilyParam> {
    let missing = |flag: &str| CliError::Usage(format!("--{flag} is required for family {flag}"));
    Ok(match family {
        Family::P => FamilyParam::p(params.p.ok_or_else(|| missing("p"))?)?,
        Family::Q => FamilyParam::q(params.q.ok_or_else(|| missing("q"))?)?,
        Family::K => FamilyParam::k(params.k.ok_or_else(|| missing("k"))?)?,
    })
}

fn require<T>(v: Option<T>, flag: &str, function: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {function}")))
}

fn with_bound(r: EvalResult, ctrl: &SeriesControl) -> CliResult<(f64, Option<f64>)> {
    let err = r.err_bound;
    Ok((r.require(ctrl)?, Some(err)))
}

fn cmd_eval(args: &EvalArgs) -> CliResult<String> {
    let p = &args.params;
    let ctrl = series_control(p.tol)?;
    let t = args.t;
    let (value, err_bound) = match args.function {
        Function::Gamma => (gengamma::gamma(t)?, None),
        Function::Psi => with_bound(gengamma::psi_series(t, &ctrl)?, &ctrl)?,
        Function::GammaP => (gengamma::gamma_p(t, require(p.p, "p", "gamma_p")?)?, None),
        Function::PsiP => (gengamma::psi_p(t, require(p.p, "p", "psi_p")?)?, None),
        Function::GammaQ => {
            let q = require(p.q, "q", "gamma_q")?;
            with_bound(gengamma::gamma_q(t, q, &ctrl)?, &ctrl)?
        }
        Function::PsiQ => {
            let q = require(p.q, "q", "psi_q")?;
            with_bound(gengamma::psi_q(t, q, &ctrl)?, &ctrl)?
        }
        Function::GammaK => (gengamma::gamma_k(t, require(p.k, "k", "gamma_k")?)?, None),
        Function::PsiK => {
            let k = require(p.k, "k", "psi_k")?;
            with_bound(gengamma::psi_k(t, k, &ctrl)?, &ctrl)?
        }
        Function::Omega | Function::Phi | Function::Theta => {
            let family = match args.function {
                Function::Omega => Family::P,
                Function::Phi => Family::Q,
                _ => Family::K,
            };
            (auxiliary(family, p, ctrl)?.value(t)?, None)
        }
    };
    let mut out = sig17(value);
    if let Some(e) = err_bound {
        let _ = write!(out, "\nerr_bound {e:e}");
    }
    Ok(out)
}

fn auxiliary(family: Family, p: &ParamArgs, ctrl: SeriesControl) -> CliResult<Auxiliary> {
    let gp = GenParams::new(p.a, p.b, p.alpha, p.beta)?;
    Ok(Auxiliary::new(gp, family_param(family, p)?)?.with_ctrl(ctrl))
}

#[derive(Serialize)]
struct SweepConfig<'a> {
    command: &'static str,
    family: Family,
    family_param: FamilyParam,
    gen_params: GenParams,
    grid: Option<&'a str>,
    samples: Option<usize>,
    seed: u64,
    grid_points: usize,
    tol: f64,
    max_terms: usize,
    tol_report: f64,
    format: Format,
}

#[derive(Serialize)]
struct VerifySummary {
    passed: usize,
    total: usize,
    pass: bool,
    hypothesis_status: HypothesisStatus,
    alpha_on_boundary: bool,
    min_lower_margin: f64,
    min_upper_margin: f64,
}

#[derive(Serialize)]
struct Report<'a, R: Serialize, S: Serialize> {
    config: SweepConfig<'a>,
    rows: &'a [R],
    summary: S,
}

struct Sweep<'a> {
    args: &'a SweepArgs,
    aux: Auxiliary,
    grid: Vec<f64>,
}

impl<'a> Sweep<'a> {
    /// `sample_range` bounds the random points drawn with `--samples`.
    fn new(args: &'a SweepArgs, sample_range: (f64, f64)) -> CliResult<Self> {
        if !(args.tol_report >= 0.0 && args.tol_report.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tol-report must be ≥ 0 (got {})",
                args.tol_report
            )));
        }
        let ctrl = series_control(args.params.tol)?;
        let aux = auxiliary(args.family, &args.params, ctrl)?;
        let grid = match (&args.grid, args.samples) {
            (Some(spec), _) => grid::parse_grid(spec)?,
            (None, Some(n)) => grid::sample_grid(n, args.seed, sample_range.0, sample_range.1)?,
            (None, None) => {
                return Err(CliError::Usage(
                    "one of --grid or --samples is required".into(),
                ))
            }
        };
        if let Some(w) = grid.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(CliError::Usage(format!(
                "grid must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Sweep { args, aux, grid })
    }

    fn config(&self, command: &'static str) -> SweepConfig<'a> {
        SweepConfig {
            command,
            family: self.args.family,
            family_param: self.aux.family,
            gen_params: self.aux.gp,
            grid: self.args.grid.as_deref(),
            samples: self.args.samples,
            seed: self.args.seed,
            grid_points: self.grid.len(),
            tol: self.aux.ctrl.tol(),
            max_terms: self.aux.ctrl.max_terms(),
            tol_report: self.args.tol_report,
            format: self.args.format,
        }
    }

    /// Sends `report` to `--out` (and the summary to stdout) or, without
    /// `--out`, the report to stdout and the summary to stderr.
    fn emit(&self, report: String, summary: String) -> CliResult<()> {
        match &self.args.out {
            Some(path) => {
                std::fs::write(path, report)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
                println!("{summary}");
            }
            None => {
                print!("{report}");
                eprintln!("{summary}");
            }
        }
        Ok(())
    }
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))
}

fn cmd_verify(args: &SweepArgs) -> CliResult<bool> {
    let sweep = Sweep::new(args, (0.0, 1.0))?;
    let status = sandwich_hypotheses(&sweep.aux, &sweep.grid)?;
    let rows = check_sandwich(&sweep.aux, &sweep.grid, args.tol_report)?;
    let passed = rows.iter().filter(|r| r.pass).count();
    let total = rows.len();
    let summary = VerifySummary {
        passed,
        total,
        pass: passed == total,
        hypothesis_status: status,
        alpha_on_boundary: status == HypothesisStatus::Boundary,
        min_lower_margin: rows
            .iter()
            .map(|r| r.lower_margin)
            .fold(f64::INFINITY, f64::min),
        min_upper_margin: rows
            .iter()
            .map(|r| r.upper_margin)
            .fold(f64::INFINITY, f64::min),
    };
    if summary.alpha_on_boundary {
        eprintln!("note: α = 1 lies on the boundary of the α + β·t > 1 hypothesis");
    }
    let line = format!(
        "{} {passed}/{total}",
        if summary.pass { "PASS" } else { "FAIL" }
    );
    let pass = summary.pass;
    let report = match args.format {
        Format::Csv => verify_csv(&rows),
        Format::Json => to_json(&Report {
            config: sweep.config("verify"),
            rows: &rows,
            summary,
        })?,
    };
    sweep.emit(report, line)?;
    Ok(pass)
}

fn verify_csv(rows: &[InequalityReport]) -> String {
    let mut out = String::from("t,lower,middle,upper,lower_margin,upper_margin,strict,pass\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.t, r.lower, r.middle, r.upper, r.lower_margin, r.upper_margin, r.strict, r.pass
        );
    }
    out
}

#[derive(Serialize)]
struct ScanRow {
    t: f64,
    value: f64,
    log_deriv: f64,
}

#[derive(Serialize)]
struct ScanSummary {
    function: &'static str,
    min_forward_diff: Option<f64>,
    derivative_min: f64,
    pass: bool,
}

fn cmd_scan(args: &SweepArgs) -> CliResult<bool> {
    let sweep = Sweep::new(args, (0.0, 10.0))?;
    let scan = scan_monotone(&sweep.aux, &sweep.grid)?;
    let pass = scan.pass(args.tol_report);
    let rows: Vec<ScanRow> = scan
        .grid
        .iter()
        .zip(&scan.values)
        .zip(&scan.log_derivs)
        .map(|((&t, &value), &log_deriv)| ScanRow {
            t,
            value,
            log_deriv,
        })
        .collect();
    let line = format!(
        "{} min_forward_diff={} derivative_min={}",
        if pass { "PASS" } else { "FAIL" },
        scan.min_forward_diff,
        scan.derivative_min
    );
    let report = match args.format {
        Format::Csv => {
            let mut out = String::from("t,value,log_deriv\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{}", r.t, r.value, r.log_deriv);
            }
            out
        }
        Format::Json => to_json(&Report {
            config: sweep.config("scan"),
            rows: &rows,
            summary: ScanSummary {
                function: sweep.aux.kind().name(),
                // A one-point grid has no forward difference.
                min_forward_diff: Some(scan.min_forward_diff).filter(|d| d.is_finite()),
                derivative_min: scan.derivative_min,
                pass,
            },
        })?,
    };
    sweep.emit(report, line)?;
    Ok(pass)
}

fn cmd_selftest(args: &SelftestArgs) -> CliResult<bool> {
    let mut constants = Constants::default();
    if let Some(g) = args.euler_gamma {
        if !g.is_finite() {
            return Err(CliError::Usage("--euler-gamma must be finite".into()));
        }
        constants.euler_gamma = g;
    }
    let report = selftest::run(&SelftestOptions {
        quick: args.quick,
        seed: args.seed,
        constants,
    });
    for s in &report.suites {
        println!("{:<12} {}/{}", s.name, s.passed, s.total);
        for f in s.failures.iter().take(10) {
            println!("  failed: {f}");
        }
        if s.failures.len() > 10 {
            println!("  … and {} more", s.failures.len() - 10);
        }
    }
    if report.all_passed() {
        println!("PASS");
        Ok(true)
    } else {
        println!("FAIL: {}", report.failing_suites().join(", "));
        Ok(false)
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    match &cli.command {
        Command::Eval(args) => {
            println!("{}", cmd_eval(args)?);
            Ok(true)
        }
        Command::Verify(args) => cmd_verify(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Selftest(args) => cmd_selftest(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
