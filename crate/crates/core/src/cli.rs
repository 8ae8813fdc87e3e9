//! Batch front end: `fa`, `fb`, `branch-coeffs` and `verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 non-generic parameters
//! (after retries), 3 usage error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coefficients::branch_coefficient_table;
use crate::eigenfunctions::{f_a_direct, f_b_branching};
use crate::error::Error;
use crate::scalars::{format_rational, parse_rational, rational_string, ParamPoint, PointSampler, Rational};
use crate::series::TruncatedSeries;
use crate::verification::{run_suite, Check, Report, SuiteConfig, POINT_RETRIES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_NON_GENERIC: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Environment variable consulted for the default seed.
pub const SEED_ENV: &str = "QTODA_SEED";
const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "qtoda",
    version,
    about = "Exact q-Toda eigenfunctions and branching-formula checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Type A eigenfunction as series JSON.
    Fa(CommonArgs),
    /// Type B eigenfunction (branching formula) as series JSON.
    Fb(CommonArgs),
    /// Branching coefficients with weighted degree up to the order.
    BranchCoeffs(CommonArgs),
    /// Run the identity checks at several generic points.
    Verify(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    order: u32,
    /// Rational "num/den" or "random".
    #[arg(long, default_value = "random", allow_hyphen_values = true)]
    q: String,
    /// Comma-separated rationals or "random".
    #[arg(long, default_value = "random", allow_hyphen_values = true)]
    s: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 3)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Comma-separated subset of checks for `verify`.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Fa,
    Fb,
    BranchCoeffs,
    Verify,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub order: u32,
    /// `None` means draw at random.
    pub q: Option<Rational>,
    pub s: Option<Vec<Rational>>,
    pub seed: u64,
    pub points: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub checks: Vec<Check>,
}

/// Parse failure; `code` is 0 for `--help`/`--version`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> UsageError {
    UsageError {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl RunConfig {
    /// Parses command-line arguments (including the program name).
    pub fn parse_from<I, T>(args: I) -> Result<RunConfig, UsageError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| UsageError {
            code: if e.use_stderr() { EXIT_USAGE } else { EXIT_OK },
            message: e.to_string(),
        })?;
        let (command, a) = match cli.command {
            Cmd::Fa(a) => (Command::Fa, a),
            Cmd::Fb(a) => (Command::Fb, a),
            Cmd::BranchCoeffs(a) => (Command::BranchCoeffs, a),
            Cmd::Verify(a) => (Command::Verify, a),
        };
        if a.n == 0 {
            return Err(usage("--n must be at least 1"));
        }
        if a.points == 0 {
            return Err(usage("--points must be at least 1"));
        }
        let q = match a.q.trim() {
            "random" => None,
            text => Some(parse_rational(text).map_err(|e| usage(e.to_string()))?),
        };
        let s = match a.s.trim() {
            "random" => None,
            text => {
                let v = text
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| usage(e.to_string()))?;
                if v.len() != a.n {
                    return Err(usage(format!("--s has {} entries but --n is {}", v.len(), a.n)));
                }
                Some(v)
            }
        };
        let checks = if a.checks.is_empty() {
            Check::ALL.to_vec()
        } else {
            a.checks
                .iter()
                .map(|name| Check::from_name(name.trim()).ok_or_else(|| usage(format!("unknown check {name:?}"))))
                .collect::<Result<_, _>>()?
        };
        let seed = match a.seed {
            Some(s) => s,
            None => match std::env::var(SEED_ENV) {
                Ok(v) => v
                    .parse()
                    .map_err(|_| usage(format!("{SEED_ENV}={v:?} is not a 64-bit integer")))?,
                Err(_) => DEFAULT_SEED,
            },
        };
        Ok(RunConfig {
            command,
            n: a.n,
            order: a.order,
            q,
            s,
            seed,
            points: a.points,
            format: a.format,
            output: a.output,
            checks,
        })
    }
}

/// Result of [`run`]: the artifact to emit and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub output: String,
    /// Diagnostic for standard error.
    pub message: Option<String>,
}

fn failure_outcome(err: Error) -> RunOutcome {
    let code = match err {
        Error::NonGeneric(_) | Error::VanishingDenominator(_) | Error::CertificateTooWeak { .. } => EXIT_NON_GENERIC,
        _ => EXIT_USAGE,
    };
    RunOutcome {
        exit_code: code,
        output: String::new(),
        message: Some(err.to_string()),
    }
}

fn point_for(cfg: &RunConfig) -> Result<ParamPoint, Error> {
    PointSampler::new(cfg.seed).complete_point(cfg.n, cfg.q.as_ref(), cfg.s.as_deref(), cfg.order, POINT_RETRIES)
}

/// Executes a parsed configuration; never touches the filesystem.
pub fn run(cfg: &RunConfig) -> RunOutcome {
    match run_inner(cfg) {
        Ok(o) => o,
        Err(e) => failure_outcome(e),
    }
}

fn run_inner(cfg: &RunConfig) -> Result<RunOutcome, Error> {
    let ok = |output: String| RunOutcome {
        exit_code: EXIT_OK,
        output,
        message: None,
    };
    match cfg.command {
        Command::Fa | Command::Fb => {
            let p = point_for(cfg)?;
            let f = if cfg.command == Command::Fa {
                f_a_direct(&p, cfg.order)?
            } else {
                f_b_branching(&p, cfg.order)?
            };
            Ok(ok(render_series(&f, cfg.format)))
        }
        Command::BranchCoeffs => {
            let p = point_for(cfg)?;
            let rows: Vec<CoefficientRow> = branch_coefficient_table(&p, cfg.order)?
                .into_iter()
                .map(|(t, e)| CoefficientRow {
                    theta: t.0,
                    coefficient: e,
                })
                .collect();
            Ok(ok(render_rows(&rows, cfg.format)))
        }
        Command::Verify => {
            let suite = SuiteConfig {
                n: cfg.n,
                order: cfg.order,
                points: cfg.points,
                seed: cfg.seed,
                checks: cfg.checks.clone(),
                q: cfg.q.clone(),
                s: cfg.s.clone(),
            };
            let reports = run_suite(&suite)?;
            let failed = reports.iter().filter(|r| !r.pass).count();
            Ok(RunOutcome {
                exit_code: if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED },
                output: render_reports(&reports, cfg.format),
                message: (failed > 0).then(|| format!("{failed} of {} checks failed", reports.len())),
            })
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct CoefficientRow {
    theta: Vec<u32>,
    #[serde(with = "rational_string")]
    coefficient: Rational,
}

fn join_ints<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn csv_string(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

fn json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Series as JSON, or CSV rows `exponent,coefficient` with space-separated exponents.
pub fn render_series(f: &TruncatedSeries, format: Format) -> String {
    match format {
        Format::Json => json_string(&f.to_json()),
        Format::Csv => csv_string(
            &["exponent", "coefficient"],
            f.iter()
                .map(|(m, c)| vec![join_ints(m.exponents()), format_rational(c)]),
        ),
    }
}

fn render_rows(rows: &[CoefficientRow], format: Format) -> String {
    match format {
        Format::Json => json_string(rows),
        Format::Csv => csv_string(
            &["theta", "coefficient"],
            rows.iter()
                .map(|r| vec![join_ints(&r.theta), format_rational(&r.coefficient)]),
        ),
    }
}

pub fn render_reports(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => json_string(reports),
        Format::Csv => csv_string(
            &["check", "n", "order", "seed", "pass", "first_failure", "trusted_degree"],
            reports.iter().map(|r| {
                let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
                vec![
                    r.check.clone(),
                    r.n.to_string(),
                    opt(r.order.map(u64::from)),
                    opt(r.seed),
                    r.pass.to_string(),
                    r.first_failure
                        .as_ref()
                        .map(|f| format!("{} {}", f.kind, join_ints(&f.index)))
                        .unwrap_or_default(),
                    opt(r.trusted_degree.map(u64::from)),
                ]
            }),
        ),
    }
}
