//! The `bridgestate` command line: per-knot listings and reports, property
//! verification and census sweeps.
//!
//! Exit codes: 0 on success, 1 when a mathematical consistency check fails,
//! 2 for invalid input or I/O errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use bridgestate::verify::{verify_knot, PropertyFailure, VerifyConfig, VerifySummary};
use bridgestate::{full_report, Error, InvariantReport, TwoBridgeKnot};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

pub mod model;
pub mod render;

use model::{KnotRecord, CENSUS_HEADER, SURFACES_HEADER};

/// Environment variable that overrides the cofactor-oracle size bound.
pub const ORACLE_ENV: &str = "BRIDGESTATE_ORACLE_MAX_K";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bridgestate", version, about = "Exact state invariants of 2-bridge knots K(alpha, beta)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Format {
    /// Emit JSON.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the essential spanning surfaces of K(alpha, beta).
    Surfaces {
        alpha: i64,
        #[arg(allow_negative_numbers = true)]
        beta: i64,
        #[command(flatten)]
        format: Format,
    },
    /// Full invariant report for K(alpha, beta).
    Invariants {
        alpha: i64,
        #[arg(allow_negative_numbers = true)]
        beta: i64,
        #[command(flatten)]
        format: Format,
    },
    /// Check every identity on one knot, or on all knots up to --max-alpha.
    Verify {
        #[arg(required_unless_present = "max_alpha", conflicts_with = "max_alpha", requires = "beta")]
        alpha: Option<i64>,
        #[arg(allow_negative_numbers = true)]
        beta: Option<i64>,
        #[arg(long)]
        max_alpha: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Invariants of every knot with alpha <= --max-alpha.
    Census {
        #[arg(long)]
        max_alpha: u64,
        /// Knot-level output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-surface CSV companion file.
        #[arg(long)]
        out_surfaces: Option<PathBuf>,
        #[command(flatten)]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) => EXIT_INVALID,
            Error::Consistency { .. } | Error::OracleBound { .. } => EXIT_INCONSISTENT,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<PropertyFailure> for Failure {
    fn from(f: PropertyFailure) -> Self {
        Failure { code: EXIT_INCONSISTENT, message: format!("FAIL {f}") }
    }
}

fn io_failure(what: &str, e: std::io::Error) -> Failure {
    Failure { code: EXIT_INVALID, message: format!("{what}: {e}") }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Failure { code: EXIT_INVALID, message: "--jobs must be at least 1".into() });
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| Failure { code: EXIT_INVALID, message: format!("thread pool: {e}") })
}

/// Full reports for every knot with `α ≤ max_alpha`, in `(α, β)` order.
/// The result does not depend on `jobs`.
pub fn census_reports(max_alpha: u64, jobs: Option<usize>) -> Result<Vec<InvariantReport>, Failure> {
    if max_alpha < 3 {
        return Err(Failure { code: EXIT_INVALID, message: format!("--max-alpha must be at least 3 (got {max_alpha})") });
    }
    let knots = TwoBridgeKnot::census(max_alpha);
    let results: Vec<_> = pool(jobs)?.install(|| knots.par_iter().map(full_report).collect());
    results.into_iter().map(|r| r.map_err(Failure::from)).collect()
}

/// Oracle bound from the environment, defaulting to 8.
pub fn oracle_bound_from_env() -> Result<usize, Failure> {
    match std::env::var(ORACLE_ENV) {
        Err(_) => Ok(bridgestate::invariants::DEFAULT_ORACLE_MAX_K),
        Ok(v) => v.trim().parse().map_err(|_| Failure {
            code: EXIT_INVALID,
            message: format!("{ORACLE_ENV} must be a nonnegative integer (got {v:?})"),
        }),
    }
}

/// Verifies the given knots, reporting the first failure in knot order.
pub fn verify_knots(knots: &[TwoBridgeKnot], cfg: &VerifyConfig, jobs: Option<usize>) -> Result<VerifySummary, Failure> {
    let results: Vec<_> = pool(jobs)?.install(|| knots.par_iter().map(|k| verify_knot(k, cfg)).collect());
    let mut total = VerifySummary::default();
    for r in results {
        total = total.merge(r?);
    }
    Ok(total)
}

fn write_census(reports: &[InvariantReport], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    let records: Vec<KnotRecord> = reports.iter().map(KnotRecord::from).collect();
    if format.json {
        serde_json::to_writer_pretty(&mut *out, &records)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{CENSUS_HEADER}")?;
        for r in &records {
            writeln!(out, "{}", r.csv_row())?;
        }
    }
    out.flush()
}

fn write_surfaces_companion(reports: &[InvariantReport], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{SURFACES_HEADER}")?;
    for r in reports {
        for row in KnotRecord::from(r).surface_rows() {
            writeln!(out, "{row}")?;
        }
    }
    out.flush()
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| io_failure(&format!("cannot write {}", path.display()), e))
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let w = |e| io_failure("write failed", e);
    match cmd {
        Command::Surfaces { alpha, beta, format } => {
            let knot = TwoBridgeKnot::new(alpha, beta)?;
            let surfaces = knot.surfaces();
            let text = if format.json {
                render::surfaces_json(&surfaces)
            } else if format.csv {
                render::surfaces_csv(&knot, &surfaces)
            } else {
                render::surfaces_table(&knot, &surfaces)
            };
            out.write_all(text.as_bytes()).map_err(w)
        }
        Command::Invariants { alpha, beta, format } => {
            let knot = TwoBridgeKnot::new(alpha, beta)?;
            let report = full_report(&knot)?;
            let text = if format.json {
                render::report_json(&KnotRecord::from(&report))
            } else if format.csv {
                render::report_csv(&KnotRecord::from(&report))
            } else {
                render::report_table(&report)
            };
            out.write_all(text.as_bytes()).map_err(w)
        }
        Command::Verify { alpha, beta, max_alpha, jobs } => {
            let cfg = VerifyConfig { oracle_max_k: oracle_bound_from_env()?, ..VerifyConfig::default() };
            let knots = match (alpha, beta, max_alpha) {
                (Some(a), Some(b), _) => vec![TwoBridgeKnot::new(a, b)?],
                (_, _, Some(m)) if m >= 3 => TwoBridgeKnot::census(m),
                (_, _, Some(m)) => {
                    return Err(Failure { code: EXIT_INVALID, message: format!("--max-alpha must be at least 3 (got {m})") })
                }
                _ => unreachable!("clap enforces alpha/beta or --max-alpha"),
            };
            let summary = verify_knots(&knots, &cfg, jobs)?;
            writeln!(out, "PASS {summary}").map_err(w)
        }
        Command::Census { max_alpha, out: path, out_surfaces, format, jobs } => {
            let reports = census_reports(max_alpha, jobs)?;
            match &path {
                Some(p) => write_census(&reports, format, &mut create(p)?).map_err(w)?,
                None => write_census(&reports, format, out).map_err(w)?,
            }
            if let Some(p) = &out_surfaces {
                write_surfaces_companion(&reports, &mut create(p)?).map_err(w)?;
            }
            let surfaces: usize = reports.iter().map(|r| r.surfaces.len()).sum();
            writeln!(err, "census: {} knots, {surfaces} surfaces, alpha <= {max_alpha}", reports.len()).map_err(w)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
