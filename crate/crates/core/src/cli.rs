//! Command-line front end: `eval`, `verify`, `sharpness` and `plotdata`.
//!
//! Tables go to standard output (or `--output PATH`) as CSV with a header
//! row, or as JSON with the same field names. Floating-point fields are
//! written as shortest round-trip decimals.
//!
//! Exit codes: 0 when every check passed, 1 when a verification failed,
//! 2 on usage or domain errors.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    f_chain, find_f1_root, find_f2_root, plot_grid, scan_sharpness, verify_inequality_with,
    InequalityId, SharpConstants, BISECTION_XTOL, STRICTNESS_BAND,
};
use crate::error::Error;
use crate::means::{MeanKind, PositivePair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Open interval sampled by `plotdata`.
const PLOT_RANGE: (f64, f64) = (1e-6, 1.0 - 1e-6);

#[derive(Debug, Parser)]
#[command(
    name = "toader",
    version,
    about = "Toader-mean bounds: elliptic integrals, means, and sharp-constant verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one mean, e.g. `eval power:1.5 2 1`.
    Eval {
        /// toader | centroidal | contraharmonic | power:P | convex_centroidal:X
        mean: MeanKind,
        #[arg(allow_negative_numbers = true)]
        a: f64,
        #[arg(allow_negative_numbers = true)]
        b: f64,
    },
    /// Sample inequalities on seeded random pairs and report violations.
    Verify {
        /// Comma-separated inequality ids; all six when omitted.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<InequalityId>,
        /// Relative strictness band.
        #[arg(long, default_value_t = STRICTNESS_BAND)]
        band: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Solve J(x*) = T over a log-symmetric grid of ratios.
    Sharpness {
        /// Bisection tolerance on x*.
        #[arg(long, default_value_t = BISECTION_XTOL)]
        tol: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Tabulate f, f1, f2 for one weight p, with r0/r1 marker rows.
    Plotdata {
        #[arg(long = "p")]
        p: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long = "grid-points", default_value_t = 200)]
    pub grid_points: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Eval,
    Verify,
    Sharpness,
    Plotdata,
}

/// Resolved settings for one table-producing run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub samples: usize,
    pub seed: u64,
    pub grid_points: usize,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub band: f64,
    pub tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: CommandKind::Verify,
            samples: 100_000,
            seed: 42,
            grid_points: 200,
            output_format: OutputFormat::Csv,
            output_path: None,
            band: STRICTNESS_BAND,
            tol: BISECTION_XTOL,
        }
    }
}

impl RunConfig {
    fn from_common(command: CommandKind, common: &CommonArgs) -> Self {
        RunConfig {
            command,
            samples: common.samples,
            seed: common.seed,
            grid_points: common.grid_points,
            output_format: common.format,
            output_path: common.output.clone(),
            ..RunConfig::default()
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Parses `args` (program name first) and runs the command. Tables go to
/// `out` unless `--output` is given; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Eval { mean, a, b } => {
            let value = cmd_eval(mean, a, b)?;
            writeln!(out, "{}", format_value(value))?;
            Ok(EXIT_OK)
        }
        Command::Verify { ids, band, common } => {
            let mut config = RunConfig::from_common(CommandKind::Verify, &common);
            config.band = band;
            if band < f64::EPSILON {
                writeln!(
                    err,
                    "warning: band {band:e} is below binary64 resolution; ties will be reported as violations"
                )?;
            }
            let ids = if ids.is_empty() {
                InequalityId::ALL.to_vec()
            } else {
                ids
            };
            with_sink(&config, out, |sink| cmd_verify(&config, &ids, sink))
        }
        Command::Sharpness { tol, common } => {
            let mut config = RunConfig::from_common(CommandKind::Sharpness, &common);
            config.tol = tol;
            if tol < 0.5 * f64::EPSILON {
                writeln!(
                    err,
                    "warning: tol {tol:e} is below the spacing of binary64 on [1/2, 1]; bisection will stop at the iteration cap"
                )?;
            }
            with_sink(&config, out, |sink| cmd_sharpness(&config, sink))
        }
        Command::Plotdata { p, common } => {
            let config = RunConfig::from_common(CommandKind::Plotdata, &common);
            with_sink(&config, out, |sink| cmd_plotdata(&config, p, sink))
        }
    }
}

fn with_sink<F>(config: &RunConfig, out: &mut dyn Write, body: F) -> Result<i32, CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<i32, CliError>,
{
    match &config.output_path {
        Some(path) => {
            let mut file = io::BufWriter::new(File::create(path)?);
            let code = body(&mut file)?;
            file.flush()?;
            Ok(code)
        }
        None => body(out),
    }
}

/// Shortest round-trip decimal, switching to exponent notation outside
/// `[1e-5, 1e16)`.
pub fn format_value(x: f64) -> String {
    let magnitude = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&magnitude) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn cmd_eval(mean: MeanKind, a: f64, b: f64) -> Result<f64, CliError> {
    let pair = PositivePair::new(a, b)?;
    Ok(mean.evaluate(pair)?)
}

#[derive(Debug, Serialize)]
struct VerifyRow {
    id: &'static str,
    samples: usize,
    violations: usize,
    inconclusive: usize,
    min_margin: f64,
    worst_a: f64,
    worst_b: f64,
}

fn cmd_verify(
    config: &RunConfig,
    ids: &[InequalityId],
    sink: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut rows = Vec::with_capacity(ids.len());
    for &id in ids {
        let report = verify_inequality_with(id, config.samples, config.seed, config.band)?;
        rows.push(VerifyRow {
            id: id.as_str(),
            samples: report.samples,
            violations: report.violations,
            inconclusive: report.inconclusive,
            min_margin: report.min_margin,
            worst_a: report.worst_pair.a(),
            worst_b: report.worst_pair.b(),
        });
    }
    match config.output_format {
        OutputFormat::Csv => write_csv(sink, &rows)?,
        OutputFormat::Json => write_json(sink, &rows)?,
    }
    let failed = rows.iter().any(|r| r.violations > 0);
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

#[derive(Debug, Serialize)]
struct SharpnessRow {
    t: f64,
    x_star: f64,
    iterations: usize,
    residual: f64,
}

#[derive(Debug, Serialize)]
struct SharpnessSummary {
    min_x_star: f64,
    max_x_star: f64,
    lambda: f64,
    mu: f64,
    clamped: usize,
}

#[derive(Debug, Serialize)]
struct SharpnessDoc<'a> {
    records: &'a [SharpnessRow],
    summary: &'a SharpnessSummary,
}

fn cmd_sharpness(config: &RunConfig, sink: &mut dyn Write) -> Result<i32, CliError> {
    if config.grid_points < 2 {
        return Err(CliError::Usage(format!(
            "--grid-points must be at least 2, got {}",
            config.grid_points
        )));
    }
    let scan = scan_sharpness(config.grid_points, config.tol)?;
    let constants = SharpConstants::get();
    let rows: Vec<SharpnessRow> = scan
        .records
        .iter()
        .map(|r| SharpnessRow {
            t: r.t,
            x_star: r.x_star,
            iterations: r.iterations,
            residual: r.residual,
        })
        .collect();
    let summary = SharpnessSummary {
        min_x_star: scan.min_x_star,
        max_x_star: scan.max_x_star,
        lambda: constants.lambda,
        mu: constants.mu,
        clamped: scan.clamped,
    };
    match config.output_format {
        OutputFormat::Csv => {
            write_csv(sink, &rows)?;
            write_csv(sink, std::slice::from_ref(&summary))?;
        }
        OutputFormat::Json => write_json(
            sink,
            &SharpnessDoc {
                records: &rows,
                summary: &summary,
            },
        )?,
    }
    Ok(if scan.clamped > 0 {
        EXIT_FAILED
    } else {
        EXIT_OK
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
enum PlotKind {
    Grid,
    R0,
    R1,
}

#[derive(Debug, Serialize)]
struct PlotRow {
    kind: PlotKind,
    r: f64,
    f: f64,
    f1: f64,
    f2: f64,
}

fn cmd_plotdata(config: &RunConfig, p: f64, sink: &mut dyn Write) -> Result<i32, CliError> {
    let (lo, hi) = PLOT_RANGE;
    let row = |kind: PlotKind, r: f64| -> Result<PlotRow, CliError> {
        let c = f_chain(r, p)?;
        Ok(PlotRow {
            kind,
            r,
            f: c.f,
            f1: c.f1,
            f2: c.f2,
        })
    };
    let mut rows = plot_grid(lo, hi, config.grid_points)
        .into_iter()
        .map(|r| row(PlotKind::Grid, r))
        .collect::<Result<Vec<_>, _>>()?;
    // Marker rows only where the corresponding sign change exists.
    if let Ok(r0) = find_f2_root(p) {
        rows.push(row(PlotKind::R0, r0)?);
    }
    if let Ok(r1) = find_f1_root(p) {
        rows.push(row(PlotKind::R1, r1)?);
    }
    match config.output_format {
        OutputFormat::Csv => write_csv(sink, &rows)?,
        OutputFormat::Json => write_json(sink, &rows)?,
    }
    Ok(EXIT_OK)
}

fn write_csv<S: Serialize>(sink: &mut dyn Write, rows: &[S]) -> Result<(), CliError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

fn write_json<S: Serialize + ?Sized>(sink: &mut dyn Write, doc: &S) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *sink, doc)?;
    writeln!(sink)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("toader").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn format_value_switches_notation() {
        assert_eq!(format_value(1.0), "1");
        assert_eq!(format_value(14.0 / 9.0), "1.5555555555555556");
        assert_eq!(format_value(1e-7), "1e-7");
        assert_eq!(format_value(2.5e20), "2.5e20");
    }

    #[test]
    fn eval_domain_error_is_usage() {
        let (code, out, err) = run_str(&["eval", "toader", "-1", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("positive"), "{err}");
    }

    #[test]
    fn sharpness_rejects_single_point() {
        let (code, _, err) = run_str(&["sharpness", "--grid-points", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("grid-points"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }

    #[test]
    fn tight_band_warns() {
        let (_, _, err) = run_str(&[
            "verify",
            "--ids",
            "main_lower",
            "--samples",
            "10",
            "--band",
            "0",
        ]);
        assert!(err.contains("warning"));
    }
}
