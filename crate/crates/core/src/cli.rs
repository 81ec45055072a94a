//! Command-line front end.
//!
//! Exit codes: `0` success, `1` invalid configuration, `2` unreadable or
//! malformed input sequence, `3` D1 violation certified against `--threshold`,
//! `4` an envelope bound failed to verify.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::d1::{d1_constant_estimate, d1_scan, d1_violation_scan, ideal_check, IdealReport};
use crate::error::Error;
use crate::optimize::{
    verify_c_bound, verify_d_bound, BoundCheckResult, Interval, BOUNDS_CSV_HEADER, DEFAULT_GRID,
};
use crate::report::fmt_float;
use crate::sampling::DEFAULT_SEED;
use crate::sequence::{a_norm, spectral_invariance_check, sup_norm, AlgebraParams, BlockSequence, SpectralReport};
use crate::weights::WeightFamily;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_BOUND_FAILED: i32 = 4;

/// Environment variable supplying the default `--seed`.
pub const SEED_ENV: &str = "BANACH_SEQ_SEED";

#[derive(Debug, Parser)]
#[command(name = "banach-seq", version, about = "Weighted Banach sequence algebras in c0: norms, bounds and D1 diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, clap::Args)]
pub struct AlgebraArgs {
    #[arg(long = "r", allow_negative_numbers = true)]
    pub r: f64,
    /// affine[:a,b] | log | poly:<p> | const:<c>
    #[arg(long, default_value = "affine")]
    pub weights: String,
}

#[derive(Debug, clap::Args)]
pub struct SeedArg {
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sup-norm and algebra norm of a sequence file.
    Norms {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Sequence in `{"blocks": {...}}` JSON form.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Witness scan of D1 lower bounds for n = 0..N-1.
    #[command(name = "d1-scan")]
    D1Scan {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long = "n", default_value_t = 100)]
        n: usize,
        /// Certify non-D1: exit 3 if some lower bound reaches this value.
        #[arg(long)]
        threshold: Option<f64>,
        /// Also attach a sampled D1 estimate with this many random pairs (JSON only).
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        output: Output,
    },
    /// Verify the envelope bounds on D and C/sigma.
    Bounds {
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Comma-separated sigma values for the C bound.
        #[arg(long, default_value = "1,2,5,10,50,100")]
        sigmas: String,
        #[arg(long, default_value_t = -50.0, allow_negative_numbers = true)]
        r_min: f64,
        #[arg(long, default_value_t = 50.0, allow_negative_numbers = true)]
        r_max: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Quasi-inverse of a sequence file and the spectral invariance check.
    Qinv {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Sampled ideal constant plus the deterministic (1,1)/(1,0) witness.
    #[command(name = "ideal-check")]
    IdealCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Largest block index sampled; also the witness block.
        #[arg(long = "n", default_value_t = 19)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        output: Output,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn config(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: e.to_string(),
        }
    }

    fn parse(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::config(e)
    }
}

/// Parses `args` (program name first) and runs the selected subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn algebra_params(a: &AlgebraArgs) -> Result<AlgebraParams, Failure> {
    let weights: WeightFamily = a.weights.parse()?;
    Ok(AlgebraParams::new(a.r, weights)?)
}

fn read_sequence(path: &PathBuf) -> Result<BlockSequence, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    BlockSequence::from_json(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn emit(output: &Output, body: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| Failure::config(format!("cannot write to stdout: {e}"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct NormsReport {
    r: f64,
    weights: WeightFamily,
    sup_norm: f64,
    a_norm: f64,
}

#[derive(Serialize)]
struct QinvReport {
    finding: String,
    #[serde(flatten)]
    report: SpectralReport,
}

#[derive(Serialize)]
struct BoundsReport<'a> {
    d_bound: &'a BoundCheckResult,
    c_bound: &'a BoundCheckResult,
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Norms { algebra, input, output } => {
            let p = algebra_params(&algebra)?;
            let f = read_sequence(&input)?;
            let report = NormsReport {
                r: p.r(),
                weights: p.weights(),
                sup_norm: sup_norm(&f),
                a_norm: a_norm(&f, &p),
            };
            let body = match output.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report),
                Format::Csv => format!(
                    "sup_norm,a_norm\n{},{}\n",
                    fmt_float(report.sup_norm),
                    fmt_float(report.a_norm)
                ),
            };
            emit(&output, &body, stdout)?;
            Ok(EXIT_OK)
        }
        Command::D1Scan {
            algebra,
            n,
            threshold,
            samples,
            seed,
            output,
        } => {
            let p = algebra_params(&algebra)?;
            if let Some(k) = threshold {
                if !(k.is_finite() && k > 0.0) {
                    return Err(Failure::config(format!("threshold must be positive, got {k}")));
                }
            }
            let mut report = if threshold.is_some() {
                d1_violation_scan(p.r(), &p.weights(), n)?
            } else {
                d1_scan(p.r(), &p.weights(), n)?
            };
            if let Some(s) = samples {
                report.estimate = Some(d1_constant_estimate(p.r(), &p.weights(), s, n - 1, seed.seed)?);
            }
            let body = match output.format.unwrap_or(Format::Csv) {
                Format::Csv => report.to_csv(),
                Format::Json => to_json(&report),
            };
            emit(&output, &body, stdout)?;
            let certified = threshold.is_some_and(|k| report.first_crossing(k).is_some());
            Ok(if certified { EXIT_VIOLATION } else { EXIT_OK })
        }
        Command::Bounds {
            grid,
            sigmas,
            r_min,
            r_max,
            output,
        } => {
            let sigma_grid = sigmas
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::config(format!("bad --sigmas `{sigmas}`: {e}")))?;
            let bracket = Interval::new(r_min, r_max)?;
            let d = verify_d_bound(bracket, grid)?;
            let c = verify_c_bound(bracket, grid, &sigma_grid)?;
            let body = match output.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&BoundsReport { d_bound: &d, c_bound: &c }),
                Format::Csv => format!("{BOUNDS_CSV_HEADER}\n{}\n{}\n", d.csv_row(), c.csv_row()),
            };
            emit(&output, &body, stdout)?;
            Ok(if d.satisfied && c.satisfied {
                EXIT_OK
            } else {
                EXIT_BOUND_FAILED
            })
        }
        Command::Qinv { algebra, input, output } => {
            let p = algebra_params(&algebra)?;
            let a = read_sequence(&input)?;
            let report = spectral_invariance_check(&a, &p);
            let finding = match &report.obstruction {
                None => "quasi-invertible in c0 and in A".to_owned(),
                Some(e) => format!("not quasi-invertible, coordinate {} ({e})", e.index()),
            };
            let body = match output.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&QinvReport { finding, report }),
                Format::Csv => {
                    let opt = |x: Option<f64>| x.map(fmt_float).unwrap_or_default();
                    format!(
                        "quasi_invertible_c0,quasi_invertible_a,obstruction_index,inverse_sup_norm,inverse_a_norm,residual\n{},{},{},{},{},{}\n",
                        report.quasi_invertible_in_c0,
                        report.quasi_invertible_in_a,
                        report.obstruction.map(|e| e.index().to_string()).unwrap_or_default(),
                        opt(report.inverse_sup_norm),
                        opt(report.inverse_a_norm),
                        opt(report.residual),
                    )
                }
            };
            emit(&output, &body, stdout)?;
            Ok(EXIT_OK)
        }
        Command::IdealCheck {
            algebra,
            n,
            samples,
            seed,
            output,
        } => {
            let p = algebra_params(&algebra)?;
            let report = ideal_check(p.r(), &p.weights(), samples, n, seed.seed)?;
            let body = match output.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report),
                Format::Csv => ideal_csv(&report),
            };
            emit(&output, &body, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

fn ideal_csv(rep: &IdealReport) -> String {
    format!(
        "r,weights,max_ratio,sample_count,skipped,seed,witness_n,witness_sigma,witness_ratio\n{},\"{}\",{},{},{},{},{},{},{}\n",
        fmt_float(rep.r),
        rep.weights,
        fmt_float(rep.max_ratio),
        rep.sample_count,
        rep.skipped,
        rep.seed,
        rep.witness.n,
        fmt_float(rep.witness.sigma_n),
        fmt_float(rep.witness.ratio),
    )
}
