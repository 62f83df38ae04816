//! `dualkern`: runs the verification suite, or reports operator-norm bounds
//! for a kernel file when `--kernel` is given.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 invalid
//! input or configuration.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, ValueEnum};

use dualkern::io::{load_kernel, norm_spec_arg};
use dualkern::suite::{run_bounds, run_suite, BoundsConfig, Report, SuiteConfig, Tolerances};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "dualkern", version, about = "Checks dual norms and kernel operator bounds on random instances")]
struct Cli {
    /// Kernel file (JSON rows or CSV); switches to the bounds report.
    #[arg(long, value_name = "PATH")]
    kernel: Option<PathBuf>,

    /// Extra norm for the suite, as a JSON file or inline JSON. Repeatable.
    #[arg(long, value_name = "PATH|JSON", conflicts_with = "kernel")]
    norm: Vec<String>,

    /// Comma-separated exponents in (1, inf).
    #[arg(long = "p", value_name = "LIST", value_delimiter = ',')]
    p: Option<Vec<f64>>,

    /// Suite trials, or random h per exponent for the bounds report.
    #[arg(long, value_name = "N", default_value_t = 100)]
    trials: usize,

    #[arg(long, value_name = "N", env = "DUALKERN_SEED", default_value_t = 1)]
    seed: u64,

    /// Comma-separated dimensions of V and sizes of E for the suite.
    #[arg(long, value_name = "LIST", value_delimiter = ',', conflicts_with = "kernel")]
    dims: Option<Vec<usize>>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Omit the timestamp so identical configs give identical output.
    #[arg(long)]
    reproducible: bool,

    /// Also inject known faults and require that each is detected.
    #[arg(long, conflicts_with = "kernel")]
    self_test: bool,

    /// Relative tolerance for exact checks.
    #[arg(long, value_name = "X", conflicts_with = "kernel")]
    tol_exact: Option<f64>,

    /// Relative tolerance for sampled checks.
    #[arg(long, value_name = "X", conflicts_with = "kernel")]
    tol_sampled: Option<f64>,
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    if let Some(path) = &cli.kernel {
        let kernel = load_kernel(path).with_context(|| format!("reading kernel {}", path.display()))?;
        let cfg = BoundsConfig {
            seed: cli.seed,
            p_list: cli.p.clone().unwrap_or_else(|| vec![2.0]),
            trials: cli.trials,
            ..BoundsConfig::default()
        };
        return Ok(run_bounds(&kernel, &cfg)?);
    }
    if cli.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let defaults = SuiteConfig::default();
    let norms = cli
        .norm
        .iter()
        .map(|arg| norm_spec_arg(arg).with_context(|| format!("reading norm {arg}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let cfg = SuiteConfig {
        seed: cli.seed,
        trials: cli.trials,
        p_list: cli.p.clone().unwrap_or(defaults.p_list.clone()),
        dims: cli.dims.clone().unwrap_or(defaults.dims.clone()),
        norms,
        self_test: cli.self_test,
        tolerances: Tolerances {
            exact: cli.tol_exact.unwrap_or(defaults.tolerances.exact),
            sampled: cli.tol_sampled.unwrap_or(defaults.tolerances.sampled),
        },
        ..defaults
    };
    Ok(run_suite(&cfg)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if !cli.reproducible {
        report.stamp();
    }
    let body = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(body.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
