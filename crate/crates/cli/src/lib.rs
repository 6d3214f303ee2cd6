//! Command-line front end for `braidsim`.
//!
//! A run reads one JSON configuration (see `docs/config.md`), executes the
//! named command, and writes `result.json` plus any CSV series to the output
//! directory. Exit codes: 0 success, 2 configuration error, 3 numerical
//! failure, 4 I/O error.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use braidsim::anyon::{AnyonModel, BuiltinModel};
use clap::Parser;
use serde::Serialize;
use serde_json::Value;

pub use config::{Command, Params, RunConfig};
pub use error::CliError;
pub use output::fit_slope;

#[derive(Debug, Parser)]
#[command(name = "braidsim", version, about = "Simulate anyon braiding by adiabatic coupling control")]
pub struct Cli {
    /// Run configuration (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory. Overrides the `output` field of the configuration;
    /// defaults to `./out`.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Do not print the summary line.
    #[arg(long)]
    pub quiet: bool,
    /// Write `null` for `wall_time_s` so that repeated runs produce
    /// byte-identical `result.json` files.
    #[arg(long)]
    pub no_wall_time: bool,
}

/// Contents of `result.json`.
#[derive(Serialize)]
pub struct RunResult<'a> {
    pub command: &'static str,
    pub config: &'a RunConfig,
    pub result: Value,
    pub wall_time_s: Option<f64>,
    pub version: &'static str,
}

/// Result of a completed run.
#[derive(Debug)]
pub struct Report {
    pub summary: String,
    pub result_path: PathBuf,
}

/// Loads `model`: a built-in name, or a model file path relative to `base`.
pub fn load_model(model: &str, base: &Path) -> Result<AnyonModel<f64>, CliError> {
    if let Some(which) = BuiltinModel::from_name(model) {
        return Ok(AnyonModel::builtin(which));
    }
    let path = base.join(model);
    let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    AnyonModel::from_json_str(&text).map_err(|e| CliError::config(&format!("model ({})", path.display()), e))
}

/// Parses the configuration at `cli.config` and runs it.
pub fn run_cli(cli: &Cli) -> Result<Report, CliError> {
    let text = fs::read_to_string(&cli.config).map_err(|e| CliError::io(&cli.config, e))?;
    let cfg = RunConfig::from_json_str(&text)?;
    let base = cli.config.parent().unwrap_or(Path::new("."));
    let out = cli
        .output
        .clone()
        .or_else(|| cfg.output.as_ref().map(|o| base.join(o)))
        .unwrap_or_else(|| PathBuf::from("out"));
    run(&cfg, base, &out, !cli.no_wall_time)
}

/// Executes `cfg`, resolving model paths against `base` and writing into
/// `out`. `result.json` is written whenever the command gets far enough to
/// report a result, including a failed consistency check.
pub fn run(cfg: &RunConfig, base: &Path, out: &Path, record_wall_time: bool) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut model = load_model(&cfg.model, base)?;
    if let Some(seed) = cfg.seed {
        model = model.random_regauge(seed);
    }
    if cfg.command != Command::VerifyModel {
        let report = model.verify(1e-9).map_err(|e| CliError::library("model", e))?;
        if !report.passed() {
            let detail = report
                .failures()
                .map(|c| format!("{} residual {:.3e}", c.name, c.max_residual))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(CliError::Numerical {
                name: "ConsistencyCheck",
                message: format!("model {} is inconsistent: {detail}", model.name()),
            });
        }
    }

    let outcome = match &cfg.params {
        Params::VerifyModel(p) => commands::verify_model(&model, p),
        Params::Spectrum(p) => commands::spectrum(model, p, out),
        Params::Braid(p) => commands::braid(model, p, out),
        Params::SweepTime(p) => commands::sweep_time(model, p, out),
        Params::ChainScaling(p) => commands::chain_scaling(model, p, out),
        Params::ChainBraid(p) => commands::chain_braid(model, p, out),
    }?;

    let record = RunResult {
        command: cfg.command.name(),
        config: cfg,
        result: outcome.result,
        wall_time_s: record_wall_time.then(|| start.elapsed().as_secs_f64()),
        version: braidsim::VERSION,
    };
    let mut json = serde_json::to_string_pretty(&record).expect("result serializes");
    json.push('\n');
    let result_path = output::write_atomic(out, "result.json", json.as_bytes())?;
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(Report {
            summary: outcome.summary,
            result_path,
        }),
    }
}
