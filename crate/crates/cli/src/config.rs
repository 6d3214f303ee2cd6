//! Run configuration files. The schema is documented in `docs/config.md`.

use std::path::PathBuf;

use braidsim::adiabatic::Ramp;
use braidsim::{Chirality, Pair};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyModel,
    Spectrum,
    Braid,
    SweepTime,
    ChainScaling,
    ChainBraid,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyModel => "verify-model",
            Command::Spectrum => "spectrum",
            Command::Braid => "braid",
            Command::SweepTime => "sweep-time",
            Command::ChainScaling => "chain-scaling",
            Command::ChainBraid => "chain-braid",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    command: Command,
    model: String,
    #[serde(default)]
    params: Option<Value>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    output: Option<PathBuf>,
}

/// A validated run configuration. Serializes back to the resolved form,
/// with every parameter default filled in.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// Built-in model name or path to a model file.
    pub model: String,
    pub params: Params,
    /// When present, the model is put through a random gauge transformation
    /// drawn from this seed before anything else runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Params {
    VerifyModel(VerifyParams),
    Spectrum(SpectrumParams),
    Braid(BraidParams),
    SweepTime(SweepParams),
    ChainScaling(ChainScalingParams),
    ChainBraid(ChainBraidParams),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    WilsonLine,
    Evolution,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyParams {
    pub tolerance: f64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self { tolerance: 1e-12 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelCoupling {
    pub pair: Pair,
    pub channel: String,
    pub eps: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumParams {
    pub charge: Option<String>,
    pub favored: Option<String>,
    pub chirality: Chirality,
    /// Favoured-channel couplings in `[L, R, B]` order.
    pub eps: [f64; 3],
    /// Couplings to further channels.
    pub extra: Vec<ChannelCoupling>,
    pub rel_tol: f64,
    /// Grid resolution for a degeneracy profile over the three couplings.
    pub profile_grid: Option<usize>,
}

impl Default for SpectrumParams {
    fn default() -> Self {
        Self {
            charge: None,
            favored: None,
            chirality: Chirality::Plus,
            eps: [0.0, 0.0, 1.0],
            extra: Vec::new(),
            rel_tol: 1e-9,
            profile_grid: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BraidParams {
    pub charge: Option<String>,
    pub favored: Option<String>,
    pub chirality: Chirality,
    pub method: Method,
    pub points: usize,
    pub step_time: f64,
    /// Defaults to `step_time / 1000`.
    pub dt: Option<f64>,
    pub floor: f64,
    pub eps_max: f64,
    pub ramp: Ramp,
    pub reverse: bool,
    pub rel_tol: f64,
    pub gap_threshold: f64,
    pub max_leakage: f64,
    pub spectrum_samples: usize,
}

impl Default for BraidParams {
    fn default() -> Self {
        Self {
            charge: None,
            favored: None,
            chirality: Chirality::Plus,
            method: Method::WilsonLine,
            points: 2000,
            step_time: 1.0,
            dt: None,
            floor: 0.0,
            eps_max: 1.0,
            ramp: Ramp::Cosine,
            reverse: false,
            rel_tol: 1e-9,
            gap_threshold: 1e-8,
            max_leakage: 1e-2,
            spectrum_samples: 300,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepParams {
    pub charge: Option<String>,
    pub favored: Option<String>,
    pub chirality: Chirality,
    pub step_times: Vec<f64>,
    pub dt_ratio: f64,
    pub floor: f64,
    pub eps_max: f64,
    pub ramp: Ramp,
    pub reverse: bool,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            charge: None,
            favored: None,
            chirality: Chirality::Plus,
            step_times: vec![5.0, 10.0, 20.0, 50.0, 100.0, 200.0],
            dt_ratio: 1e-3,
            floor: 0.0,
            eps_max: 1.0,
            ramp: Ramp::Cosine,
            reverse: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChainScalingParams {
    pub charge: Option<String>,
    pub favored: Option<String>,
    pub eps_min: f64,
    pub eps_max: f64,
    pub n_values: Vec<usize>,
    pub max_count: usize,
    pub dim_cap: usize,
}

impl Default for ChainScalingParams {
    fn default() -> Self {
        Self {
            charge: None,
            favored: None,
            eps_min: 0.1,
            eps_max: 1.0,
            n_values: vec![1, 2, 3],
            max_count: 14,
            dim_cap: 4096,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChainBraidParams {
    pub charge: Option<String>,
    pub favored: Option<String>,
    pub chirality: Chirality,
    /// Arm lengths `[N_L, N_R, N_B]`.
    pub arms: [usize; 3],
    pub method: Method,
    pub points_per_move: usize,
    pub move_time: f64,
    /// Defaults to `move_time / 1000`.
    pub dt: Option<f64>,
    pub floor: f64,
    pub eps_max: f64,
    pub ramp: Ramp,
    pub max_count: usize,
    pub dim_cap: usize,
    pub rel_tol: f64,
    pub gap_threshold: f64,
    pub max_leakage: f64,
    pub spectrum_samples: usize,
}

impl Default for ChainBraidParams {
    fn default() -> Self {
        Self {
            charge: None,
            favored: None,
            chirality: Chirality::Plus,
            arms: [1, 1, 1],
            method: Method::WilsonLine,
            points_per_move: 700,
            move_time: 1.0,
            dt: None,
            floor: 0.0,
            eps_max: 1.0,
            ramp: Ramp::Cosine,
            max_count: 14,
            dim_cap: 4096,
            rel_tol: 1e-9,
            gap_threshold: 1e-8,
            max_leakage: 1e-2,
            spectrum_samples: 0,
        }
    }
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let field = if path == "." { "config".to_string() } else { path };
            CliError::config(&field, format!("{inner}"))
        })?;
        let value = match raw.params {
            None | Some(Value::Null) => Value::Object(Default::default()),
            Some(v) => v,
        };
        let params = match raw.command {
            Command::VerifyModel => Params::VerifyModel(parse_params(value)?),
            Command::Spectrum => Params::Spectrum(parse_params(value)?),
            Command::Braid => Params::Braid(parse_params(value)?),
            Command::SweepTime => Params::SweepTime(parse_params(value)?),
            Command::ChainScaling => Params::ChainScaling(parse_params(value)?),
            Command::ChainBraid => Params::ChainBraid(parse_params(value)?),
        };
        let cfg = RunConfig {
            command: raw.command,
            model: raw.model,
            params,
            seed: raw.seed,
            output: raw.output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Range checks that serde cannot express.
    pub fn validate(&self) -> Result<(), CliError> {
        match &self.params {
            Params::VerifyModel(p) => positive("params.tolerance", p.tolerance),
            Params::Spectrum(p) => {
                for (k, e) in p.eps.iter().enumerate() {
                    finite(&format!("params.eps[{k}]"), *e)?;
                }
                for (k, c) in p.extra.iter().enumerate() {
                    finite(&format!("params.extra[{k}].eps"), c.eps)?;
                }
                positive("params.rel_tol", p.rel_tol)?;
                if matches!(p.profile_grid, Some(g) if g < 2) {
                    return Err(CliError::config("params.profile_grid", "must be at least 2"));
                }
                Ok(())
            }
            Params::Braid(p) => {
                if p.points < 4 {
                    return Err(CliError::config("params.points", "must be at least 4"));
                }
                positive("params.step_time", p.step_time)?;
                if let Some(dt) = p.dt {
                    positive("params.dt", dt)?;
                }
                drive("params", p.eps_max, p.floor)?;
                tolerances(p.rel_tol, p.gap_threshold, p.max_leakage)
            }
            Params::SweepTime(p) => {
                if p.step_times.is_empty() {
                    return Err(CliError::config("params.step_times", "must not be empty"));
                }
                for (k, t) in p.step_times.iter().enumerate() {
                    positive(&format!("params.step_times[{k}]"), *t)?;
                }
                if p.step_times.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(CliError::config("params.step_times", "must be strictly ascending"));
                }
                positive("params.dt_ratio", p.dt_ratio)?;
                drive("params", p.eps_max, p.floor)
            }
            Params::ChainScaling(p) => {
                positive("params.eps_min", p.eps_min)?;
                positive("params.eps_max", p.eps_max)?;
                if p.n_values.is_empty() {
                    return Err(CliError::config("params.n_values", "must not be empty"));
                }
                if let Some(k) = p.n_values.iter().position(|&n| n == 0) {
                    return Err(CliError::config(&format!("params.n_values[{k}]"), "must be at least 1"));
                }
                Ok(())
            }
            Params::ChainBraid(p) => {
                if p.points_per_move < 2 {
                    return Err(CliError::config("params.points_per_move", "must be at least 2"));
                }
                positive("params.move_time", p.move_time)?;
                if let Some(dt) = p.dt {
                    positive("params.dt", dt)?;
                }
                drive("params", p.eps_max, p.floor)?;
                tolerances(p.rel_tol, p.gap_threshold, p.max_leakage)
            }
        }
    }
}

fn parse_params<P: DeserializeOwned>(value: Value) -> Result<P, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "params".to_string() } else { format!("params.{path}") };
        CliError::config(&field, e.into_inner())
    })
}

fn finite(field: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::config(field, "must be finite"))
    }
}

fn positive(field: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::config(field, format!("must be positive, got {v}")))
    }
}

fn drive(prefix: &str, eps_max: f64, floor: f64) -> Result<(), CliError> {
    positive(&format!("{prefix}.eps_max"), eps_max)?;
    if !(floor >= 0.0 && floor < eps_max) {
        return Err(CliError::config(&format!("{prefix}.floor"), "must lie in [0, eps_max)"));
    }
    Ok(())
}

fn tolerances(rel_tol: f64, gap_threshold: f64, max_leakage: f64) -> Result<(), CliError> {
    positive("params.rel_tol", rel_tol)?;
    if !(gap_threshold >= 0.0) {
        return Err(CliError::config("params.gap_threshold", "must be non-negative"));
    }
    positive("params.max_leakage", max_leakage)
}
