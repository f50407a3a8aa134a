//! Run configuration: JSON file contents and flag merging.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use eptool::analysis::MeasureTag;
use eptool::hamiltonians::HamiltonianModel;
use eptool::states::{PairSpec, StateSpec};

use crate::CliError;

/// On-disk configuration; every field is optional so command-line flags can
/// fill or override any part.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<HamiltonianModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub measures: Vec<MeasureTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridConfig {
    #[serde(default)]
    pub t_start: f64,
    pub t_end: f64,
    pub num_points: usize,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    /// Oscillation-classifier tolerance.
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    /// Bracket width at which the EP bisection stops.
    #[serde(default = "default_ep_tol")]
    pub ep_tol: f64,
}

fn default_rel_tol() -> f64 {
    1e-3
}

fn default_ep_tol() -> f64 {
    0.01
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rel_tol: default_rel_tol(),
            ep_tol: default_ep_tol(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &PathBuf) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("invalid config {}: {e}", path.display())))
    }
}

/// Build a model from `--family` plus repeated `--param key=value` flags,
/// reusing the JSON schema's defaulting rules.
pub fn model_from_flags(
    family: &str,
    params: &[(String, f64)],
) -> Result<HamiltonianModel, CliError> {
    if family == "custom" {
        return Err(CliError::config(
            "custom models need a JSON config with the matrix entries".into(),
        ));
    }
    let map: BTreeMap<String, serde_json::Value> = params
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::json!(v)))
        .collect();
    let value = serde_json::json!({ "family": family, "params": map });
    serde_json::from_value(value)
        .map_err(|e| CliError::config(format!("invalid model parameters: {e}")))
}

/// Parse one `key=value` option argument.
pub fn parse_key_value(raw: &str) -> Result<(String, f64), String> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got '{raw}'"))?;
    let parsed: f64 = value
        .parse()
        .map_err(|_| format!("'{value}' is not a number in '{raw}'"))?;
    Ok((key.to_string(), parsed))
}
