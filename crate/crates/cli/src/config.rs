//! Key=value configuration file, overridden by command-line flags.

use crate::CliError;
use std::path::Path;
use surgery_core::analysis::{DEFAULT_HOM_BUDGET, DEFAULT_MAX_COSETS};

pub struct Config {
    pub seed: u64,
    pub max_cosets: usize,
    pub resolution: usize,
    pub hom_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            max_cosets: DEFAULT_MAX_COSETS,
            resolution: 32,
            hom_budget: DEFAULT_HOM_BUDGET,
        }
    }
}

impl Config {
    /// Loads the file (when given) and applies explicit flag overrides.
    /// Unknown keys are errors, not warnings.
    pub fn load(path: Option<&Path>, seed_flag: Option<u64>) -> Result<Self, CliError> {
        let mut config = Config::default();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::input(format!("cannot read config {}: {e}", path.display()))
            })?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(CliError::input(format!(
                        "config line {}: expected key=value",
                        lineno + 1
                    )));
                };
                let (key, value) = (key.trim(), value.trim());
                let bad_value = || {
                    CliError::input(format!(
                        "config line {}: bad value for {key}: {value:?}",
                        lineno + 1
                    ))
                };
                match key {
                    "seed" => config.seed = value.parse().map_err(|_| bad_value())?,
                    "max_cosets" => {
                        config.max_cosets = value.parse().map_err(|_| bad_value())?
                    }
                    "resolution" => {
                        config.resolution = value.parse().map_err(|_| bad_value())?
                    }
                    "hom_budget" => {
                        config.hom_budget = value.parse().map_err(|_| bad_value())?
                    }
                    _ => {
                        return Err(CliError::input(format!(
                            "config line {}: unknown key {key:?}",
                            lineno + 1
                        )))
                    }
                }
            }
        }
        if let Some(seed) = seed_flag {
            config.seed = seed;
        }
        Ok(config)
    }
}
