use std::path::Path;

use serde::Deserialize;

/// Environment variable naming an optional TOML config file.
pub const CONFIG_ENV: &str = "ARITHDYN_CONFIG";

/// Defaults read from the config file. Every key is optional and every
/// key is overridden by the matching command-line flag.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub domain: Option<String>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    /// Orbit size cap in bits.
    pub max_bits: Option<u64>,
    /// Work budget for `count`, as `n · N^n`.
    pub budget: Option<u64>,
    pub prime_bound: Option<u64>,
    pub trial_bound: Option<u64>,
    pub rho_iterations: Option<u64>,
    pub rho_attempts: Option<u32>,
    /// Degree bound for `common-iterate`.
    pub maxdeg: Option<u64>,
}

impl Config {
    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }

    /// Loads the file named by [`CONFIG_ENV`], or the empty config.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }
}
