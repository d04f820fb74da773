//! Resource caps and paths: defaults, then a TOML file, then environment.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const ENV_CONFIG: &str = "TREEFRAC_CONFIG";
pub const ENV_CENSUS_MAX_N: &str = "TREEFRAC_CENSUS_MAX_N";
pub const ENV_BALL_MAX_ELEMENTS: &str = "TREEFRAC_BALL_MAX_ELEMENTS";
pub const ENV_GRID_CELLS: &str = "TREEFRAC_GRID_CELLS";
pub const ENV_CACHE_DIR: &str = "TREEFRAC_CACHE_DIR";

/// File read when neither `--config` nor the environment names one.
pub const DEFAULT_CONFIG_FILE: &str = "treefrac.toml";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest `n` for exhaustive graph enumeration.
    pub census_max_n: usize,
    /// Largest semigroup ball, in elements.
    pub ball_max_elements: usize,
    /// Grid cells used to certify dimension bounds.
    pub grid_cells: usize,
    /// Where census results are cached; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            census_max_n: treefrac::census::DEFAULT_CAP,
            ball_max_elements: treefrac::orbit::DEFAULT_ELEMENT_CAP,
            grid_cells: treefrac::dimension::DEFAULT_CELLS,
            cache_dir: Some(PathBuf::from(".treefrac-cache")),
        }
    }
}

impl Config {
    /// Defaults, overlaid by `path` (or `$TREEFRAC_CONFIG`, or `treefrac.toml`
    /// if present), overlaid by the per-cap environment variables.
    pub fn load(path: Option<&Path>) -> Result<Config, CliError> {
        let env_path = std::env::var_os(ENV_CONFIG).map(PathBuf::from);
        let explicit = path.map(Path::to_path_buf).or(env_path);
        let mut cfg = match explicit {
            Some(p) => Self::from_file(&p)?,
            None if Path::new(DEFAULT_CONFIG_FILE).exists() => Self::from_file(Path::new(DEFAULT_CONFIG_FILE))?,
            None => Config::default(),
        };
        cfg.apply_env(|k| std::env::var(k).ok())?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Other(anyhow::anyhow!("reading {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }

    pub fn apply_env(&mut self, get: impl Fn(&str) -> Option<String>) -> Result<(), CliError> {
        fn num(key: &str, v: &str) -> Result<usize, CliError> {
            // accept 1e7 style as well as plain integers
            v.parse::<usize>()
                .ok()
                .or_else(|| v.parse::<f64>().ok().filter(|x| x.fract() == 0.0 && *x >= 0.0).map(|x| x as usize))
                .ok_or_else(|| CliError::Parse(format!("{key}={v} is not a nonnegative integer")))
        }
        if let Some(v) = get(ENV_CENSUS_MAX_N) {
            self.census_max_n = num(ENV_CENSUS_MAX_N, &v)?;
        }
        if let Some(v) = get(ENV_BALL_MAX_ELEMENTS) {
            self.ball_max_elements = num(ENV_BALL_MAX_ELEMENTS, &v)?;
        }
        if let Some(v) = get(ENV_GRID_CELLS) {
            self.grid_cells = num(ENV_GRID_CELLS, &v)?;
        }
        if let Some(v) = get(ENV_CACHE_DIR) {
            self.cache_dir = (!v.is_empty()).then(|| PathBuf::from(v));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_env() {
        let mut cfg: Config = toml::from_str("census_max_n = 6\ngrid_cells = 5000").unwrap();
        assert_eq!(cfg.census_max_n, 6);
        assert_eq!(cfg.ball_max_elements, treefrac::orbit::DEFAULT_ELEMENT_CAP);
        cfg.apply_env(|k| (k == ENV_GRID_CELLS).then(|| "1e4".to_string())).unwrap();
        assert_eq!(cfg.grid_cells, 10_000);
        assert!(cfg.apply_env(|k| (k == ENV_CENSUS_MAX_N).then(|| "seven".to_string())).is_err());
        assert!(toml::from_str::<Config>("bogus = 1").is_err());
    }
}
