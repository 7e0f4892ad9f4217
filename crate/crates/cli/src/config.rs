use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use surface_tower::Budget;

use crate::failure::{Failure, Outcome};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub budget: Budget,
    /// Recorded in manifests. Every computation is deterministic regardless.
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    pub format: FormatFlags,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FormatFlags {
    /// Indented JSON on stdout; stored objects are always indented.
    pub pretty: bool,
}

impl Default for FormatFlags {
    fn default() -> Self {
        FormatFlags { pretty: true }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Outcome<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        let cfg: RunConfig = toml::from_str(&text).map_err(|e| Failure::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Outcome<()> {
        let b = &self.budget;
        if b.max_index == 0 || b.max_hom_degree == 0 || b.max_nodes == 0 || b.max_result_index == 0 || b.max_cosets == 0 {
            return Err(Failure::Config("budgets must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_keeps_defaults() {
        let cfg: RunConfig = toml::from_str("seed = 7\n[budget]\nmax_index = 8\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.budget.max_index, 8);
        assert_eq!(cfg.budget.max_hom_degree, Budget::default().max_hom_degree);
        assert!(cfg.format.pretty);
    }

    #[test]
    fn rejects_zero_budgets_and_unknown_keys() {
        let cfg: RunConfig = toml::from_str("[budget]\nmax_nodes = 0\n").unwrap();
        assert!(cfg.validate().is_err());
        assert!(toml::from_str::<RunConfig>("colour = true\n").is_err());
    }
}
