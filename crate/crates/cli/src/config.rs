//! Optional TOML configuration. Command-line flags take precedence.
//!
//! ```toml
//! format = "json"
//! jobs = 4
//! cache_dir = "/tmp/oddpts-cache"
//!
//! [budget]
//! fast = 60
//! medium = 900
//! extended = 3600
//! ```

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::reproduce::Suite;
use crate::Format;

pub const CONFIG_ENV: &str = "ODDPTS_CONFIG";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    pub fast: Option<u64>,
    pub medium: Option<u64>,
    pub extended: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    #[serde(default)]
    pub budget: Budgets,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("reading {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
    }

    pub fn budget_for(&self, suite: Suite) -> Duration {
        let secs = match suite {
            Suite::Fast => self.budget.fast,
            Suite::Medium => self.budget.medium,
            Suite::Extended => self.budget.extended,
        };
        secs.map(Duration::from_secs).unwrap_or_else(|| suite.default_budget())
    }
}
