//! TOML run configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::problems::{ProblemId, ProblemSpec};
use super::run::RunOptions;
use super::DriverError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// File name prefix; the problem name when absent.
    pub prefix: Option<String>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            prefix: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    #[serde(default)]
    pub run: RunOptions,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn new(id: ProblemId, run: RunOptions) -> Self {
        Self {
            problem: ProblemSpec::new(id),
            run,
            output: OutputConfig::default(),
        }
    }

    pub fn from_toml_str(s: &str) -> Result<Self, DriverError> {
        let cfg: Self = toml::from_str(s)?;
        cfg.problem.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> Result<String, DriverError> {
        Ok(toml::to_string(self)?)
    }

    pub fn load(path: &Path) -> Result<Self, DriverError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DriverError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn prefix(&self) -> String {
        self.output.prefix.clone().unwrap_or_else(|| self.problem.id.name().to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::Scheme;

    #[test]
    fn round_trip() {
        for name in ProblemId::NAMES {
            let id = ProblemId::from_name(name, Some(4.0), Some(0.3)).unwrap();
            let cfg = RunConfig::new(id, RunOptions::new(160, Scheme::QI1));
            let text = cfg.to_toml_string().unwrap();
            assert_eq!(RunConfig::from_toml_str(&text).unwrap(), cfg, "{text}");
        }
    }

    #[test]
    fn minimal_file() {
        let text = r#"
[problem]
domain = [-1.0, 1.0]
bc = "free-flow"
final_time = 0.15
dt_over_h = 2.83
policy = "material-speed"

[problem.id]
kind = "stiff-lax"

[problem.limiter]
strategy = "i3"
gamma2 = 1.0

[run]
cells = 100
scheme = "qi3"
"#;
        let cfg = RunConfig::from_toml_str(text).unwrap();
        assert_eq!(cfg.problem, ProblemSpec::new(ProblemId::StiffLax).with_strategy_for_test());
        assert_eq!(cfg.run.cells, 100);
        assert!(RunConfig::from_toml_str("[problem]\nbogus = 1").is_err());
    }

    impl ProblemSpec {
        fn with_strategy_for_test(mut self) -> Self {
            self.limiter.strategy = crate::limiter::Strategy::I3;
            self
        }
    }
}
