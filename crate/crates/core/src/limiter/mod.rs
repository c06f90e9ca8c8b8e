//! Numerical entropy production, troubled-cell marking and conservative
//! flux-centred time limiting.

pub mod entropy;
pub mod marking;
pub mod report;
pub mod time_limit;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use entropy::{gauss_entropy, s1_production, s3_production};
pub use marking::mark_cells;
pub use report::EntropyReport;
pub use time_limit::{limited_interfaces, time_limit, LimitInputs, LimitOutcome};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LimiterError {
    #[error("invalid limiter parameters: {0}")]
    InvalidConfig(String),
}

/// Troubled-cell detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    None,
    I1,
    I2,
    I3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimiterConfig {
    pub strategy: Strategy,
    /// Threshold on `|S3|`; the mesh size when absent.
    pub gamma1: Option<f64>,
    /// Threshold on `|S3| / (|S1| + sigma)`.
    pub gamma2: f64,
    pub sigma: f64,
    pub max_loops: usize,
}

impl Default for LimiterConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::None,
            gamma1: None,
            gamma2: 0.1,
            sigma: 1e-10,
            max_loops: 10,
        }
    }
}

impl LimiterConfig {
    pub fn with_strategy(strategy: Strategy, gamma2: f64) -> Self {
        Self {
            strategy,
            gamma2,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), LimiterError> {
        let g1_ok = self.gamma1.is_none_or(|g| g > 0.0);
        if !g1_ok || !(self.gamma2 > 0.0) || !(self.sigma > 0.0) || self.max_loops == 0 {
            return Err(LimiterError::InvalidConfig(format!("{self:?}")));
        }
        Ok(())
    }

    pub fn gamma1_for(&self, h: f64) -> f64 {
        self.gamma1.unwrap_or(h)
    }
}
