//! Problem catalog, runs, convergence sweeps, statistics and file output.

pub mod config;
pub mod converge;
pub mod norms;
pub mod output;
pub mod problems;
pub mod run;
pub mod stats;

use thiserror::Error;

use crate::grid::GridError;
use crate::model::ModelError;
use crate::timeint::TimeIntError;

pub use config::{OutputConfig, RunConfig};
pub use converge::{converge, parse_levels, thread_count, weight_study, ConvergenceRow, WeightStudyLevel};
pub use norms::{convergence_rates, error_norms, restrict, window_around, windowed_error_norms};
pub use problems::{ProblemId, ProblemSpec};
pub use run::{explicit_reference, run_problem, BlowUp, RunOptions, RunReport, Scheme, StepSummary};
pub use stats::{limiter_statistics, LimitEvent, LimiterStats};

#[derive(Debug, Error)]
pub enum DriverError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("levels {0} and {1} are not a dyadic refinement")]
    NonDyadic(usize, usize),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    TimeInt(#[from] TimeIntError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse configuration: {0}")]
    TomlDe(#[from] toml::de::Error),
    #[error("cannot serialize configuration: {0}")]
    TomlSer(#[from] toml::ser::Error),
}

impl DriverError {
    /// Process exit code: 2 for invalid input, 3 for solver or output failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            DriverError::Config(_)
            | DriverError::NonDyadic(..)
            | DriverError::Grid(_)
            | DriverError::TomlDe(_)
            | DriverError::TomlSer(_)
            | DriverError::TimeInt(
                TimeIntError::InvalidNewtonConfig(_)
                | TimeIntError::InvalidTableau(_)
                | TimeIntError::Limiter(_)
                | TimeIntError::Reconstruction(_),
            ) => 2,
            _ => 3,
        }
    }
}
