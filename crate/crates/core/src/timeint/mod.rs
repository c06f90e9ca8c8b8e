//! Implicit Runge-Kutta time stepping: first-order predictor, third-order
//! corrector with frozen weights, and the entropy-based time limiter.

pub mod explicit;
pub mod newton;
pub mod system;
pub mod tableau;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{BoundaryCondition, Field, Grid1D};
use crate::limiter::{gauss_entropy, time_limit, EntropyReport, LimitInputs, LimiterConfig, LimiterError};
use crate::model::{ConservationLaw, ModelError};
use crate::numflux::ViscosityPolicy;
use crate::reconstruction::{FrozenWeights, LinearWeights, ReconstructionError};
use crate::scalar::Real;

pub use explicit::{cfl_time_step, Ssprk3};
pub use newton::{newton_solve, NewtonConfig, NewtonReport, SolveTag};
pub use system::{AffineTraces, InterfaceData, PiecewiseConstant, StageSystem};
pub use tableau::{theta_coefficients, ButcherTableau, ALEXANDER_LAMBDA};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TimeIntError {
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid Newton parameters: {0:?}")]
    InvalidNewtonConfig(NewtonConfig),
    #[error(
        "Newton failed in {} stage {stage} at iteration {iteration} (residual {residual:e}): {reason}",
        if *predictor { "predictor" } else { "corrector" }
    )]
    Newton {
        stage: usize,
        predictor: bool,
        iteration: usize,
        residual: f64,
        reason: String,
    },
    #[error("invalid time step {0}")]
    InvalidStep(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Limiter(#[from] LimiterError),
    #[error(transparent)]
    Reconstruction(#[from] ReconstructionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuinpiConfig {
    pub policy: ViscosityPolicy,
    pub newton: NewtonConfig,
    pub limiter: LimiterConfig,
}

/// Newton statistics of one step.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StageRecord {
    pub predictor: Vec<NewtonReport>,
    pub corrector: Vec<NewtonReport>,
}

impl StageRecord {
    pub fn total_iterations(&self) -> usize {
        self.predictor.iter().chain(&self.corrector).map(|r| r.iterations).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutput<T> {
    pub field: Field<T>,
    pub report: EntropyReport<T>,
    pub record: StageRecord,
}

/// Quinpi stepper for one law on one grid.
pub struct Quinpi<'a, T, L> {
    law: &'a L,
    grid: &'a Grid1D<T>,
    bc: BoundaryCondition,
    weights: LinearWeights<T>,
    tableau: ButcherTableau<T>,
    theta: Vec<T>,
    cfg: QuinpiConfig,
}

impl<'a, T: Real, L: ConservationLaw<T>> Quinpi<'a, T, L> {
    pub fn new(law: &'a L, grid: &'a Grid1D<T>, bc: BoundaryCondition, cfg: QuinpiConfig) -> Result<Self, TimeIntError> {
        Self::with_tableau(law, grid, bc, cfg, ButcherTableau::alexander3())
    }

    pub fn with_tableau(
        law: &'a L,
        grid: &'a Grid1D<T>,
        bc: BoundaryCondition,
        cfg: QuinpiConfig,
        tableau: ButcherTableau<T>,
    ) -> Result<Self, TimeIntError> {
        cfg.newton.validate()?;
        cfg.limiter.validate()?;
        let theta = theta_coefficients(tableau.c())?;
        if (tableau.c()[tableau.stages() - 1] - T::one()).abs() > T::lit(1e-12) {
            return Err(TimeIntError::InvalidTableau("last abscissa must be one".into()));
        }
        Ok(Self {
            law,
            grid,
            bc,
            weights: LinearWeights::standard(grid.h())?,
            tableau,
            theta,
            cfg,
        })
    }

    pub fn config(&self) -> &QuinpiConfig {
        &self.cfg
    }

    pub fn weights(&self) -> &LinearWeights<T> {
        &self.weights
    }

    /// Predictor stages `U*^(k) = U*^(k-1) - theta_k dt/h dF*(U*^(k))`.
    /// Returns the stage values with their converged interface data.
    pub fn predictor(
        &self,
        u_n: &Field<T>,
        dt: T,
        record: &mut StageRecord,
    ) -> Result<Vec<(Field<T>, InterfaceData<T>)>, TimeIntError> {
        let dt_h = dt / self.grid.h();
        let mut out: Vec<(Field<T>, InterfaceData<T>)> = Vec::with_capacity(self.theta.len());
        for (k, &th) in self.theta.iter().enumerate() {
            let prev = out.last().map_or(u_n, |s| &s.0);
            let sys = StageSystem {
                law: self.law,
                traces: &PiecewiseConstant,
                bc: self.bc,
                policy: self.cfg.policy,
                scale: th * dt_h,
                rhs: prev,
            };
            let mut x = prev.clone();
            let rep = newton_solve(&sys, &mut x, &self.cfg.newton, SolveTag { stage: k, predictor: true })?;
            record.predictor.push(rep);
            let mut data = sys.evaluate(&x)?;
            data.compute_entropy(self.law);
            out.push((x, data));
        }
        Ok(out)
    }

    /// Advances `u_n` by `dt`.
    pub fn step(&self, u_n: &Field<T>, dt: T) -> Result<StepOutput<T>, TimeIntError> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(TimeIntError::InvalidStep(dt.to_f64_lossy()));
        }
        let dt_h = dt / self.grid.h();
        let mut record = StageRecord::default();
        let pred = self.predictor(u_n, dt, &mut record)?;

        let s = self.tableau.stages();
        let mut stages: Vec<InterfaceData<T>> = Vec::with_capacity(s);
        for (k, (guess, _)) in pred.iter().enumerate() {
            let frozen = FrozenWeights::freeze(guess, self.grid, &self.weights);
            let rhs = if k == 0 {
                u_n.clone()
            } else {
                let terms: Vec<(T, &[T])> = (0..k).map(|i| (self.tableau.a(k, i), &stages[i].flux[..])).collect();
                system::conservative_update(u_n, dt_h, &system::combine(&terms))
            };
            let sys = StageSystem {
                law: self.law,
                traces: &frozen,
                bc: self.bc,
                policy: self.cfg.policy,
                scale: self.tableau.a(k, k) * dt_h,
                rhs: &rhs,
            };
            let mut x = guess.clone();
            let rep = newton_solve(&sys, &mut x, &self.cfg.newton, SolveTag { stage: k, predictor: false })?;
            record.corrector.push(rep);
            let mut data = sys.evaluate(&x)?;
            data.compute_entropy(self.law);
            stages.push(data);
        }

        let b = self.tableau.b();
        let weighted = |w: &[T], rows: Vec<&[T]>| {
            let terms: Vec<(T, &[T])> = w.iter().copied().zip(rows).collect();
            system::combine(&terms)
        };
        let flux_high = weighted(b, stages.iter().map(|d| &d.flux[..]).collect());
        let flux_low = weighted(&self.theta, pred.iter().map(|p| &p.1.flux[..]).collect());
        let psi_high = weighted(b, stages.iter().map(|d| &d.entropy[..]).collect());
        let psi_low = weighted(&self.theta, pred.iter().map(|p| &p.1.entropy[..]).collect());
        let predictor_update = system::conservative_update(u_n, dt_h, &flux_low);
        let eta_n = gauss_entropy(self.law, u_n, self.grid, &self.weights);

        let outcome = time_limit(
            &LimitInputs {
                law: self.law,
                grid: self.grid,
                weights: &self.weights,
                bc: self.bc,
                dt,
                u_n,
                eta_n: &eta_n,
                predictor_update: &predictor_update,
                flux_high: &flux_high,
                flux_low: &flux_low,
                psi_high: &psi_high,
                psi_low: &psi_low,
            },
            &self.cfg.limiter,
        );
        for j in 0..outcome.field.cells() {
            self.law.check_admissible(outcome.field.row(j))?;
        }
        Ok(StepOutput {
            field: outcome.field,
            report: outcome.report,
            record,
        })
    }
}
