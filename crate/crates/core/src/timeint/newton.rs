//! Newton iterations on the stage systems `U + c dF(U) - rhs = 0`.

use serde::{Deserialize, Serialize};

use super::system::{AffineTraces, StageSystem};
use super::TimeIntError;
use crate::grid::Field;
use crate::linalg::{solve_block_banded, LinearSolverKind};
use crate::model::ConservationLaw;
use crate::scalar::{max_abs, Real};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NewtonConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iters: usize,
    pub linear_solver: LinearSolverKind,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            max_iters: 50,
            linear_solver: LinearSolverKind::BandedDirect,
        }
    }
}

impl NewtonConfig {
    pub fn validate(&self) -> Result<(), TimeIntError> {
        if self.max_iters == 0 || !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(TimeIntError::InvalidNewtonConfig(*self));
        }
        Ok(())
    }
}

/// Outcome of one converged solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonReport {
    pub iterations: usize,
    pub residual: f64,
    pub initial_residual: f64,
    /// Stopped because the update reached round-off size.
    pub stagnated: bool,
}

/// Identifies the solve in error messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveTag {
    pub stage: usize,
    pub predictor: bool,
}

/// Largest number of step halvings per iteration.
const MAX_HALVINGS: usize = 12;

/// Residual below this multiple of the tolerance counts as converged once
/// it stops decreasing.
const FLOOR_FACTOR: f64 = 1e3;

/// Solves the stage system from the initial guess `x`, which is overwritten.
/// Steps are halved until the iterate is admissible and the residual
/// decreases.
pub fn newton_solve<T: Real, L: ConservationLaw<T>, A: AffineTraces<T>>(
    sys: &StageSystem<'_, T, L, A>,
    x: &mut Field<T>,
    cfg: &NewtonConfig,
    tag: SolveTag,
) -> Result<NewtonReport, TimeIntError> {
    let n = x.as_slice().len();
    let mut g = vec![T::zero(); n];
    let mut g0 = T::zero();
    let mut prev = T::infinity();
    let abs = T::lit(cfg.abs_tol);
    let rel = T::lit(cfg.rel_tol);
    let roundoff = T::epsilon() * T::lit(64.0);
    let fail = |iteration: usize, residual: T, reason: String| TimeIntError::Newton {
        stage: tag.stage,
        predictor: tag.predictor,
        iteration,
        residual: residual.to_f64_lossy(),
        reason,
    };
    let done = |iterations: usize, norm: T, g0: T, stagnated: bool| NewtonReport {
        iterations,
        residual: norm.to_f64_lossy(),
        initial_residual: g0.to_f64_lossy(),
        stagnated,
    };

    sys.check_states(x).map_err(|e| fail(0, g0, e.to_string()))?;
    let mut eval = sys.evaluate(x).map_err(|e| fail(0, g0, e.to_string()))?;
    sys.residual(x, &eval, &mut g);
    let mut norm = max_abs(&g);
    g0 = norm;
    let tol = abs + rel * g0;
    let mut trial = x.clone();
    let mut dx = vec![T::zero(); n];
    let mut g_trial = vec![T::zero(); n];
    for it in 0..=cfg.max_iters {
        if !norm.is_finite() {
            return Err(fail(it, norm, "non-finite residual".into()));
        }
        if norm <= tol {
            return Ok(done(it, norm, g0, false));
        }
        if norm > T::lit(0.5) * prev && norm <= T::lit(FLOOR_FACTOR) * tol {
            return Ok(done(it, norm, g0, true));
        }
        if it == cfg.max_iters {
            return Err(fail(it, norm, "iteration limit reached".into()));
        }
        prev = norm;
        let jac = sys.jacobian(x, &eval);
        for (d, &v) in dx.iter_mut().zip(&g) {
            *d = -v;
        }
        solve_block_banded(&jac, &mut dx, cfg.linear_solver).map_err(|e| fail(it, norm, e.to_string()))?;

        // backtrack until admissible and the residual decreases; the last
        // admissible trial is taken if no halving decreases it
        let mut lambda = T::one();
        let mut fallback: Option<T> = None;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            for ((t, &xi), &d) in trial.as_mut_slice().iter_mut().zip(x.as_slice()).zip(&dx) {
                *t = xi + lambda * d;
            }
            if sys.check_states(&trial).is_ok() {
                if let Ok(e) = sys.evaluate(&trial) {
                    sys.residual(&trial, &e, &mut g_trial);
                    let r = max_abs(&g_trial);
                    if r.is_finite() {
                        if r < (T::one() - T::lit(1e-4) * lambda) * norm {
                            eval = e;
                            norm = r;
                            accepted = true;
                            break;
                        }
                        fallback.get_or_insert(lambda);
                    }
                }
            }
            lambda = lambda * T::lit(0.5);
        }
        if !accepted {
            let Some(l) = fallback else {
                return Err(fail(it + 1, norm, "no admissible Newton step".into()));
            };
            lambda = l;
            for ((t, &xi), &d) in trial.as_mut_slice().iter_mut().zip(x.as_slice()).zip(&dx) {
                *t = xi + lambda * d;
            }
            eval = sys.evaluate(&trial).map_err(|e| fail(it + 1, norm, e.to_string()))?;
            sys.residual(&trial, &eval, &mut g_trial);
            norm = max_abs(&g_trial);
        }
        std::mem::swap(x, &mut trial);
        std::mem::swap(&mut g, &mut g_trial);
        let step = lambda * max_abs(&dx);
        if step <= roundoff * (T::one() + x.max_abs()) {
            return Ok(done(it + 1, norm, g0, true));
        }
    }
    unreachable!("loop returns at max_iters")
}
