//! Convergence of the nonlinear weights towards the linear ones on smooth
//! periodic data.

use std::f64::consts::PI;

use super::weights::{z_weights, CellKind, SmoothnessData};
use super::poly::jiang_shu_indicator;
use super::weights::candidates;
use crate::grid::{project_initial_condition, Grid1D, GridError};
use crate::scalar::Real;

/// `sin(pi x) + sin(15 pi x) exp(-20 x^2)`.
pub fn study_function(x: f64) -> f64 {
    (PI * x).sin() + (15.0 * PI * x).sin() * (-20.0 * x * x).exp()
}

/// Mean over cells of `max_k |d_k - omega_k|` with the central weights
/// applied to every cell of a periodic array.
pub fn periodic_weight_error<T: Real>(avg: &[T], h: T, d: [T; 3]) -> T {
    let n = avg.len();
    let mut acc = T::zero();
    for j in 0..n {
        let u = [avg[(j + n - 1) % n], avg[j], avg[(j + 1) % n]];
        let c = candidates(u, CellKind::Interior);
        let ind = [
            jiang_shu_indicator(&c[0]),
            jiang_shu_indicator(&c[1]),
            jiang_shu_indicator(&c[2]),
        ];
        let tau = (T::lit(2.0) * ind[0] - ind[1] - ind[2]).abs();
        let w = z_weights(&SmoothnessData { indicators: ind, tau }, d, h);
        let mut worst = T::zero();
        for k in 0..3 {
            worst = worst.max((d[k] - w.omega[k]).abs());
        }
        acc += worst;
    }
    acc / T::from_usize_lossy(n)
}

/// One implicit upwind step of unit Courant number on periodic data:
/// `2 v_j - v_{j-1} = u_j`, solved by the truncated Neumann series.
pub fn implicit_upwind_step<T: Real>(u: &[T]) -> Vec<T> {
    let n = u.len();
    (0..n)
        .map(|j| {
            let mut v = T::zero();
            let mut w = T::lit(0.5);
            for k in 0..64 {
                v += w * u[(j + n * (k / n + 1) - k) % n];
                w = w * T::lit(0.5);
            }
            v
        })
        .collect()
}

/// Result of one grid level of the weight study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightStudyRow {
    pub cells: usize,
    /// From first-order-accurate cell data.
    pub err_hat: f64,
    /// From third-order-accurate (Gauss-projected) cell data.
    pub err: f64,
}

/// Runs the study on `[-1, 1]` with `N` periodic cells and `d = (3/4, 1/8, 1/8)`.
pub fn weight_convergence_study(n: usize) -> Result<WeightStudyRow, GridError> {
    let g = Grid1D::new(-1.0, 1.0, n)?;
    let exact = project_initial_condition(|x, u: &mut [f64]| u[0] = study_function(x), &g, 1);
    let d = [0.75, 0.125, 0.125];
    let err = periodic_weight_error(exact.as_slice(), g.h(), d);
    let rough = implicit_upwind_step(exact.as_slice());
    let err_hat = periodic_weight_error(&rough, g.h(), d);
    Ok(WeightStudyRow {
        cells: n,
        err_hat,
        err,
    })
}
