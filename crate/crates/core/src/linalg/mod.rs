//! Block-banded linear systems from the implicit stages.

mod banded;
mod block;
mod gmres;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use banded::BandedLu;
pub use block::BlockMatrix;
pub use gmres::{gmres_ilu0, GmresConfig};

use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("singular matrix (zero pivot at row {index})")]
    Singular { index: usize },
    #[error("linear solver not converged after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinearSolverKind {
    #[default]
    BandedDirect,
    KrylovIlu0,
}

/// Block bandwidth kept in the banded factor.
pub const BLOCK_BAND: usize = 2;

/// Solves `A x = rhs`, overwriting `rhs` with `x`.
pub fn solve_block_banded<T: Real>(
    a: &BlockMatrix<T>,
    rhs: &mut [T],
    kind: LinearSolverKind,
) -> Result<(), LinalgError> {
    match kind {
        LinearSolverKind::BandedDirect => {
            BandedLu::factor(a, BLOCK_BAND)?.solve(rhs);
            Ok(())
        }
        LinearSolverKind::KrylovIlu0 => {
            let b = rhs.to_vec();
            rhs.iter_mut().for_each(|v| *v = T::zero());
            gmres_ilu0(a, &b, rhs, GmresConfig::default()).map(|_| ())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_solvers_agree() {
        let mut a = BlockMatrix::<f64>::new(20, 2);
        for r in 0..20 {
            let c = (r + 19) % 20;
            a.add_scaled_block(r, c, 1.0, &[-1.0, 0.2, 0.1, -1.0]);
            let c = (r + 2) % 20;
            a.add_scaled_block(r, c, 1.0, &[0.3, 0.0, 0.0, 0.3]);
        }
        a.add_identity(3.0);
        let b: Vec<f64> = (0..40).map(|i| 1.0 + i as f64).collect();
        let (mut x1, mut x2) = (b.clone(), b.clone());
        solve_block_banded(&a, &mut x1, LinearSolverKind::BandedDirect).unwrap();
        solve_block_banded(&a, &mut x2, LinearSolverKind::KrylovIlu0).unwrap();
        let mut r = vec![0.0; 40];
        a.matvec(&x1, &mut r);
        let res = r.iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        assert!(res <= 1e-12 * (1.0 + 40.0), "{res}");
        assert!(x1.iter().zip(&x2).all(|(p, q)| (p - q).abs() < 1e-10));
    }
}
