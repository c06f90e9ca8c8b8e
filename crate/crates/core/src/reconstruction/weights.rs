//! Linear weights, smoothness data and Z-type nonlinear weights.

use serde::{Deserialize, Serialize};

use super::poly::{
    central_parabola, first_cell_parabola, jiang_shu_indicator, last_cell_parabola, Quadratic,
};
use super::ReconstructionError;
use crate::scalar::Real;

/// Linear weights: `(d0, dL, dR)` in the interior, `(d0_ao, d_ao, dtilde)` in
/// the first and last cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearWeights<T> {
    pub d0: T,
    pub dl: T,
    pub dr: T,
    pub d0_ao: T,
    pub d_ao: T,
    pub dtilde: T,
}

impl<T: Real> LinearWeights<T> {
    pub fn new(d0: T, dl: T, dr: T, d0_ao: T, d_ao: T, dtilde: T) -> Result<Self, ReconstructionError> {
        let tol = T::lit(1e-12);
        let ok_set = |a: T, b: T, c: T| {
            a > T::zero() && b > T::zero() && c > T::zero() && (a + b + c - T::one()).abs() <= tol
        };
        if !ok_set(d0, dl, dr) || !ok_set(d0_ao, d_ao, dtilde) {
            return Err(ReconstructionError::InvalidLinearWeights {
                interior: [d0.to_f64_lossy(), dl.to_f64_lossy(), dr.to_f64_lossy()],
                boundary: [d0_ao.to_f64_lossy(), d_ao.to_f64_lossy(), dtilde.to_f64_lossy()],
            });
        }
        Ok(Self {
            d0,
            dl,
            dr,
            d0_ao,
            d_ao,
            dtilde,
        })
    }

    /// `d0 = 3/4`, `dL = dR = 1/8`; `d = 1/4`, `dtilde = max(h, 0.01)` at the ends.
    pub fn standard(h: T) -> Result<Self, ReconstructionError> {
        let dtilde = h.max(T::lit(0.01));
        let d_ao = T::lit(0.25);
        Self::new(
            T::lit(0.75),
            T::lit(0.125),
            T::lit(0.125),
            T::one() - d_ao - dtilde,
            d_ao,
            dtilde,
        )
    }

    pub fn interior(&self) -> [T; 3] {
        [self.d0, self.dl, self.dr]
    }

    pub fn boundary(&self) -> [T; 3] {
        [self.d0_ao, self.d_ao, self.dtilde]
    }

    pub fn for_kind(&self, kind: CellKind) -> [T; 3] {
        match kind {
            CellKind::Interior => self.interior(),
            CellKind::First | CellKind::Last => self.boundary(),
        }
    }
}

/// Position of a cell with respect to the domain ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    Interior,
    First,
    Last,
}

impl CellKind {
    pub fn of(j: usize, n: usize) -> Self {
        if j == 0 {
            CellKind::First
        } else if j + 1 == n {
            CellKind::Last
        } else {
            CellKind::Interior
        }
    }

    /// Index of the first stencil cell for cell `j` of `n`.
    pub fn stencil_start(j: usize, n: usize) -> usize {
        match Self::of(j, n) {
            CellKind::First => 0,
            CellKind::Last => n - 3,
            CellKind::Interior => j - 1,
        }
    }
}

/// Indicators of the three candidates, ordered `(optimal, first, second)`:
/// `(I0, IL, IR)` in the interior, `(I0, I, Itilde)` in AO cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessData<T> {
    pub indicators: [T; 3],
    pub tau: T,
}

/// Nonlinear weights in the same order as [`SmoothnessData::indicators`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearWeights<T> {
    pub omega: [T; 3],
}

/// Z-type weights with `p = 2` and `epsilon = h^2`.
pub fn z_weights<T: Real>(s: &SmoothnessData<T>, d: [T; 3], h: T) -> NonlinearWeights<T> {
    let eps = h * h;
    let mut alpha = [T::zero(); 3];
    let mut sum = T::zero();
    for k in 0..3 {
        let r = s.tau / (s.indicators[k] + eps);
        alpha[k] = d[k] * (T::one() + r * r);
        sum += alpha[k];
    }
    NonlinearWeights {
        omega: [alpha[0] / sum, alpha[1] / sum, alpha[2] / sum],
    }
}

/// Candidate polynomials of a cell, ordered like the weights.
pub fn candidates<T: Real>(u: [T; 3], kind: CellKind) -> [Quadratic<T>; 3] {
    let [a, b, c] = u;
    match kind {
        CellKind::Interior => [
            central_parabola(a, b, c),
            Quadratic::linear(b, b - a),
            Quadratic::linear(b, c - b),
        ],
        CellKind::First => [
            first_cell_parabola(a, b, c),
            Quadratic::linear(a, b - a),
            Quadratic::constant(a),
        ],
        CellKind::Last => [
            last_cell_parabola(a, b, c),
            Quadratic::linear(c, c - b),
            Quadratic::constant(c),
        ],
    }
}

/// Global indicator of the central reconstruction on the stencil `u`.
pub fn interior_tau<T: Real>(u: [T; 3]) -> T {
    let [p0, pl, pr] = candidates(u, CellKind::Interior);
    (T::lit(2.0) * jiang_shu_indicator(&p0) - jiang_shu_indicator(&pl) - jiang_shu_indicator(&pr))
        .abs()
}

/// Indicators and global indicator of a cell. AO cells take the global
/// indicator of their interior neighbour, whose stencil coincides with theirs.
pub fn smoothness<T: Real>(u: [T; 3], kind: CellKind) -> SmoothnessData<T> {
    let cands = candidates(u, kind);
    let indicators = [
        jiang_shu_indicator(&cands[0]),
        jiang_shu_indicator(&cands[1]),
        jiang_shu_indicator(&cands[2]),
    ];
    let tau = match kind {
        CellKind::Interior => {
            (T::lit(2.0) * indicators[0] - indicators[1] - indicators[2]).abs()
        }
        CellKind::First | CellKind::Last => interior_tau(u),
    };
    SmoothnessData { indicators, tau }
}

/// Ghost-cell-free variant of [`smoothness`] that keeps the AO global
/// indicator `|I - I0|` instead of the neighbour's value.
pub fn smoothness_ao_own_tau<T: Real>(u: [T; 3], kind: CellKind) -> SmoothnessData<T> {
    let mut s = smoothness(u, kind);
    if kind != CellKind::Interior {
        s.tau = (s.indicators[1] - s.indicators[0]).abs();
    }
    s
}

/// Nonlinear weights of one cell from its three stencil averages.
pub fn cell_weights<T: Real>(u: [T; 3], kind: CellKind, h: T, d: &LinearWeights<T>) -> NonlinearWeights<T> {
    z_weights(&smoothness(u, kind), d.for_kind(kind), h)
}

/// Blends candidates with weights: `(w0/d0)(P0 - d1 P1 - d2 P2) + w1 P1 + w2 P2`.
pub fn blend<T: Real>(cands: &[Quadratic<T>; 3], w: &NonlinearWeights<T>, d: [T; 3]) -> Quadratic<T> {
    let core = cands[0].sub(&cands[1].scale(d[1])).sub(&cands[2].scale(d[2]));
    core.scale(w.omega[0] / d[0])
        .add(&cands[1].scale(w.omega[1]))
        .add(&cands[2].scale(w.omega[2]))
}

/// Reconstruction polynomial of one cell together with the weights used.
pub fn reconstruct_cell<T: Real>(
    u: [T; 3],
    kind: CellKind,
    h: T,
    d: &LinearWeights<T>,
) -> (Quadratic<T>, NonlinearWeights<T>) {
    let w = cell_weights(u, kind, h, d);
    let p = blend(&candidates(u, kind), &w, d.for_kind(kind));
    (p, w)
}
