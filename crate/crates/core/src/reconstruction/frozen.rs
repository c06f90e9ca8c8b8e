//! Reconstruction with frozen nonlinear weights: an affine map from the
//! stencil averages to point values.

use super::poly::{
    CoeffMap, FIRST_CONST, FIRST_LINEAR, FIRST_OPT, INTERIOR_LEFT, INTERIOR_OPT, INTERIOR_RIGHT,
    LAST_CONST, LAST_LINEAR, LAST_OPT,
};
use super::weights::{cell_weights, CellKind, LinearWeights, NonlinearWeights};
use super::{gather_stencil, Edge};
use crate::grid::{Field, Grid1D};
use crate::scalar::Real;

/// `B[alpha][p]`: coefficient of `xi^p` multiplying stencil average `alpha`.
pub type BlendMatrix<T> = [[T; 3]; 3];

fn maps(kind: CellKind) -> [&'static CoeffMap; 3] {
    match kind {
        CellKind::Interior => [&INTERIOR_OPT, &INTERIOR_LEFT, &INTERIOR_RIGHT],
        CellKind::First => [&FIRST_OPT, &FIRST_LINEAR, &FIRST_CONST],
        CellKind::Last => [&LAST_OPT, &LAST_LINEAR, &LAST_CONST],
    }
}

/// Unrolls the weighted blend into one matrix acting on the stencil.
pub fn blend_matrix<T: Real>(kind: CellKind, w: &NonlinearWeights<T>, d: [T; 3]) -> BlendMatrix<T> {
    let [m0, m1, m2] = maps(kind);
    let s = w.omega[0] / d[0];
    let mut b = [[T::zero(); 3]; 3];
    for a in 0..3 {
        for p in 0..3 {
            let (q0, q1, q2) = (T::lit(m0[a][p]), T::lit(m1[a][p]), T::lit(m2[a][p]));
            b[a][p] = s * (q0 - d[1] * q1 - d[2] * q2) + w.omega[1] * q1 + w.omega[2] * q2;
        }
    }
    b
}

/// Stencil coefficients of the point value at `xi`.
pub fn coefficients_at<T: Real>(b: &BlendMatrix<T>, xi: T) -> [T; 3] {
    let mut out = [T::zero(); 3];
    for a in 0..3 {
        out[a] = b[a][0] + xi * (b[a][1] + xi * b[a][2]);
    }
    out
}

/// Frozen coefficients for every cell and component.
#[derive(Debug, Clone, PartialEq)]
pub struct FrozenWeights<T> {
    cells: usize,
    components: usize,
    blend: Vec<BlendMatrix<T>>,
    right: Vec<[T; 3]>,
    left: Vec<[T; 3]>,
}

impl<T: Real> FrozenWeights<T> {
    /// Builds the affine maps from per-cell, per-component weights
    /// (`weights[j * m + k]`).
    pub fn from_weights(
        cells: usize,
        components: usize,
        weights: &[NonlinearWeights<T>],
        d: &LinearWeights<T>,
    ) -> Self {
        assert_eq!(weights.len(), cells * components);
        let half = T::lit(0.5);
        let mut blend = Vec::with_capacity(weights.len());
        let mut right = Vec::with_capacity(weights.len());
        let mut left = Vec::with_capacity(weights.len());
        for j in 0..cells {
            let kind = CellKind::of(j, cells);
            for k in 0..components {
                let b = blend_matrix(kind, &weights[j * components + k], d.for_kind(kind));
                right.push(coefficients_at(&b, half));
                left.push(coefficients_at(&b, -half));
                blend.push(b);
            }
        }
        Self {
            cells,
            components,
            blend,
            right,
            left,
        }
    }

    /// Weights computed from `field` and frozen.
    pub fn freeze(field: &Field<T>, grid: &Grid1D<T>, d: &LinearWeights<T>) -> Self {
        let n = field.cells();
        let m = field.components();
        let mut w = Vec::with_capacity(n * m);
        for j in 0..n {
            let kind = CellKind::of(j, n);
            for k in 0..m {
                w.push(cell_weights(gather_stencil(field, j, k), kind, grid.h(), d));
            }
        }
        Self::from_weights(n, m, &w, d)
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn stencil_start(&self, j: usize) -> usize {
        CellKind::stencil_start(j, self.cells)
    }

    /// Triplet of the trace of cell `j`, component `k`, at one of its edges.
    #[inline]
    pub fn trace(&self, j: usize, k: usize, edge: Edge) -> &[T; 3] {
        match edge {
            Edge::Right => &self.right[j * self.components + k],
            Edge::Left => &self.left[j * self.components + k],
        }
    }

    pub fn blend(&self, j: usize, k: usize) -> &BlendMatrix<T> {
        &self.blend[j * self.components + k]
    }

    /// Value of the frozen reconstruction of cell `j`, component `k`, at `xi`.
    pub fn evaluate(&self, field: &Field<T>, j: usize, k: usize, xi: T) -> T {
        let c = coefficients_at(self.blend(j, k), xi);
        let s = self.stencil_start(j);
        c[0] * field.get(s, k) + c[1] * field.get(s + 1, k) + c[2] * field.get(s + 2, k)
    }
}

/// Right-edge (`xi = 1/2`) and left-edge (`xi = -1/2`) triplets of an interior
/// cell from its weights.
pub fn frozen_weight_coeffs<T: Real>(w: &NonlinearWeights<T>, d: &LinearWeights<T>) -> ([T; 3], [T; 3]) {
    let b = blend_matrix(CellKind::Interior, w, d.interior());
    (coefficients_at(&b, T::lit(0.5)), coefficients_at(&b, T::lit(-0.5)))
}
