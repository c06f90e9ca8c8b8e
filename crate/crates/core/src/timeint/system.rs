//! Stage systems with affine BED: residual, interface fluxes and the
//! block-banded Jacobian.

use crate::grid::{BoundaryCondition, Field};
use crate::linalg::BlockMatrix;
use crate::model::{ConservationLaw, ModelError};
use crate::numflux::{entropy_flux, rusanov_into, rusanov_jacobians_into, ViscosityPolicy};
use crate::reconstruction::{trace_source, BedSet, Edge, FrozenWeights, Side};
use crate::scalar::Real;

/// Traces that are affine in the cell averages: the trace of cell `j` at
/// `edge`, component `k`, is `sum_a coeff(j, k, edge, a) * u[start(j) + a][k]`.
pub trait AffineTraces<T>: Sync {
    fn width(&self) -> usize;
    fn start(&self, j: usize) -> usize;
    fn coeff(&self, j: usize, k: usize, edge: Edge, a: usize) -> T;
}

/// First-order traces: the cell average itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct PiecewiseConstant;

impl<T: Real> AffineTraces<T> for PiecewiseConstant {
    fn width(&self) -> usize {
        1
    }
    fn start(&self, j: usize) -> usize {
        j
    }
    fn coeff(&self, _j: usize, _k: usize, _edge: Edge, _a: usize) -> T {
        T::one()
    }
}

impl<T: Real> AffineTraces<T> for FrozenWeights<T> {
    fn width(&self) -> usize {
        3
    }
    fn start(&self, j: usize) -> usize {
        self.stencil_start(j)
    }
    fn coeff(&self, j: usize, k: usize, edge: Edge, a: usize) -> T {
        self.trace(j, k, edge)[a]
    }
}

/// BED, fluxes, viscosities and (optionally) entropy fluxes at all `N + 1`
/// interfaces.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceData<T> {
    pub bed: BedSet<T>,
    /// `(N + 1) x m`, row-major.
    pub flux: Vec<T>,
    pub alpha: Vec<T>,
    /// Numerical entropy flux; empty until [`InterfaceData::compute_entropy`].
    pub entropy: Vec<T>,
}

impl<T: Real> InterfaceData<T> {
    pub fn interfaces(&self) -> usize {
        self.alpha.len()
    }

    #[inline]
    pub fn flux(&self, i: usize) -> &[T] {
        let m = self.bed.components();
        &self.flux[i * m..(i + 1) * m]
    }

    pub fn compute_entropy<L: ConservationLaw<T> + ?Sized>(&mut self, law: &L) {
        self.entropy = (0..self.interfaces())
            .map(|i| entropy_flux(law, self.bed.minus(i), self.bed.plus(i), self.alpha[i]))
            .collect();
    }
}

/// Evaluates affine BED on `u`.
pub fn affine_bed<T: Real, A: AffineTraces<T> + ?Sized>(
    traces: &A,
    u: &Field<T>,
    bc: BoundaryCondition,
) -> BedSet<T> {
    let n = u.cells();
    let m = u.components();
    let w = traces.width();
    let mut bed = BedSet::zeros(n + 1, m);
    for i in 0..=n {
        for side in [Side::Minus, Side::Plus] {
            let (j, edge) = trace_source(i, side, n, bc);
            let s = traces.start(j);
            let row = bed.side_mut(i, side);
            for (k, v) in row.iter_mut().enumerate() {
                let mut acc = T::zero();
                for a in 0..w {
                    acc += traces.coeff(j, k, edge, a) * u.get(s + a, k);
                }
                *v = acc;
            }
        }
    }
    bed
}

/// Rusanov fluxes of a BED set; fails on non-finite values.
pub fn interface_fluxes<T: Real, L: ConservationLaw<T> + ?Sized>(
    law: &L,
    bed: BedSet<T>,
    policy: ViscosityPolicy,
) -> Result<InterfaceData<T>, ModelError> {
    let ni = bed.interfaces();
    let m = bed.components();
    let mut flux = vec![T::zero(); ni * m];
    let mut alpha = vec![T::zero(); ni];
    let mut scratch = vec![T::zero(); m];
    for i in 0..ni {
        let out = &mut flux[i * m..(i + 1) * m];
        alpha[i] = rusanov_into(law, bed.minus(i), bed.plus(i), policy, out, &mut scratch);
        if !alpha[i].is_finite() || out.iter().any(|v| !v.is_finite()) {
            let mut state = bed.minus(i).to_vec();
            state.extend_from_slice(bed.plus(i));
            return Err(ModelError::NonFinite(state.iter().map(|v| v.to_f64_lossy()).collect()));
        }
    }
    Ok(InterfaceData {
        bed,
        flux,
        alpha,
        entropy: Vec::new(),
    })
}

/// `u_n - dt_h * (G_{j+1} - G_j)` for combined interface fluxes `G`.
pub fn conservative_update<T: Real>(u_n: &Field<T>, dt_h: T, combined: &[T]) -> Field<T> {
    let m = u_n.components();
    let mut out = u_n.clone();
    for j in 0..u_n.cells() {
        let row = out.row_mut(j);
        for k in 0..m {
            row[k] -= dt_h * (combined[(j + 1) * m + k] - combined[j * m + k]);
        }
    }
    out
}

/// `sum_k w_k F^(k)` over interfaces, accumulated in stage order.
pub fn combine<T: Real>(terms: &[(T, &[T])]) -> Vec<T> {
    let len = terms.first().map_or(0, |t| t.1.len());
    let mut out = vec![T::zero(); len];
    for &(w, f) in terms {
        for (o, &v) in out.iter_mut().zip(f) {
            *o += w * v;
        }
    }
    out
}

/// `G(U) = U + scale * dF(U) - rhs` with BED given by `traces`.
pub struct StageSystem<'a, T, L: ?Sized, A: ?Sized> {
    pub law: &'a L,
    pub traces: &'a A,
    pub bc: BoundaryCondition,
    pub policy: ViscosityPolicy,
    pub scale: T,
    pub rhs: &'a Field<T>,
}

impl<T: Real, L: ConservationLaw<T> + ?Sized, A: AffineTraces<T> + ?Sized> StageSystem<'_, T, L, A> {
    pub fn check_states(&self, u: &Field<T>) -> Result<(), ModelError> {
        (0..u.cells()).try_for_each(|j| self.law.check_admissible(u.row(j)))
    }

    pub fn evaluate(&self, u: &Field<T>) -> Result<InterfaceData<T>, ModelError> {
        interface_fluxes(self.law, affine_bed(self.traces, u, self.bc), self.policy)
    }

    pub fn residual(&self, u: &Field<T>, eval: &InterfaceData<T>, g: &mut [T]) {
        let m = u.components();
        for j in 0..u.cells() {
            let (fl, fr) = (eval.flux(j), eval.flux(j + 1));
            let (row, rhs) = (u.row(j), self.rhs.row(j));
            for k in 0..m {
                g[j * m + k] = row[k] + self.scale * (fr[k] - fl[k]) - rhs[k];
            }
        }
    }

    /// `I + scale * d(dF)/dU` with the viscosity held fixed.
    pub fn jacobian(&self, u: &Field<T>, eval: &InterfaceData<T>) -> BlockMatrix<T> {
        let n = u.cells();
        let m = u.components();
        let w = self.traces.width();
        let mut jac = BlockMatrix::new(n, m);
        let (mut dv, mut dw) = (vec![T::zero(); m * m], vec![T::zero(); m * m]);
        let mut blk = vec![T::zero(); m * m];
        for i in 0..=n {
            rusanov_jacobians_into(self.law, eval.bed.minus(i), eval.bed.plus(i), eval.alpha[i], &mut dv, &mut dw);
            for (side, d) in [(Side::Minus, &dv), (Side::Plus, &dw)] {
                let (j, edge) = trace_source(i, side, n, self.bc);
                let s = self.traces.start(j);
                for a in 0..w {
                    for k in 0..m {
                        let c = self.traces.coeff(j, k, edge, a);
                        for r in 0..m {
                            blk[r * m + k] = d[r * m + k] * c;
                        }
                    }
                    if i >= 1 {
                        jac.add_scaled_block(i - 1, s + a, self.scale, &blk);
                    }
                    if i < n {
                        jac.add_scaled_block(i, s + a, -self.scale, &blk);
                    }
                }
            }
        }
        jac.add_identity(T::one());
        jac
    }
}
