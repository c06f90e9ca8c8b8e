//! Third-order CWENOZ reconstruction without ghost cells, boundary
//! extrapolated data (BED) and the frozen-weight affine reconstruction.

pub mod frozen;
pub mod poly;
pub mod study;
pub mod weights;

use thiserror::Error;

use crate::grid::{BoundaryCondition, Field, Grid1D};
use crate::scalar::Real;

pub use frozen::{frozen_weight_coeffs, FrozenWeights};
pub use poly::{jiang_shu_indicator, Quadratic};
pub use weights::{
    cell_weights, reconstruct_cell, z_weights, CellKind, LinearWeights, NonlinearWeights,
    SmoothnessData,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReconstructionError {
    #[error("linear weights must be positive and sum to one: interior {interior:?}, boundary {boundary:?}")]
    InvalidLinearWeights { interior: [f64; 3], boundary: [f64; 3] },
}

/// Edge of a cell: `Left` is `xi = -1/2`, `Right` is `xi = +1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    Left,
    Right,
}

impl Edge {
    pub fn xi<T: Real>(self) -> T {
        match self {
            Edge::Left => T::lit(-0.5),
            Edge::Right => T::lit(0.5),
        }
    }
}

/// Side of an interface: `Minus` is the left state `u^-`, `Plus` the right state `u^+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Minus,
    Plus,
}

/// Cell and edge whose trace supplies one side of interface `i` in `0..=n`.
pub fn trace_source(i: usize, side: Side, n: usize, bc: BoundaryCondition) -> (usize, Edge) {
    match side {
        Side::Minus if i == 0 => match bc {
            BoundaryCondition::Periodic => (n - 1, Edge::Right),
            BoundaryCondition::FreeFlow => (0, Edge::Left),
        },
        Side::Minus => (i - 1, Edge::Right),
        Side::Plus if i == n => match bc {
            BoundaryCondition::Periodic => (0, Edge::Left),
            BoundaryCondition::FreeFlow => (n - 1, Edge::Right),
        },
        Side::Plus => (i, Edge::Left),
    }
}

/// Cell supplying one side of interface `i` for piecewise-constant data.
pub fn constant_source(i: usize, side: Side, n: usize, bc: BoundaryCondition) -> usize {
    trace_source(i, side, n, bc).0
}

/// The three stencil averages of cell `j`, component `k`.
#[inline]
pub fn gather_stencil<T: Real>(field: &Field<T>, j: usize, k: usize) -> [T; 3] {
    let s = CellKind::stencil_start(j, field.cells());
    [field.get(s, k), field.get(s + 1, k), field.get(s + 2, k)]
}

/// Left/right states at all `N + 1` interfaces, `(N + 1) x m` each.
#[derive(Debug, Clone, PartialEq)]
pub struct BedSet<T> {
    interfaces: usize,
    components: usize,
    minus: Vec<T>,
    plus: Vec<T>,
}

impl<T: Real> BedSet<T> {
    pub fn zeros(interfaces: usize, components: usize) -> Self {
        Self {
            interfaces,
            components,
            minus: vec![T::zero(); interfaces * components],
            plus: vec![T::zero(); interfaces * components],
        }
    }

    pub fn interfaces(&self) -> usize {
        self.interfaces
    }

    pub fn components(&self) -> usize {
        self.components
    }

    #[inline]
    pub fn minus(&self, i: usize) -> &[T] {
        &self.minus[i * self.components..(i + 1) * self.components]
    }

    #[inline]
    pub fn plus(&self, i: usize) -> &[T] {
        &self.plus[i * self.components..(i + 1) * self.components]
    }

    #[inline]
    pub fn side_mut(&mut self, i: usize, side: Side) -> &mut [T] {
        let r = i * self.components..(i + 1) * self.components;
        match side {
            Side::Minus => &mut self.minus[r],
            Side::Plus => &mut self.plus[r],
        }
    }

    /// Largest entrywise difference to another set.
    pub fn max_diff(&self, o: &Self) -> T {
        let a = self.minus.iter().zip(&o.minus);
        let b = self.plus.iter().zip(&o.plus);
        a.chain(b)
            .fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()))
    }
}

/// Reconstruction polynomials for every cell and component (`[j * m + k]`).
pub fn reconstruct_field<T: Real>(
    field: &Field<T>,
    grid: &Grid1D<T>,
    d: &LinearWeights<T>,
) -> Vec<Quadratic<T>> {
    let n = field.cells();
    let m = field.components();
    let mut out = Vec::with_capacity(n * m);
    for j in 0..n {
        let kind = CellKind::of(j, n);
        for k in 0..m {
            out.push(reconstruct_cell(gather_stencil(field, j, k), kind, grid.h(), d).0);
        }
    }
    out
}

fn fill_bed<T: Real, F: Fn(usize, usize, Edge) -> T>(
    n: usize,
    m: usize,
    bc: BoundaryCondition,
    value: F,
) -> BedSet<T> {
    let mut bed = BedSet::zeros(n + 1, m);
    for i in 0..=n {
        for side in [Side::Minus, Side::Plus] {
            let (j, edge) = trace_source(i, side, n, bc);
            let row = bed.side_mut(i, side);
            for (k, v) in row.iter_mut().enumerate() {
                *v = value(j, k, edge);
            }
        }
    }
    bed
}

/// BED of the CWENOZ reconstruction of `field`.
pub fn compute_bed<T: Real>(
    field: &Field<T>,
    grid: &Grid1D<T>,
    bc: BoundaryCondition,
    d: &LinearWeights<T>,
) -> BedSet<T> {
    let m = field.components();
    let polys = reconstruct_field(field, grid, d);
    fill_bed(field.cells(), m, bc, |j, k, e| polys[j * m + k].eval(e.xi()))
}

/// BED of the affine reconstruction defined by `fw`, applied to `field`.
pub fn linearized_bed<T: Real>(
    field: &Field<T>,
    fw: &FrozenWeights<T>,
    bc: BoundaryCondition,
) -> BedSet<T> {
    fill_bed(field.cells(), field.components(), bc, |j, k, e| {
        let c = fw.trace(j, k, e);
        let s = fw.stencil_start(j);
        c[0] * field.get(s, k) + c[1] * field.get(s + 1, k) + c[2] * field.get(s + 2, k)
    })
}

/// BED of the piecewise-constant reconstruction.
pub fn piecewise_constant_bed<T: Real>(field: &Field<T>, bc: BoundaryCondition) -> BedSet<T> {
    fill_bed(field.cells(), field.components(), bc, |j, k, _| field.get(j, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::project_initial_condition;

    fn sample(n: usize, f: impl Fn(f64) -> f64) -> (Grid1D<f64>, Field<f64>) {
        let g = Grid1D::new(-1.0, 1.0, n).unwrap();
        let field = project_initial_condition(|x, u: &mut [f64]| u[0] = f(x), &g, 1);
        (g, field)
    }

    #[test]
    fn sources_follow_boundary_conventions() {
        use BoundaryCondition::*;
        assert_eq!(trace_source(0, Side::Minus, 5, Periodic), (4, Edge::Right));
        assert_eq!(trace_source(0, Side::Minus, 5, FreeFlow), (0, Edge::Left));
        assert_eq!(trace_source(5, Side::Plus, 5, Periodic), (0, Edge::Left));
        assert_eq!(trace_source(5, Side::Plus, 5, FreeFlow), (4, Edge::Right));
        assert_eq!(trace_source(2, Side::Minus, 5, Periodic), (1, Edge::Right));
        assert_eq!(trace_source(2, Side::Plus, 5, Periodic), (2, Edge::Left));
    }

    #[test]
    fn constant_field_bed() {
        let g = Grid1D::new(0.0, 1.0, 6).unwrap();
        let f = Field::constant(6, &[1.25, -3.0]);
        let d = LinearWeights::standard(g.h()).unwrap();
        for bc in [BoundaryCondition::Periodic, BoundaryCondition::FreeFlow] {
            let bed = compute_bed(&f, &g, bc, &d);
            for i in 0..=6 {
                assert_eq!(bed.minus(i), &[1.25, -3.0]);
                assert_eq!(bed.plus(i), &[1.25, -3.0]);
            }
        }
    }

    #[test]
    fn periodic_outer_bed_wraps_inner_reconstructions() {
        let g = Grid1D::new(0.0, 0.3, 3).unwrap();
        let f = Field::from_vec(3, 1, vec![1.0, 2.0, 3.0]).unwrap();
        let d = LinearWeights::standard(g.h()).unwrap();
        let bed = compute_bed(&f, &g, BoundaryCondition::Periodic, &d);
        let polys = reconstruct_field(&f, &g, &d);
        assert_eq!(bed.minus(0)[0], polys[2].eval(0.5));
        assert_eq!(bed.plus(0)[0], polys[0].eval(-0.5));
        assert_eq!(bed.plus(3)[0], polys[0].eval(-0.5));
        assert_eq!(bed.minus(3)[0], polys[2].eval(0.5));
    }

    #[test]
    fn quadratic_data_reproduced_exactly() {
        let q = |x: f64| 0.3 - 1.1 * x + 2.0 * x * x;
        let (g, f) = sample(2000, q);
        let d = LinearWeights::standard(g.h()).unwrap();
        let bed = compute_bed(&f, &g, BoundaryCondition::FreeFlow, &d);
        for i in 1..2000 {
            let x = g.interface(i);
            assert!((bed.minus(i)[0] - q(x)).abs() < 1e-12);
            assert!((bed.plus(i)[0] - q(x)).abs() < 1e-12);
        }
        assert!((bed.plus(0)[0] - q(-1.0)).abs() < 1e-12);
        assert!((bed.minus(2000)[0] - q(1.0)).abs() < 1e-12);
    }

    #[test]
    fn smooth_data_converges_at_third_order() {
        let u = |x: f64| (2.0 * x).sin() + x * x;
        let err = |n: usize| {
            let (g, f) = sample(n, u);
            let d = LinearWeights::standard(g.h()).unwrap();
            let bed = compute_bed(&f, &g, BoundaryCondition::FreeFlow, &d);
            (1..n)
                .map(|i| {
                    let x = g.interface(i);
                    (bed.minus(i)[0] - u(x)).abs().max((bed.plus(i)[0] - u(x)).abs())
                })
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(160), err(320));
        assert!((e1 / e2).log2() >= 2.7, "rate {}", (e1 / e2).log2());
    }

    #[test]
    fn frozen_bed_on_freezing_state_matches_direct_bed() {
        let (g, f) = sample(64, |x| if x < 0.1 { (3.0 * x).sin() } else { 2.0 + x });
        let d = LinearWeights::standard(g.h()).unwrap();
        for bc in [BoundaryCondition::Periodic, BoundaryCondition::FreeFlow] {
            let fw = FrozenWeights::freeze(&f, &g, &d);
            let a = compute_bed(&f, &g, bc, &d);
            let b = linearized_bed(&f, &fw, bc);
            assert!(a.max_diff(&b) <= 1e-14);
        }
    }

    #[test]
    fn frozen_bed_perturbation_is_small_on_smooth_data() {
        let diff = |n: usize| {
            let (g, f) = sample(n, |x| (std::f64::consts::PI * x).sin());
            let d = LinearWeights::standard(g.h()).unwrap();
            let fw = FrozenWeights::freeze(&f, &g, &d);
            let mut p = f.clone();
            let delta = 1e-3;
            for j in 0..n {
                let x = g.center(j);
                p.set(j, 0, f.get(j, 0) + delta * (3.0 * x).cos());
            }
            let a = compute_bed(&p, &g, BoundaryCondition::Periodic, &d);
            let b = linearized_bed(&p, &fw, BoundaryCondition::Periodic);
            a.max_diff(&b)
        };
        let (d1, d2) = (diff(80), diff(160));
        assert!(d1 < 1e-3 * 0.1);
        assert!(d2 < d1);
    }

    #[test]
    fn piecewise_constant_sides() {
        let f = Field::from_vec(3, 1, vec![1.0, 2.0, 3.0]).unwrap();
        let p = piecewise_constant_bed(&f, BoundaryCondition::Periodic);
        assert_eq!((p.minus(0)[0], p.plus(0)[0]), (3.0, 1.0));
        assert_eq!((p.minus(3)[0], p.plus(3)[0]), (3.0, 1.0));
        let p = piecewise_constant_bed(&f, BoundaryCondition::FreeFlow);
        assert_eq!((p.minus(0)[0], p.plus(0)[0]), (1.0, 1.0));
        assert_eq!((p.minus(3)[0], p.plus(3)[0]), (3.0, 3.0));
        assert_eq!((p.minus(1)[0], p.plus(1)[0]), (1.0, 2.0));
    }
}
