//! Explicit third-order SSP Runge-Kutta with CWENOZ reconstruction.

use super::system::{conservative_update, interface_fluxes};
use super::TimeIntError;
use crate::grid::{BoundaryCondition, Field, Grid1D};
use crate::model::ConservationLaw;
use crate::numflux::ViscosityPolicy;
use crate::reconstruction::{compute_bed, LinearWeights};
use crate::scalar::Real;

/// `cfl * h / max_j |lambda(U_j)|`.
pub fn cfl_time_step<T: Real, L: ConservationLaw<T> + ?Sized>(law: &L, u: &Field<T>, h: T, cfl: T) -> T {
    let speed = (0..u.cells()).fold(T::zero(), |m, j| m.max(law.max_abs_eigenvalue(u.row(j))));
    cfl * h / speed
}

pub struct Ssprk3<'a, T, L: ?Sized> {
    law: &'a L,
    grid: &'a Grid1D<T>,
    bc: BoundaryCondition,
    policy: ViscosityPolicy,
    weights: LinearWeights<T>,
}

impl<'a, T: Real, L: ConservationLaw<T> + ?Sized> Ssprk3<'a, T, L> {
    pub fn new(law: &'a L, grid: &'a Grid1D<T>, bc: BoundaryCondition, policy: ViscosityPolicy) -> Result<Self, TimeIntError> {
        Ok(Self {
            law,
            grid,
            bc,
            policy,
            weights: LinearWeights::standard(grid.h())?,
        })
    }

    /// `u - dt/h dF(u)` with fresh CWENOZ data.
    fn euler_step(&self, u: &Field<T>, dt: T) -> Result<Field<T>, TimeIntError> {
        for j in 0..u.cells() {
            self.law.check_admissible(u.row(j))?;
        }
        let bed = compute_bed(u, self.grid, self.bc, &self.weights);
        let data = interface_fluxes(self.law, bed, self.policy)?;
        Ok(conservative_update(u, dt / self.grid.h(), &data.flux))
    }

    pub fn step(&self, u: &Field<T>, dt: T) -> Result<Field<T>, TimeIntError> {
        let blend = |a: T, x: &Field<T>, b: T, y: &Field<T>| {
            let data = x.as_slice().iter().zip(y.as_slice()).map(|(&p, &q)| a * p + b * q).collect();
            Field::from_vec(x.cells(), x.components(), data).expect("same shape")
        };
        let u1 = self.euler_step(u, dt)?;
        let u2 = blend(T::lit(0.75), u, T::lit(0.25), &self.euler_step(&u1, dt)?);
        let third = T::one() / T::lit(3.0);
        Ok(blend(third, u, T::one() - third, &self.euler_step(&u2, dt)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::project_initial_condition;
    use crate::model::LinearAdvection;

    #[test]
    fn advection_converges_at_third_order() {
        let mut errs = Vec::new();
        for n in [40usize, 80] {
            let g = Grid1D::new(-1.0, 1.0, n).unwrap();
            let init = |s: f64| move |x: f64, v: &mut [f64]| v[0] = (std::f64::consts::PI * (x - s)).sin();
            let mut u = project_initial_condition(init(0.0), &g, 1);
            let rk = Ssprk3::new(&LinearAdvection, &g, BoundaryCondition::Periodic, ViscosityPolicy::Spectral).unwrap();
            let dt = cfl_time_step(&LinearAdvection, &u, g.h(), 0.4);
            let steps = (0.5 / dt).round() as usize;
            for _ in 0..steps {
                u = rk.step(&u, dt).unwrap();
            }
            let exact = project_initial_condition(init(dt * steps as f64), &g, 1);
            errs.push(
                u.as_slice()
                    .iter()
                    .zip(exact.as_slice())
                    .map(|(a, b)| (a - b).abs() * g.h())
                    .sum::<f64>(),
            );
        }
        assert!((errs[0] / errs[1]).log2() > 2.6);
    }
}
