//! Numerical entropy production of the predictor (`S1`) and of the
//! third-order solution (`S3`).

use crate::grid::{Field, Grid1D};
use crate::model::ConservationLaw;
use crate::reconstruction::{reconstruct_field, LinearWeights};
use crate::scalar::Real;

/// Two-point Gauss average of `eta` over each cell, from fresh CWENOZ
/// reconstructions of `field`. Cells whose Gauss-point states are not
/// admissible fall back to `eta` of the cell average.
pub fn gauss_entropy<T: Real, L: ConservationLaw<T> + ?Sized>(
    law: &L,
    field: &Field<T>,
    grid: &Grid1D<T>,
    d: &LinearWeights<T>,
) -> Vec<T> {
    let m = field.components();
    let polys = reconstruct_field(field, grid, d);
    let xi = T::lit(3.0f64.sqrt() / 6.0);
    let mut state = vec![T::zero(); m];
    (0..field.cells())
        .map(|j| {
            let mut acc = T::zero();
            for s in [-xi, xi] {
                for (k, v) in state.iter_mut().enumerate() {
                    *v = polys[j * m + k].eval(s);
                }
                if law.check_admissible(&state).is_err() {
                    return law.entropy(field.row(j));
                }
                acc += law.entropy(&state);
            }
            T::lit(0.5) * acc
        })
        .collect()
}

/// `S1_j = (eta(U*_{n+1}) - eta(U_n) + dt/h (Psi_{j+1/2} - Psi_{j-1/2})) / dt`
/// where `psi` already carries the `theta` weights.
pub fn s1_production<T: Real, L: ConservationLaw<T> + ?Sized>(
    law: &L,
    u_n: &Field<T>,
    predictor_update: &Field<T>,
    psi: &[T],
    dt: T,
    h: T,
) -> Vec<T> {
    let dt_h = dt / h;
    (0..u_n.cells())
        .map(|j| {
            let de = law.entropy(predictor_update.row(j)) - law.entropy(u_n.row(j));
            (de + dt_h * (psi[j + 1] - psi[j])) / dt
        })
        .collect()
}

/// `S3_j` from the Gauss entropy averages at both time levels and the
/// weighted numerical entropy fluxes.
pub fn s3_production<T: Real>(eta_np1: &[T], eta_n: &[T], psi: &[T], dt: T, h: T) -> Vec<T> {
    let dt_h = dt / h;
    (0..eta_n.len())
        .map(|j| (eta_np1[j] - eta_n[j] + dt_h * (psi[j + 1] - psi[j])) / dt)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::project_initial_condition;
    use crate::model::{Burgers, Euler, Primitive};

    #[test]
    fn constant_state_has_zero_production() {
        let g = Grid1D::new(0.0, 1.0, 8).unwrap();
        let e = Euler::standard();
        let s = e.to_conserved(Primitive::new(1.0, 0.5, 2.0));
        let u = Field::constant(8, &s);
        let d = LinearWeights::standard(g.h()).unwrap();
        let eta = gauss_entropy(&e, &u, &g, &d);
        let psi = vec![e.entropy_flux(&s); 9];
        assert!(s3_production(&eta, &eta, &psi, 0.1, g.h()).iter().all(|&v| v == 0.0));
        assert!(s1_production(&e, &u, &u, &psi, 0.1, g.h()).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn gauss_average_is_accurate() {
        let g = Grid1D::new(-1.0, 1.0, 40).unwrap();
        let u = project_initial_condition(|x: f64, v: &mut [f64]| v[0] = 1.0 + 0.5 * x, &g, 1);
        let d = LinearWeights::standard(g.h()).unwrap();
        let eta = gauss_entropy(&Burgers, &u, &g, &d);
        // average of (1 + x/2)^2 / 2 is exact for the two-point rule
        for j in 0..40 {
            let (a, b) = (g.interface(j), g.interface(j + 1));
            let prim = |x: f64| (1.0 + 0.5 * x).powi(3) / 3.0;
            let exact = (prim(b) - prim(a)) / (b - a);
            assert!((eta[j] - exact).abs() < 1e-12);
        }
    }
}
