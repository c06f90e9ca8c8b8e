//! Conservation laws: fluxes, Jacobians, wave speeds and entropy pairs.

pub mod euler;
pub mod exact;
pub mod riemann;
pub mod scalar_laws;

use thiserror::Error;

use crate::scalar::Real;

pub use euler::{Euler, EntropyFluxSign, Primitive, GAMMA};
pub use exact::{periodic_shift, BurgersCharacteristics};
pub use riemann::RiemannSolution;
pub use scalar_laws::{Burgers, LinearAdvection};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("non-finite state {0:?}")]
    NonFinite(Vec<f64>),
    #[error("inadmissible state: density {density}, pressure {pressure}")]
    Inadmissible { density: f64, pressure: f64 },
    #[error("vacuum is generated by the Riemann data (pressure positivity condition violated by {0})")]
    Vacuum(f64),
    #[error("Riemann solver did not converge after {0} iterations")]
    RiemannNoConvergence(usize),
    #[error("exact solution unavailable: {0}")]
    NoExactSolution(String),
}

/// A one-dimensional system `u_t + f(u)_x = 0` with an entropy pair.
///
/// States are slices of length [`components`](Self::components); Jacobians
/// are written row-major into `m * m` slices.
pub trait ConservationLaw<T: Real>: Send + Sync {
    fn components(&self) -> usize;

    fn flux(&self, u: &[T], out: &mut [T]);

    fn jacobian(&self, u: &[T], out: &mut [T]);

    /// Spectral radius of the flux Jacobian.
    fn max_abs_eigenvalue(&self, u: &[T]) -> T;

    /// Speed of the material wave; defaults to the spectral radius.
    fn material_speed(&self, u: &[T]) -> T {
        self.max_abs_eigenvalue(u)
    }

    fn entropy(&self, u: &[T]) -> T;

    fn entropy_flux(&self, u: &[T]) -> T;

    fn entropy_gradient(&self, u: &[T], out: &mut [T]);

    /// Rejects states outside the domain of the model.
    fn check_admissible(&self, u: &[T]) -> Result<(), ModelError> {
        check_finite(u)
    }
}

pub(crate) fn check_finite<T: Real>(u: &[T]) -> Result<(), ModelError> {
    if u.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(ModelError::NonFinite(u.iter().map(|v| v.to_f64_lossy()).collect()))
    }
}

impl<T: Real, L: ConservationLaw<T> + ?Sized> ConservationLaw<T> for &L {
    fn components(&self) -> usize {
        (**self).components()
    }
    fn flux(&self, u: &[T], out: &mut [T]) {
        (**self).flux(u, out)
    }
    fn jacobian(&self, u: &[T], out: &mut [T]) {
        (**self).jacobian(u, out)
    }
    fn max_abs_eigenvalue(&self, u: &[T]) -> T {
        (**self).max_abs_eigenvalue(u)
    }
    fn material_speed(&self, u: &[T]) -> T {
        (**self).material_speed(u)
    }
    fn entropy(&self, u: &[T]) -> T {
        (**self).entropy(u)
    }
    fn entropy_flux(&self, u: &[T]) -> T {
        (**self).entropy_flux(u)
    }
    fn entropy_gradient(&self, u: &[T], out: &mut [T]) {
        (**self).entropy_gradient(u, out)
    }
    fn check_admissible(&self, u: &[T]) -> Result<(), ModelError> {
        (**self).check_admissible(u)
    }
}

/// Closed set of the models used by the driver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model<T> {
    Advection(LinearAdvection),
    Burgers(Burgers),
    Euler(Euler<T>),
}

impl<T: Real> ConservationLaw<T> for Model<T> {
    fn components(&self) -> usize {
        match self {
            Model::Advection(l) => ConservationLaw::<T>::components(l),
            Model::Burgers(l) => ConservationLaw::<T>::components(l),
            Model::Euler(l) => l.components(),
        }
    }
    fn flux(&self, u: &[T], out: &mut [T]) {
        match self {
            Model::Advection(l) => l.flux(u, out),
            Model::Burgers(l) => l.flux(u, out),
            Model::Euler(l) => l.flux(u, out),
        }
    }
    fn jacobian(&self, u: &[T], out: &mut [T]) {
        match self {
            Model::Advection(l) => l.jacobian(u, out),
            Model::Burgers(l) => l.jacobian(u, out),
            Model::Euler(l) => l.jacobian(u, out),
        }
    }
    fn max_abs_eigenvalue(&self, u: &[T]) -> T {
        match self {
            Model::Advection(l) => l.max_abs_eigenvalue(u),
            Model::Burgers(l) => l.max_abs_eigenvalue(u),
            Model::Euler(l) => l.max_abs_eigenvalue(u),
        }
    }
    fn material_speed(&self, u: &[T]) -> T {
        match self {
            Model::Advection(l) => l.material_speed(u),
            Model::Burgers(l) => l.material_speed(u),
            Model::Euler(l) => l.material_speed(u),
        }
    }
    fn entropy(&self, u: &[T]) -> T {
        match self {
            Model::Advection(l) => l.entropy(u),
            Model::Burgers(l) => l.entropy(u),
            Model::Euler(l) => l.entropy(u),
        }
    }
    fn entropy_flux(&self, u: &[T]) -> T {
        match self {
            Model::Advection(l) => l.entropy_flux(u),
            Model::Burgers(l) => l.entropy_flux(u),
            Model::Euler(l) => l.entropy_flux(u),
        }
    }
    fn entropy_gradient(&self, u: &[T], out: &mut [T]) {
        match self {
            Model::Advection(l) => l.entropy_gradient(u, out),
            Model::Burgers(l) => l.entropy_gradient(u, out),
            Model::Euler(l) => l.entropy_gradient(u, out),
        }
    }
    fn check_admissible(&self, u: &[T]) -> Result<(), ModelError> {
        match self {
            Model::Advection(l) => l.check_admissible(u),
            Model::Burgers(l) => l.check_admissible(u),
            Model::Euler(l) => l.check_admissible(u),
        }
    }
}

/// Test helpers shared by the model unit tests.
#[cfg(test)]
pub(crate) mod checks {
    use super::ConservationLaw;

    /// Max deviation between the analytic Jacobian and central differences.
    pub fn jacobian_defect<L: ConservationLaw<f64>>(law: &L, u: &[f64], delta: f64) -> f64 {
        let m = law.components();
        let mut jac = vec![0.0; m * m];
        law.jacobian(u, &mut jac);
        let (mut fp, mut fm) = (vec![0.0; m], vec![0.0; m]);
        let mut worst: f64 = 0.0;
        for c in 0..m {
            let mut up = u.to_vec();
            let mut um = u.to_vec();
            let step = delta * u[c].abs().max(1.0);
            up[c] += step;
            um[c] -= step;
            law.flux(&up, &mut fp);
            law.flux(&um, &mut fm);
            for r in 0..m {
                let fd = (fp[r] - fm[r]) / (2.0 * step);
                worst = worst.max((fd - jac[r * m + c]).abs() / jac[r * m + c].abs().max(1.0));
            }
        }
        worst
    }

    /// Max of `|grad(eta)^T f'(u) - grad(psi)^T|` with `grad(psi)` by central differences.
    pub fn compatibility_defect<L: ConservationLaw<f64>>(law: &L, u: &[f64], delta: f64) -> f64 {
        let m = law.components();
        let mut jac = vec![0.0; m * m];
        law.jacobian(u, &mut jac);
        let mut g = vec![0.0; m];
        law.entropy_gradient(u, &mut g);
        let mut worst: f64 = 0.0;
        for c in 0..m {
            let mut up = u.to_vec();
            let mut um = u.to_vec();
            let step = delta * u[c].abs().max(1.0);
            up[c] += step;
            um[c] -= step;
            let dpsi = (law.entropy_flux(&up) - law.entropy_flux(&um)) / (2.0 * step);
            let lhs: f64 = (0..m).map(|r| g[r] * jac[r * m + c]).sum();
            worst = worst.max((lhs - dpsi).abs() / dpsi.abs().max(1.0));
        }
        worst
    }

    /// Max deviation between the analytic entropy gradient and central differences.
    pub fn gradient_defect<L: ConservationLaw<f64>>(law: &L, u: &[f64], delta: f64) -> f64 {
        let m = law.components();
        let mut g = vec![0.0; m];
        law.entropy_gradient(u, &mut g);
        let mut worst: f64 = 0.0;
        for c in 0..m {
            let mut up = u.to_vec();
            let mut um = u.to_vec();
            let step = delta * u[c].abs().max(1.0);
            up[c] += step;
            um[c] -= step;
            let fd = (law.entropy(&up) - law.entropy(&um)) / (2.0 * step);
            worst = worst.max((fd - g[c]).abs() / g[c].abs().max(1.0));
        }
        worst
    }
}
