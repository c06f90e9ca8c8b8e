//! Scalar laws with the quadratic entropy `u^2 / 2`.

use super::{check_finite, ConservationLaw, ModelError};
use crate::scalar::Real;

/// `u_t + u_x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LinearAdvection;

/// `u_t + (u^2 / 2)_x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Burgers;

impl<T: Real> ConservationLaw<T> for LinearAdvection {
    fn components(&self) -> usize {
        1
    }
    fn flux(&self, u: &[T], out: &mut [T]) {
        out[0] = u[0];
    }
    fn jacobian(&self, _u: &[T], out: &mut [T]) {
        out[0] = T::one();
    }
    fn max_abs_eigenvalue(&self, _u: &[T]) -> T {
        T::one()
    }
    fn entropy(&self, u: &[T]) -> T {
        T::lit(0.5) * u[0] * u[0]
    }
    fn entropy_flux(&self, u: &[T]) -> T {
        T::lit(0.5) * u[0] * u[0]
    }
    fn entropy_gradient(&self, u: &[T], out: &mut [T]) {
        out[0] = u[0];
    }
    fn check_admissible(&self, u: &[T]) -> Result<(), ModelError> {
        check_finite(u)
    }
}

impl<T: Real> ConservationLaw<T> for Burgers {
    fn components(&self) -> usize {
        1
    }
    fn flux(&self, u: &[T], out: &mut [T]) {
        out[0] = T::lit(0.5) * u[0] * u[0];
    }
    fn jacobian(&self, u: &[T], out: &mut [T]) {
        out[0] = u[0];
    }
    fn max_abs_eigenvalue(&self, u: &[T]) -> T {
        u[0].abs()
    }
    fn entropy(&self, u: &[T]) -> T {
        T::lit(0.5) * u[0] * u[0]
    }
    fn entropy_flux(&self, u: &[T]) -> T {
        u[0] * u[0] * u[0] / T::lit(3.0)
    }
    fn entropy_gradient(&self, u: &[T], out: &mut [T]) {
        out[0] = u[0];
    }
    fn check_admissible(&self, u: &[T]) -> Result<(), ModelError> {
        check_finite(u)
    }
}
