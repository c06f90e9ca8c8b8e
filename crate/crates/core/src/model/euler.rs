//! Gas dynamics in conserved variables `(rho, rho v, E)` with an ideal-gas
//! EOS, including the low-Mach rescaling by `eps`.

use serde::{Deserialize, Serialize};

use super::{check_finite, ConservationLaw, ModelError};
use crate::scalar::Real;

/// Ratio of specific heats used by every run.
pub const GAMMA: f64 = 1.4;

/// Sign convention of the entropy flux `psi = s * v * eta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntropyFluxSign {
    /// `psi = v eta`, compatible with `grad(eta)^T f' = grad(psi)^T`.
    #[default]
    Compatible,
    /// `psi = -v eta`.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive<T> {
    pub rho: T,
    pub v: T,
    pub p: T,
}

impl<T: Real> Primitive<T> {
    pub fn new(rho: T, v: T, p: T) -> Self {
        Self { rho, v, p }
    }
}

/// Euler system; `eps = 1` is the standard scaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler<T> {
    pub gamma: T,
    pub eps: T,
    pub entropy_sign: EntropyFluxSign,
}

impl<T: Real> Default for Euler<T> {
    fn default() -> Self {
        Self::standard()
    }
}

impl<T: Real> Euler<T> {
    pub fn standard() -> Self {
        Self::rescaled(T::one())
    }

    pub fn rescaled(eps: T) -> Self {
        Self {
            gamma: T::lit(GAMMA),
            eps,
            entropy_sign: EntropyFluxSign::Compatible,
        }
    }

    pub fn with_entropy_sign(mut self, sign: EntropyFluxSign) -> Self {
        self.entropy_sign = sign;
        self
    }

    /// Mach number of the non-dimensional system, `eps / sqrt(gamma)`.
    pub fn mach(&self) -> T {
        self.eps / self.gamma.sqrt()
    }

    fn eps2(&self) -> T {
        self.eps * self.eps
    }

    pub fn pressure(&self, u: &[T]) -> T {
        let kinetic = T::lit(0.5) * self.eps2() * u[1] * u[1] / u[0];
        (self.gamma - T::one()) * (u[2] - kinetic)
    }

    pub fn to_primitive(&self, u: &[T]) -> Primitive<T> {
        Primitive {
            rho: u[0],
            v: u[1] / u[0],
            p: self.pressure(u),
        }
    }

    pub fn to_conserved(&self, w: Primitive<T>) -> [T; 3] {
        let e = w.p / (self.gamma - T::one()) + T::lit(0.5) * self.eps2() * w.rho * w.v * w.v;
        [w.rho, w.rho * w.v, e]
    }

    pub fn sound_speed(&self, w: Primitive<T>) -> T {
        (self.gamma * w.p / w.rho).sqrt()
    }

    /// `(v - c/eps, v, v + c/eps)`.
    pub fn eigenvalues(&self, u: &[T]) -> Result<[T; 3], ModelError> {
        self.check_admissible(u)?;
        let w = self.to_primitive(u);
        let c = self.sound_speed(w) / self.eps;
        Ok([w.v - c, w.v, w.v + c])
    }

    /// Flux with an admissibility check.
    pub fn checked_flux(&self, u: &[T]) -> Result<[T; 3], ModelError> {
        self.check_admissible(u)?;
        let mut f = [T::zero(); 3];
        self.flux(u, &mut f);
        Ok(f)
    }
}

impl<T: Real> ConservationLaw<T> for Euler<T> {
    fn components(&self) -> usize {
        3
    }

    fn flux(&self, u: &[T], out: &mut [T]) {
        let v = u[1] / u[0];
        let p = self.pressure(u);
        out[0] = u[1];
        out[1] = u[1] * v + p / self.eps2();
        out[2] = v * (u[2] + p);
    }

    fn jacobian(&self, u: &[T], out: &mut [T]) {
        let g = self.gamma;
        let gm1 = g - T::one();
        let e2 = self.eps2();
        let rho = u[0];
        let v = u[1] / rho;
        let energy = u[2];
        let half = T::lit(0.5);
        out[0] = T::zero();
        out[1] = T::one();
        out[2] = T::zero();
        out[3] = (g - T::lit(3.0)) * half * v * v;
        out[4] = (T::lit(3.0) - g) * v;
        out[5] = gm1 / e2;
        out[6] = -g * energy * v / rho + gm1 * e2 * v * v * v;
        out[7] = g * energy / rho - T::lit(1.5) * gm1 * e2 * v * v;
        out[8] = g * v;
    }

    fn max_abs_eigenvalue(&self, u: &[T]) -> T {
        let w = self.to_primitive(u);
        w.v.abs() + self.sound_speed(w) / self.eps
    }

    fn material_speed(&self, u: &[T]) -> T {
        (u[1] / u[0]).abs()
    }

    fn entropy(&self, u: &[T]) -> T {
        let rho = u[0];
        let p = self.pressure(u);
        -rho * (p / ((self.gamma - T::one()) * rho.powf(self.gamma))).ln()
    }

    fn entropy_flux(&self, u: &[T]) -> T {
        let psi = u[1] / u[0] * self.entropy(u);
        match self.entropy_sign {
            EntropyFluxSign::Compatible => psi,
            EntropyFluxSign::AsPrinted => -psi,
        }
    }

    fn entropy_gradient(&self, u: &[T], out: &mut [T]) {
        let g = self.gamma;
        let gm1 = g - T::one();
        let e2 = self.eps2();
        let rho = u[0];
        let v = u[1] / rho;
        let p = self.pressure(u);
        let s = (p / (gm1 * rho.powf(g))).ln();
        let p_rho = T::lit(0.5) * gm1 * e2 * v * v;
        out[0] = -s - rho * p_rho / p + g;
        out[1] = rho * gm1 * e2 * v / p;
        out[2] = -rho * gm1 / p;
    }

    fn check_admissible(&self, u: &[T]) -> Result<(), ModelError> {
        check_finite(u)?;
        let p = self.pressure(u);
        if u[0] > T::zero() && p > T::zero() && p.is_finite() {
            Ok(())
        } else {
            Err(ModelError::Inadmissible {
                density: u[0].to_f64_lossy(),
                pressure: p.to_f64_lossy(),
            })
        }
    }
}
