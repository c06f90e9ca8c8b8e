//! Rusanov numerical flux and its frozen-viscosity Jacobians.

use serde::{Deserialize, Serialize};

use crate::model::{ConservationLaw, ModelError};
use crate::scalar::Real;

/// Local speed used as numerical viscosity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViscosityPolicy {
    /// Largest spectral radius of the two flux Jacobians.
    #[default]
    Spectral,
    /// Largest material speed of the two states.
    MaterialSpeed,
}

pub fn viscosity<T: Real, L: ConservationLaw<T> + ?Sized>(
    law: &L,
    v: &[T],
    w: &[T],
    policy: ViscosityPolicy,
) -> T {
    match policy {
        ViscosityPolicy::Spectral => law.max_abs_eigenvalue(v).max(law.max_abs_eigenvalue(w)),
        ViscosityPolicy::MaterialSpeed => law.material_speed(v).max(law.material_speed(w)),
    }
}

/// `F = (f(v) + f(w) - alpha (w - v)) / 2` written to `out`; `scratch` has
/// length `m`. Returns `alpha`.
pub fn rusanov_into<T: Real, L: ConservationLaw<T> + ?Sized>(
    law: &L,
    v: &[T],
    w: &[T],
    policy: ViscosityPolicy,
    out: &mut [T],
    scratch: &mut [T],
) -> T {
    let alpha = viscosity(law, v, w, policy);
    law.flux(v, out);
    law.flux(w, scratch);
    let half = T::lit(0.5);
    for k in 0..out.len() {
        out[k] = half * (out[k] + scratch[k] - alpha * (w[k] - v[k]));
    }
    alpha
}

/// Checked Rusanov flux.
pub fn rusanov<T: Real, L: ConservationLaw<T> + ?Sized>(
    law: &L,
    v: &[T],
    w: &[T],
    policy: ViscosityPolicy,
) -> Result<Vec<T>, ModelError> {
    law.check_admissible(v)?;
    law.check_admissible(w)?;
    let m = law.components();
    let mut out = vec![T::zero(); m];
    let mut scratch = vec![T::zero(); m];
    rusanov_into(law, v, w, policy, &mut out, &mut scratch);
    Ok(out)
}

/// `dF/dv = (J(v) + alpha I) / 2` and `dF/dw = (J(w) - alpha I) / 2` with
/// `alpha` held fixed, written row-major into `dv` and `dw`.
pub fn rusanov_jacobians_into<T: Real, L: ConservationLaw<T> + ?Sized>(
    law: &L,
    v: &[T],
    w: &[T],
    alpha: T,
    dv: &mut [T],
    dw: &mut [T],
) {
    let m = law.components();
    let half = T::lit(0.5);
    law.jacobian(v, dv);
    law.jacobian(w, dw);
    for x in dv.iter_mut().chain(dw.iter_mut()) {
        *x *= half;
    }
    for d in 0..m {
        dv[d * m + d] += half * alpha;
        dw[d * m + d] -= half * alpha;
    }
}

/// Checked Jacobians with the viscosity taken from `policy`.
pub fn rusanov_jacobians<T: Real, L: ConservationLaw<T> + ?Sized>(
    law: &L,
    v: &[T],
    w: &[T],
    policy: ViscosityPolicy,
) -> Result<(Vec<T>, Vec<T>), ModelError> {
    law.check_admissible(v)?;
    law.check_admissible(w)?;
    let m = law.components();
    let alpha = viscosity(law, v, w, policy);
    let mut dv = vec![T::zero(); m * m];
    let mut dw = vec![T::zero(); m * m];
    rusanov_jacobians_into(law, v, w, alpha, &mut dv, &mut dw);
    Ok((dv, dw))
}

/// Rusanov-form numerical entropy flux
/// `(psi(v) + psi(w) - alpha (eta(w) - eta(v))) / 2`.
pub fn entropy_flux<T: Real, L: ConservationLaw<T> + ?Sized>(law: &L, v: &[T], w: &[T], alpha: T) -> T {
    T::lit(0.5)
        * (law.entropy_flux(v) + law.entropy_flux(w) - alpha * (law.entropy(w) - law.entropy(v)))
}
