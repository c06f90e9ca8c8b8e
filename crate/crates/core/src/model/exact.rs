//! Closed-form and semi-analytic reference solutions.

use super::ModelError;

/// Shift of a periodic profile on `[a, b]` by `speed * t`.
pub fn periodic_shift(x: f64, t: f64, speed: f64, a: f64, b: f64) -> f64 {
    let len = b - a;
    a + (x - speed * t - a).rem_euclid(len)
}

/// Smooth periodic Burgers data `u0` on `[a, b]` solved along characteristics.
#[derive(Debug, Clone, Copy)]
pub struct BurgersCharacteristics<F> {
    u0: F,
    a: f64,
    b: f64,
    umin: f64,
    umax: f64,
    breaking_time: f64,
}

impl<F: Fn(f64) -> f64> BurgersCharacteristics<F> {
    /// Samples `u0` to bound its range and the breaking time `1 / max(-u0')`.
    pub fn new(u0: F, a: f64, b: f64) -> Self {
        let samples = 20_000;
        let dx = (b - a) / samples as f64;
        let (mut umin, mut umax, mut steepest) = (f64::INFINITY, f64::NEG_INFINITY, 0.0_f64);
        for i in 0..samples {
            let x = a + i as f64 * dx;
            let v = u0(x);
            umin = umin.min(v);
            umax = umax.max(v);
            steepest = steepest.max(-(u0(x + 0.5 * dx) - u0(x - 0.5 * dx)) / dx);
        }
        let breaking_time = if steepest > 0.0 { 1.0 / steepest } else { f64::INFINITY };
        Self {
            u0,
            a,
            b,
            umin,
            umax,
            breaking_time,
        }
    }

    pub fn breaking_time(&self) -> f64 {
        self.breaking_time
    }

    /// `u(x, t) = u0(xi)` with `xi + t u0(xi) = x`.
    pub fn eval(&self, x: f64, t: f64) -> Result<f64, ModelError> {
        if t >= self.breaking_time {
            return Err(ModelError::NoExactSolution(format!(
                "Burgers characteristics cross at t = {:.6}, requested t = {t}",
                self.breaking_time
            )));
        }
        let g = |xi: f64| xi + t * (self.u0)(periodic_shift(xi, 0.0, 0.0, self.a, self.b)) - x;
        let (mut lo, mut hi) = (x - t * self.umax - 1e-12, x - t * self.umin + 1e-12);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo < 1e-15 * (1.0 + x.abs()) {
                break;
            }
        }
        let xi = 0.5 * (lo + hi);
        Ok((self.u0)(periodic_shift(xi, 0.0, 0.0, self.a, self.b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn u0(x: f64) -> f64 {
        0.2 - (PI * x).sin() + (2.0 * PI * x).sin()
    }

    #[test]
    fn shift_wraps() {
        assert!((periodic_shift(0.1, 2.0, 1.0, -1.0, 1.0) - 0.1).abs() < 1e-14);
        assert!((periodic_shift(0.0, 0.25, 1.0, 0.0, 1.0) - 0.75).abs() < 1e-14);
    }

    #[test]
    fn characteristics_satisfy_implicit_relation() {
        let bc = BurgersCharacteristics::new(u0, -1.0, 1.0);
        let t = 0.1;
        assert!(bc.breaking_time() > t);
        for i in 0..50 {
            let x = -1.0 + 0.04 * i as f64;
            let u = bc.eval(x, t).unwrap();
            assert!((u - u0(x - t * u)).abs() < 1e-12);
        }
        assert!((bc.eval(0.3, 0.0).unwrap() - u0(0.3)).abs() < 1e-13);
    }

    #[test]
    fn breaking_time_matches_derivative_bound() {
        let bc = BurgersCharacteristics::new(u0, -1.0, 1.0);
        let mut steep: f64 = 0.0;
        for i in 0..200_000 {
            let x = -1.0 + 1e-5 * i as f64;
            steep = steep.max(PI * (PI * x).cos() - 2.0 * PI * (2.0 * PI * x).cos());
        }
        assert!((bc.breaking_time() - 1.0 / steep).abs() < 1e-6);
        assert!(bc.eval(0.0, 1.0).is_err());
    }
}
