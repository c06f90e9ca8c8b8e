//! Butcher tableaus of diagonally implicit Runge-Kutta schemes.

use super::TimeIntError;
use crate::scalar::Real;

/// Parameter of the three-stage, third-order, L-stable DIRK.
pub const ALEXANDER_LAMBDA: f64 = 0.4358665215;

/// Lower-triangular tableau with `s` stages; `a` is row-major `s x s`.
#[derive(Debug, Clone, PartialEq)]
pub struct ButcherTableau<T> {
    s: usize,
    a: Vec<T>,
    b: Vec<T>,
    c: Vec<T>,
}

impl<T: Real> ButcherTableau<T> {
    pub fn new(a: Vec<T>, b: Vec<T>, c: Vec<T>) -> Result<Self, TimeIntError> {
        let s = b.len();
        if s == 0 || a.len() != s * s || c.len() != s {
            return Err(TimeIntError::InvalidTableau("inconsistent sizes".into()));
        }
        let tol = T::lit(1e-12);
        for k in 0..s {
            if (k + 1..s).any(|i| a[k * s + i] != T::zero()) {
                return Err(TimeIntError::InvalidTableau(format!("row {k} is not lower triangular")));
            }
            let row: T = (0..s).fold(T::zero(), |acc, i| acc + a[k * s + i]);
            if (row - c[k]).abs() > tol {
                return Err(TimeIntError::InvalidTableau(format!("c[{k}] differs from the row sum")));
            }
            if a[k * s + k] <= T::zero() {
                return Err(TimeIntError::InvalidTableau(format!("a[{k}][{k}] must be positive")));
            }
        }
        let bsum = b.iter().fold(T::zero(), |acc, &x| acc + x);
        if (bsum - T::one()).abs() > tol {
            return Err(TimeIntError::InvalidTableau("weights do not sum to one".into()));
        }
        Ok(Self { s, a, b, c })
    }

    /// Three-stage third-order DIRK with `lambda = 0.4358665215`.
    pub fn alexander3() -> Self {
        let l = T::lit(ALEXANDER_LAMBDA);
        let z = T::zero();
        let half = T::lit(0.5);
        let b1 = T::lit(-1.5) * l * l + T::lit(4.0) * l - T::lit(0.25);
        let b2 = T::lit(1.5) * l * l - T::lit(5.0) * l + T::lit(1.25);
        let a = vec![l, z, z, (T::one() - l) * half, l, z, b1, b2, l];
        // row sums fix c exactly
        let c = vec![l, (T::one() - l) * half + l, b1 + b2 + l];
        let b = vec![b1, b2, l];
        Self::new(a, b, c).expect("valid tableau")
    }

    /// Composite backward Euler on the abscissae `c`: `a_ki = theta_i` for `i <= k`.
    pub fn composite_backward_euler(c: &[T]) -> Result<Self, TimeIntError> {
        let theta = theta_coefficients(c)?;
        let s = c.len();
        let mut a = vec![T::zero(); s * s];
        for k in 0..s {
            for i in 0..=k {
                a[k * s + i] = theta[i];
            }
        }
        let mut cc = Vec::with_capacity(s);
        let mut acc = T::zero();
        for &t in &theta {
            acc += t;
            cc.push(acc);
        }
        // weights sum to c_s; the constructor wants one
        if (acc - T::one()).abs() > T::lit(1e-12) {
            return Err(TimeIntError::InvalidTableau("last abscissa must be one".into()));
        }
        Self::new(a, theta, cc)
    }

    pub fn stages(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn a(&self, k: usize, i: usize) -> T {
        self.a[k * self.s + i]
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    pub fn c(&self) -> &[T] {
        &self.c
    }

    /// The last row of `a` equals `b`.
    pub fn is_stiffly_accurate(&self) -> bool {
        (0..self.s).all(|i| self.a(self.s - 1, i) == self.b[i])
    }
}

/// `theta_k = c_k - c_{k-1}` with `c_0 = 0`.
pub fn theta_coefficients<T: Real>(c: &[T]) -> Result<Vec<T>, TimeIntError> {
    let mut prev = T::zero();
    let mut out = Vec::with_capacity(c.len());
    for (k, &ck) in c.iter().enumerate() {
        if !(ck > prev) && !(k > 0 && ck == prev) {
            return Err(TimeIntError::InvalidTableau(format!("abscissae not increasing at stage {k}")));
        }
        out.push(ck - prev);
        prev = ck;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_examples() {
        let l = ALEXANDER_LAMBDA;
        let th = theta_coefficients(&[l, 0.5 * (1.0 + l), 1.0]).unwrap();
        assert!((th[0] - 0.4358665).abs() < 1e-7);
        assert!((th[1] - 0.2820667).abs() < 1e-7);
        assert!((th[2] - 0.2820667).abs() < 1e-7);
        assert!((th.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert_eq!(theta_coefficients(&[1.0]).unwrap(), vec![1.0]);
        assert!(theta_coefficients(&[0.5, 0.3]).is_err());
    }

    #[test]
    fn alexander_is_third_order() {
        let t = ButcherTableau::<f64>::alexander3();
        let (b, c) = (t.b(), t.c());
        let s = t.stages();
        let bc: f64 = (0..s).map(|k| b[k] * c[k]).sum();
        let bc2: f64 = (0..s).map(|k| b[k] * c[k] * c[k]).sum();
        let bac: f64 = (0..s)
            .map(|k| b[k] * (0..s).map(|i| t.a(k, i) * c[i]).sum::<f64>())
            .sum();
        assert!((bc - 0.5).abs() < 1e-9);
        assert!((bc2 - 1.0 / 3.0).abs() < 1e-9);
        assert!((bac - 1.0 / 6.0).abs() < 1e-9);
        assert!(t.is_stiffly_accurate());
        assert!((c[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn composite_be_shares_abscissae() {
        let t = ButcherTableau::<f64>::alexander3();
        let p = ButcherTableau::composite_backward_euler(t.c()).unwrap();
        for k in 0..3 {
            assert!((p.c()[k] - t.c()[k]).abs() < 1e-15);
        }
        assert!(p.is_stiffly_accurate());
        assert_eq!(p.a(2, 0), p.a(1, 0));
    }
}
