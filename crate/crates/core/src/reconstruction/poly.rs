//! Candidate polynomials of the third-order reconstruction, written in the
//! local variable `xi = (x - x_j) / h`.

use crate::scalar::Real;

/// `c[0] + c[1] xi + c[2] xi^2` on the reference cell `xi in [-1/2, 1/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadratic<T> {
    pub c: [T; 3],
}

impl<T: Real> Quadratic<T> {
    pub fn new(c0: T, c1: T, c2: T) -> Self {
        Self { c: [c0, c1, c2] }
    }

    pub fn constant(v: T) -> Self {
        Self::new(v, T::zero(), T::zero())
    }

    pub fn linear(v: T, slope: T) -> Self {
        Self::new(v, slope, T::zero())
    }

    #[inline]
    pub fn eval(&self, xi: T) -> T {
        self.c[0] + xi * (self.c[1] + xi * self.c[2])
    }

    /// Mean over the reference cell.
    pub fn average(&self) -> T {
        self.c[0] + self.c[2] / T::lit(12.0)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(s * self.c[0], s * self.c[1], s * self.c[2])
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2])
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.c[0] - o.c[0], self.c[1] - o.c[1], self.c[2] - o.c[2])
    }
}

/// Jiang-Shu indicator. In the scaled variable the powers of `h` cancel:
/// `I = c1^2 + (13/3) c2^2`.
pub fn jiang_shu_indicator<T: Real>(p: &Quadratic<T>) -> T {
    p.c[1] * p.c[1] + T::lit(13.0 / 3.0) * p.c[2] * p.c[2]
}

/// Central parabola through the averages `(a, b, c)` of cells `j-1, j, j+1`.
pub fn central_parabola<T: Real>(a: T, b: T, c: T) -> Quadratic<T> {
    let c2 = T::lit(0.5) * (a - T::lit(2.0) * b + c);
    Quadratic::new(b - c2 / T::lit(12.0), T::lit(0.5) * (c - a), c2)
}

/// Parabola through three consecutive averages, written in the frame of the
/// first cell of the stencil.
pub fn first_cell_parabola<T: Real>(u0: T, u1: T, u2: T) -> Quadratic<T> {
    let c2 = T::lit(0.5) * (u0 - T::lit(2.0) * u1 + u2);
    let c1 = T::lit(0.5) * (T::lit(-3.0) * u0 + T::lit(4.0) * u1 - u2);
    Quadratic::new(u0 - c2 / T::lit(12.0), c1, c2)
}

/// Parabola through three consecutive averages, written in the frame of the
/// last cell of the stencil.
pub fn last_cell_parabola<T: Real>(u0: T, u1: T, u2: T) -> Quadratic<T> {
    let c2 = T::lit(0.5) * (u0 - T::lit(2.0) * u1 + u2);
    let c1 = T::lit(0.5) * (u0 - T::lit(4.0) * u1 + T::lit(3.0) * u2);
    Quadratic::new(u2 - c2 / T::lit(12.0), c1, c2)
}

/// Linear coefficient maps: `MAP[alpha][p]` is the coefficient of `xi^p`
/// multiplying the `alpha`-th stencil average.
pub(crate) type CoeffMap = [[f64; 3]; 3];

pub(crate) const INTERIOR_OPT: CoeffMap = [
    [-1.0 / 24.0, -0.5, 0.5],
    [13.0 / 12.0, 0.0, -1.0],
    [-1.0 / 24.0, 0.5, 0.5],
];
pub(crate) const INTERIOR_LEFT: CoeffMap = [[0.0, -1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 0.0]];
pub(crate) const INTERIOR_RIGHT: CoeffMap = [[0.0, 0.0, 0.0], [1.0, -1.0, 0.0], [0.0, 1.0, 0.0]];

pub(crate) const FIRST_OPT: CoeffMap = [
    [23.0 / 24.0, -1.5, 0.5],
    [1.0 / 12.0, 2.0, -1.0],
    [-1.0 / 24.0, -0.5, 0.5],
];
pub(crate) const FIRST_LINEAR: CoeffMap = [[1.0, -1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]];
pub(crate) const FIRST_CONST: CoeffMap = [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]];

pub(crate) const LAST_OPT: CoeffMap = [
    [-1.0 / 24.0, 0.5, 0.5],
    [1.0 / 12.0, -2.0, -1.0],
    [23.0 / 24.0, 1.5, 0.5],
];
pub(crate) const LAST_LINEAR: CoeffMap = [[0.0, 0.0, 0.0], [0.0, -1.0, 0.0], [1.0, 1.0, 0.0]];
pub(crate) const LAST_CONST: CoeffMap = [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]];

#[cfg(test)]
mod tests {
    use super::*;

    fn integrate(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
        // composite Simpson, exact for the cubic-or-lower integrands used here
        let n = 64;
        let h = (hi - lo) / n as f64;
        let mut s = f(lo) + f(hi);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(lo + k as f64 * h);
        }
        s * h / 3.0
    }

    /// Jiang-Shu integral in physical coordinates for a cell of width `h`.
    fn physical_indicator(p: &Quadratic<f64>, h: f64) -> f64 {
        let d1 = |x: f64| (p.c[1] + 2.0 * p.c[2] * x / h) / h;
        let d2 = 2.0 * p.c[2] / (h * h);
        h * integrate(|x| d1(x).powi(2), -h / 2.0, h / 2.0)
            + h.powi(3) * integrate(|_| d2 * d2, -h / 2.0, h / 2.0)
    }

    #[test]
    fn indicator_values() {
        assert_eq!(jiang_shu_indicator(&Quadratic::constant(3.0)), 0.0);
        assert_eq!(jiang_shu_indicator(&Quadratic::linear(0.0, 1.0)), 1.0);
        let sq = Quadratic::new(0.0, 0.0, 1.0);
        assert!((jiang_shu_indicator(&sq) - physical_indicator(&sq, 1.0)).abs() < 1e-13);
        for h in [1.0, 0.37, 0.01] {
            let p = Quadratic::new(0.3, -1.7, 2.2);
            let oracle = physical_indicator(&p, h);
            assert!((jiang_shu_indicator(&p) - oracle).abs() < 1e-11 * oracle);
        }
    }

    fn cell_avg(p: &Quadratic<f64>, center: f64) -> f64 {
        integrate(|xi| p.eval(xi), center - 0.5, center + 0.5)
    }

    #[test]
    fn parabolas_reproduce_averages() {
        let (a, b, c) = (0.7, -1.3, 2.9);
        let p = central_parabola(a, b, c);
        for (k, v) in [(-1.0, a), (0.0, b), (1.0, c)] {
            assert!((cell_avg(&p, k) - v).abs() < 1e-13);
        }
        let p = first_cell_parabola(a, b, c);
        for (k, v) in [(0.0, a), (1.0, b), (2.0, c)] {
            assert!((cell_avg(&p, k) - v).abs() < 1e-13);
        }
        let p = last_cell_parabola(a, b, c);
        for (k, v) in [(-2.0, a), (-1.0, b), (0.0, c)] {
            assert!((cell_avg(&p, k) - v).abs() < 1e-13);
        }
    }

    fn apply(map: &CoeffMap, u: [f64; 3]) -> Quadratic<f64> {
        let mut c = [0.0; 3];
        for a in 0..3 {
            for p in 0..3 {
                c[p] += map[a][p] * u[a];
            }
        }
        Quadratic { c }
    }

    #[test]
    fn coefficient_maps_match_closed_forms() {
        let u = [0.7, -1.3, 2.9];
        let pairs = [
            (apply(&INTERIOR_OPT, u), central_parabola(u[0], u[1], u[2])),
            (apply(&INTERIOR_LEFT, u), Quadratic::linear(u[1], u[1] - u[0])),
            (apply(&INTERIOR_RIGHT, u), Quadratic::linear(u[1], u[2] - u[1])),
            (apply(&FIRST_OPT, u), first_cell_parabola(u[0], u[1], u[2])),
            (apply(&FIRST_LINEAR, u), Quadratic::linear(u[0], u[1] - u[0])),
            (apply(&FIRST_CONST, u), Quadratic::constant(u[0])),
            (apply(&LAST_OPT, u), last_cell_parabola(u[0], u[1], u[2])),
            (apply(&LAST_LINEAR, u), Quadratic::linear(u[2], u[2] - u[1])),
            (apply(&LAST_CONST, u), Quadratic::constant(u[2])),
        ];
        for (m, p) in pairs {
            for k in 0..3 {
                assert!((m.c[k] - p.c[k]).abs() < 1e-14, "{m:?} vs {p:?}");
            }
        }
    }
}
