//! Exact solution of the Riemann problem for the standard Euler system.

use super::euler::Primitive;
use super::ModelError;
use crate::grid::gauss5_average;

const MAX_ITER: usize = 100;
const TOL: f64 = 1e-12;

/// One of the two acoustic waves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wave {
    Shock { speed: f64 },
    Rarefaction { head: f64, tail: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannSolution {
    pub gamma: f64,
    pub left: Primitive<f64>,
    pub right: Primitive<f64>,
    pub p_star: f64,
    pub u_star: f64,
    pub rho_star_left: f64,
    pub rho_star_right: f64,
    pub left_wave: Wave,
    pub right_wave: Wave,
}

fn sound(gamma: f64, w: &Primitive<f64>) -> f64 {
    (gamma * w.p / w.rho).sqrt()
}

/// Pressure function `f_K` and its derivative.
fn pressure_function(gamma: f64, p: f64, w: &Primitive<f64>) -> (f64, f64) {
    let c = sound(gamma, w);
    if p > w.p {
        let a = 2.0 / ((gamma + 1.0) * w.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * w.p;
        let q = (a / (p + b)).sqrt();
        (
            (p - w.p) * q,
            q * (1.0 - 0.5 * (p - w.p) / (b + p)),
        )
    } else {
        let r = p / w.p;
        let ex = (gamma - 1.0) / (2.0 * gamma);
        (
            2.0 * c / (gamma - 1.0) * (r.powf(ex) - 1.0),
            r.powf(-(gamma + 1.0) / (2.0 * gamma)) / (w.rho * c),
        )
    }
}

/// Two-rarefaction or two-shock initial guess, selected around the
/// linearised star pressure.
fn initial_pressure(gamma: f64, l: &Primitive<f64>, r: &Primitive<f64>) -> f64 {
    let (cl, cr) = (sound(gamma, l), sound(gamma, r));
    let pv = 0.5 * (l.p + r.p) - 0.125 * (r.v - l.v) * (l.rho + r.rho) * (cl + cr);
    let pv = pv.max(TOL);
    let (pmin, pmax) = (l.p.min(r.p), l.p.max(r.p));
    if pmax / pmin < 2.0 && pmin <= pv && pv <= pmax {
        return pv;
    }
    if pv < pmin {
        let ex = (gamma - 1.0) / (2.0 * gamma);
        let num = cl + cr - 0.5 * (gamma - 1.0) * (r.v - l.v);
        let den = cl / l.p.powf(ex) + cr / r.p.powf(ex);
        (num / den).powf(1.0 / ex)
    } else {
        let g = |w: &Primitive<f64>| {
            let a = 2.0 / ((gamma + 1.0) * w.rho);
            let b = (gamma - 1.0) / (gamma + 1.0) * w.p;
            (a / (pv + b)).sqrt()
        };
        let (gl, gr) = (g(l), g(r));
        ((gl * l.p + gr * r.p - (r.v - l.v)) / (gl + gr)).max(TOL)
    }
}

impl RiemannSolution {
    pub fn solve(gamma: f64, left: Primitive<f64>, right: Primitive<f64>) -> Result<Self, ModelError> {
        for w in [&left, &right] {
            if !(w.rho > 0.0 && w.p > 0.0 && w.v.is_finite()) {
                return Err(ModelError::Inadmissible {
                    density: w.rho,
                    pressure: w.p,
                });
            }
        }
        let (cl, cr) = (sound(gamma, &left), sound(gamma, &right));
        let margin = 2.0 * (cl + cr) / (gamma - 1.0) - (right.v - left.v);
        if margin <= 0.0 {
            return Err(ModelError::Vacuum(margin));
        }
        let du = right.v - left.v;
        let residual = |p: f64| {
            let (fl, dl) = pressure_function(gamma, p, &left);
            let (fr, dr) = pressure_function(gamma, p, &right);
            (fl + fr + du, dl + dr)
        };

        // Newton on the monotone pressure equation, safeguarded by a bracket.
        let mut lo = 0.0;
        let mut hi = left.p.max(right.p).max(1.0);
        while residual(hi).0 < 0.0 {
            hi *= 2.0;
        }
        let mut p = initial_pressure(gamma, &left, &right).clamp(lo, hi);
        let scale = left.p.max(right.p);
        let mut converged = false;
        for _ in 0..MAX_ITER {
            let (f, df) = residual(p);
            if f.abs() <= TOL * (1.0 + scale) {
                converged = true;
                break;
            }
            if f > 0.0 {
                hi = p;
            } else {
                lo = p;
            }
            let mut next = p - f / df;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - p).abs() <= TOL * p {
                p = next;
                converged = true;
                break;
            }
            p = next;
        }
        if !converged {
            return Err(ModelError::RiemannNoConvergence(MAX_ITER));
        }

        let (fl, _) = pressure_function(gamma, p, &left);
        let (fr, _) = pressure_function(gamma, p, &right);
        let u_star = 0.5 * (left.v + right.v) + 0.5 * (fr - fl);
        let gr = (gamma - 1.0) / (gamma + 1.0);
        let ex = (gamma - 1.0) / (2.0 * gamma);

        let (rho_star_left, left_wave) = if p > left.p {
            let ratio = p / left.p;
            let speed = left.v - cl * ((gamma + 1.0) / (2.0 * gamma) * ratio + ex).sqrt();
            (left.rho * (ratio + gr) / (gr * ratio + 1.0), Wave::Shock { speed })
        } else {
            let c_star = cl * (p / left.p).powf(ex);
            (
                left.rho * (p / left.p).powf(1.0 / gamma),
                Wave::Rarefaction {
                    head: left.v - cl,
                    tail: u_star - c_star,
                },
            )
        };
        let (rho_star_right, right_wave) = if p > right.p {
            let ratio = p / right.p;
            let speed = right.v + cr * ((gamma + 1.0) / (2.0 * gamma) * ratio + ex).sqrt();
            (right.rho * (ratio + gr) / (gr * ratio + 1.0), Wave::Shock { speed })
        } else {
            let c_star = cr * (p / right.p).powf(ex);
            (
                right.rho * (p / right.p).powf(1.0 / gamma),
                Wave::Rarefaction {
                    head: right.v + cr,
                    tail: u_star + c_star,
                },
            )
        };

        Ok(Self {
            gamma,
            left,
            right,
            p_star: p,
            u_star,
            rho_star_left,
            rho_star_right,
            left_wave,
            right_wave,
        })
    }

    pub fn contact_speed(&self) -> f64 {
        self.u_star
    }

    /// Solution at `x / t = s`.
    pub fn sample(&self, s: f64) -> Primitive<f64> {
        let g = self.gamma;
        if s <= self.u_star {
            match self.left_wave {
                Wave::Shock { speed } if s <= speed => self.left,
                Wave::Shock { .. } => Primitive::new(self.rho_star_left, self.u_star, self.p_star),
                Wave::Rarefaction { head, .. } if s <= head => self.left,
                Wave::Rarefaction { tail, .. } if s >= tail => {
                    Primitive::new(self.rho_star_left, self.u_star, self.p_star)
                }
                Wave::Rarefaction { .. } => {
                    let w = self.left;
                    let c = sound(g, &w);
                    let base = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (w.v - s);
                    Primitive::new(
                        w.rho * base.powf(2.0 / (g - 1.0)),
                        2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.v + s),
                        w.p * base.powf(2.0 * g / (g - 1.0)),
                    )
                }
            }
        } else {
            match self.right_wave {
                Wave::Shock { speed } if s >= speed => self.right,
                Wave::Shock { .. } => Primitive::new(self.rho_star_right, self.u_star, self.p_star),
                Wave::Rarefaction { head, .. } if s >= head => self.right,
                Wave::Rarefaction { tail, .. } if s <= tail => {
                    Primitive::new(self.rho_star_right, self.u_star, self.p_star)
                }
                Wave::Rarefaction { .. } => {
                    let w = self.right;
                    let c = sound(g, &w);
                    let base = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (w.v - s);
                    Primitive::new(
                        w.rho * base.powf(2.0 / (g - 1.0)),
                        2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.v + s),
                        w.p * base.powf(2.0 * g / (g - 1.0)),
                    )
                }
            }
        }
    }

    /// Speeds at which the solution is not smooth, in increasing order.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut s = Vec::with_capacity(5);
        match self.left_wave {
            Wave::Shock { speed } => s.push(speed),
            Wave::Rarefaction { head, tail } => s.extend([head, tail]),
        }
        s.push(self.u_star);
        match self.right_wave {
            Wave::Shock { speed } => s.push(speed),
            Wave::Rarefaction { head, tail } => s.extend([tail, head]),
        }
        s
    }

    /// Conserved state `(rho, rho v, E)` at `x / t = s`.
    pub fn conserved(&self, s: f64) -> [f64; 3] {
        let w = self.sample(s);
        [w.rho, w.rho * w.v, w.p / (self.gamma - 1.0) + 0.5 * w.rho * w.v * w.v]
    }

    /// Average of the conserved state over `[a, b]` at time `t > 0` for a
    /// discontinuity initially located at `x0`.
    pub fn cell_average(&self, x0: f64, t: f64, a: f64, b: f64) -> [f64; 3] {
        let mut cuts = vec![a];
        cuts.extend(
            self.breakpoints()
                .into_iter()
                .map(|s| x0 + s * t)
                .filter(|&x| x > a && x < b),
        );
        cuts.push(b);
        let mut acc = [0.0; 3];
        for pair in cuts.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            if hi <= lo {
                continue;
            }
            let mut avg = [0.0; 3];
            let mut f = |x: f64, out: &mut [f64]| out.copy_from_slice(&self.conserved((x - x0) / t));
            gauss5_average(lo, hi, 3, &mut f, &mut avg);
            for (slot, v) in acc.iter_mut().zip(avg) {
                *slot += v * (hi - lo);
            }
        }
        acc.map(|v| v / (b - a))
    }
}
