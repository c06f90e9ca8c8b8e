//! Catalog of test problems with their initial data, defaults and exact
//! references.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::DriverError;
use crate::grid::{project_initial_condition, BoundaryCondition, Field, Grid1D};
use crate::limiter::LimiterConfig;
use crate::model::{
    periodic_shift, Burgers, BurgersCharacteristics, ConservationLaw, EntropyFluxSign, Euler, LinearAdvection, Model, Primitive,
    RiemannSolution, GAMMA,
};
use crate::numflux::ViscosityPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProblemId {
    /// Density wave advected at unit speed under pressure `10^kappa`.
    EulerConvergence { kappa: f64 },
    NonSymExpansion,
    CollidingFlows,
    StiffLax,
    LowMachConvergence { eps: f64 },
    AcousticPulses { eps: f64 },
    AdvSineBox,
    AdvDoubleStep,
    BurgersShockInteraction,
}

impl ProblemId {
    pub const NAMES: [&'static str; 9] = [
        "euler-convergence",
        "non-sym-expansion",
        "colliding-flows",
        "stiff-lax",
        "low-mach-convergence",
        "acoustic-pulses",
        "adv-sine-box",
        "adv-double-step",
        "burgers-shock-interaction",
    ];

    /// Builds an id from its CLI name; `kappa` and `eps` default to 0 and 0.8.
    pub fn from_name(name: &str, kappa: Option<f64>, eps: Option<f64>) -> Result<Self, DriverError> {
        let eps = eps.unwrap_or(0.8);
        let id = match name {
            "euler-convergence" => Self::EulerConvergence { kappa: kappa.unwrap_or(0.0) },
            "non-sym-expansion" => Self::NonSymExpansion,
            "colliding-flows" => Self::CollidingFlows,
            "stiff-lax" => Self::StiffLax,
            "low-mach-convergence" => Self::LowMachConvergence { eps },
            "acoustic-pulses" => Self::AcousticPulses { eps },
            "adv-sine-box" => Self::AdvSineBox,
            "adv-double-step" => Self::AdvDoubleStep,
            "burgers-shock-interaction" => Self::BurgersShockInteraction,
            other => {
                return Err(DriverError::Config(format!(
                    "unknown problem '{other}', expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        Ok(id)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::EulerConvergence { .. } => Self::NAMES[0],
            Self::NonSymExpansion => Self::NAMES[1],
            Self::CollidingFlows => Self::NAMES[2],
            Self::StiffLax => Self::NAMES[3],
            Self::LowMachConvergence { .. } => Self::NAMES[4],
            Self::AcousticPulses { .. } => Self::NAMES[5],
            Self::AdvSineBox => Self::NAMES[6],
            Self::AdvDoubleStep => Self::NAMES[7],
            Self::BurgersShockInteraction => Self::NAMES[8],
        }
    }

    /// Left and right primitive states of the Riemann problems.
    pub fn riemann_states(&self) -> Option<(Primitive<f64>, Primitive<f64>)> {
        match self {
            Self::NonSymExpansion => Some((Primitive::new(1.0, -0.15, 1.0), Primitive::new(0.5, 0.15, 1.0))),
            Self::CollidingFlows => Some((Primitive::new(1.5, 0.5, 10.0), Primitive::new(0.5, -0.5, 10.0))),
            Self::StiffLax => Some((Primitive::new(0.445, 0.0, 3.528), Primitive::new(0.5, 0.0, 2.528))),
            _ => None,
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EulerConvergence { kappa } => write!(f, "{}(kappa={kappa})", self.name()),
            Self::LowMachConvergence { eps } | Self::AcousticPulses { eps } => write!(f, "{}(eps={eps})", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for ProblemId {
    type Err = DriverError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_name(s, None, None)
    }
}

/// `max |v| + c / eps` of the low-Mach convergence data.
pub fn low_mach_max_speed(eps: f64) -> f64 {
    1.0 + 0.5 * (GAMMA - 1.0) + GAMMA.sqrt() / eps
}

/// Largest characteristic speed of the colliding pulses.
pub fn pulses_max_speed(eps: f64) -> f64 {
    if (eps - 1.0 / 11.0).abs() < 1e-12 {
        return 16.038;
    }
    if (eps - 1e-4).abs() < 1e-16 {
        return 1.21e4;
    }
    let e = Euler::rescaled(eps);
    let l = 2.0 / eps;
    (0..=2000)
        .map(|i| {
            let x = -l + 2.0 * l * i as f64 / 2000.0;
            let w = pulses_state(eps, x);
            w.v.abs() + e.sound_speed(w)
        })
        .fold(0.0, f64::max)
}

fn pulses_state(eps: f64, x: f64) -> Primitive<f64> {
    let l = 2.0 / eps;
    let bump = 1.0 - (2.0 * PI * x / l).cos();
    let u0 = 2.0 * GAMMA.sqrt();
    let sign = if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    };
    Primitive::new(0.955 + 0.5 * eps * 2.0 * bump, -0.5 * u0 * sign * bump, 1.0 + 0.5 * eps * 2.0 * GAMMA * bump)
}

fn low_mach_state(eps: f64, x: f64) -> Primitive<f64> {
    let v = (2.0 * PI * x / 5.0).sin();
    let rho = (1.0 + eps * (GAMMA - 1.0) * v / (2.0 * GAMMA.sqrt())).powf(2.0 / (GAMMA - 1.0));
    Primitive::new(rho, v, rho.powf(GAMMA))
}

pub fn sine_box(x: f64) -> f64 {
    (PI * x).sin() + if (-0.4..=0.4).contains(&x) { 3.0 } else { 0.0 }
}

pub fn double_step(x: f64) -> f64 {
    if (-0.25..=0.25).contains(&x) {
        1.0
    } else {
        0.0
    }
}

pub fn shock_interaction(x: f64) -> f64 {
    0.2 - (PI * x).sin() + (2.0 * PI * x).sin()
}

/// A problem with every run parameter made explicit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub domain: (f64, f64),
    pub bc: BoundaryCondition,
    pub final_time: f64,
    /// Fixed `dt / h` of the implicit schemes.
    pub dt_over_h: f64,
    pub policy: ViscosityPolicy,
    pub limiter: LimiterConfig,
    #[serde(default)]
    pub entropy_sign: EntropyFluxSign,
}

impl ProblemSpec {
    pub fn new(id: ProblemId) -> Self {
        use BoundaryCondition::{FreeFlow, Periodic};
        use ViscosityPolicy::{MaterialSpeed, Spectral};
        let (domain, bc, final_time, dt_over_h, policy, gamma2) = match id {
            ProblemId::EulerConvergence { .. } => ((0.0, 1.0), Periodic, 1.0, 4.0, MaterialSpeed, 0.1),
            ProblemId::NonSymExpansion => ((-2.0, 2.0), FreeFlow, 1.0, 6.66, MaterialSpeed, 1.0),
            ProblemId::CollidingFlows => ((-5.0, 5.0), FreeFlow, 1.0, 2.0, MaterialSpeed, 1.0),
            ProblemId::StiffLax => ((-1.0, 1.0), FreeFlow, 0.15, 2.83, MaterialSpeed, 1.0),
            ProblemId::LowMachConvergence { eps } => {
                let t = if eps < 0.01 { 0.01 } else { 0.3 };
                ((-2.5, 2.5), Periodic, t, 20.0 / low_mach_max_speed(eps), MaterialSpeed, 0.1)
            }
            ProblemId::AcousticPulses { eps } => {
                let l = 2.0 / eps;
                ((-l, l), Periodic, 1.63, 6.78 / pulses_max_speed(eps), MaterialSpeed, 0.1)
            }
            ProblemId::AdvSineBox | ProblemId::AdvDoubleStep => ((-1.0, 1.0), Periodic, 2.0, 5.0, Spectral, 0.1),
            ProblemId::BurgersShockInteraction => ((-1.0, 1.0), Periodic, 0.6, 3.0, Spectral, 0.1),
        };
        Self {
            id,
            domain,
            bc,
            final_time,
            dt_over_h,
            policy,
            limiter: LimiterConfig {
                gamma2,
                ..LimiterConfig::default()
            },
            entropy_sign: EntropyFluxSign::default(),
        }
    }

    pub fn validate(&self) -> Result<(), DriverError> {
        let (a, b) = self.domain;
        if !(b > a) || !(self.final_time > 0.0) || !(self.dt_over_h > 0.0) {
            return Err(DriverError::Config(format!("invalid problem parameters: {self:?}")));
        }
        match self.id {
            ProblemId::LowMachConvergence { eps } | ProblemId::AcousticPulses { eps } if !(eps > 0.0) => {
                Err(DriverError::Config(format!("eps must be positive, got {eps}")))
            }
            _ => self.limiter.validate().map_err(|e| DriverError::Config(e.to_string())),
        }
    }

    pub fn model(&self) -> Model<f64> {
        match self.id {
            ProblemId::AdvSineBox | ProblemId::AdvDoubleStep => Model::Advection(LinearAdvection),
            ProblemId::BurgersShockInteraction => Model::Burgers(Burgers),
            ProblemId::LowMachConvergence { eps } | ProblemId::AcousticPulses { eps } => {
                Model::Euler(Euler::rescaled(eps).with_entropy_sign(self.entropy_sign))
            }
            _ => Model::Euler(Euler::standard().with_entropy_sign(self.entropy_sign)),
        }
    }

    pub fn grid(&self, cells: usize) -> Result<Grid1D<f64>, DriverError> {
        Ok(Grid1D::new(self.domain.0, self.domain.1, cells)?)
    }

    fn euler(&self) -> Euler<f64> {
        match self.model() {
            Model::Euler(e) => e,
            _ => Euler::standard(),
        }
    }

    /// Pointwise initial state in conserved variables.
    fn state(&self, x: f64, out: &mut [f64]) {
        let e = self.euler();
        match self.id {
            ProblemId::EulerConvergence { kappa } => {
                out.copy_from_slice(&e.to_conserved(Primitive::new(1.0 + 0.5 * (2.0 * PI * x).sin(), 1.0, 10f64.powf(kappa))))
            }
            ProblemId::LowMachConvergence { eps } => out.copy_from_slice(&e.to_conserved(low_mach_state(eps, x))),
            ProblemId::AcousticPulses { eps } => out.copy_from_slice(&e.to_conserved(pulses_state(eps, x))),
            ProblemId::AdvSineBox => out[0] = sine_box(x),
            ProblemId::AdvDoubleStep => out[0] = double_step(x),
            ProblemId::BurgersShockInteraction => out[0] = shock_interaction(x),
            ProblemId::NonSymExpansion | ProblemId::CollidingFlows | ProblemId::StiffLax => {
                let (l, r) = self.id.riemann_states().expect("riemann problem");
                out.copy_from_slice(&e.to_conserved(if x < 0.0 { l } else { r }));
            }
        }
    }

    /// Cell averages of the initial data. Riemann data are assigned per cell
    /// and need an even number of cells so that the jump is an interface.
    pub fn initial_field(&self, grid: &Grid1D<f64>) -> Result<Field<f64>, DriverError> {
        let m = self.model().components();
        if self.id.riemann_states().is_some() {
            if grid.cells() % 2 != 0 || self.domain.0 != -self.domain.1 {
                return Err(DriverError::Config(format!(
                    "{} needs an even cell count on a symmetric domain",
                    self.id
                )));
            }
            let mut f = Field::zeros(grid.cells(), m);
            for j in 0..grid.cells() {
                self.state(grid.center(j), f.row_mut(j));
            }
            return Ok(f);
        }
        Ok(project_initial_condition(|x, u| self.state(x, u), grid, m))
    }

    /// Exact cell averages at time `t` when a closed-form or semi-analytic
    /// solution exists.
    pub fn exact_field(&self, grid: &Grid1D<f64>, t: f64) -> Result<Option<Field<f64>>, DriverError> {
        let (a, b) = self.domain;
        let m = self.model().components();
        let field = match self.id {
            ProblemId::EulerConvergence { .. } => {
                let spec = *self;
                project_initial_condition(move |x, u| spec.state(periodic_shift(x, t, 1.0, a, b), u), grid, m)
            }
            ProblemId::AdvSineBox | ProblemId::AdvDoubleStep => {
                let spec = *self;
                project_initial_condition(move |x, u| spec.state(periodic_shift(x, t, 1.0, a, b), u), grid, m)
            }
            ProblemId::BurgersShockInteraction => {
                let chars = BurgersCharacteristics::new(shock_interaction, a, b);
                if t >= chars.breaking_time() {
                    return Ok(None);
                }
                let mut err = None;
                let f = project_initial_condition(
                    |x, u| match chars.eval(x, t) {
                        Ok(v) => u[0] = v,
                        Err(e) => {
                            u[0] = f64::NAN;
                            err = Some(e);
                        }
                    },
                    grid,
                    1,
                );
                if let Some(e) = err {
                    return Err(e.into());
                }
                f
            }
            ProblemId::NonSymExpansion | ProblemId::CollidingFlows | ProblemId::StiffLax => {
                let (l, r) = self.id.riemann_states().expect("riemann problem");
                let sol = RiemannSolution::solve(GAMMA, l, r)?;
                let mut f = Field::zeros(grid.cells(), 3);
                for j in 0..grid.cells() {
                    f.row_mut(j)
                        .copy_from_slice(&sol.cell_average(0.0, t, grid.interface(j), grid.interface(j + 1)));
                }
                f
            }
            ProblemId::LowMachConvergence { .. } | ProblemId::AcousticPulses { .. } => return Ok(None),
        };
        Ok(Some(field))
    }

    /// Speed of the contact wave of the Riemann problems.
    pub fn contact_speed(&self) -> Result<Option<f64>, DriverError> {
        match self.id.riemann_states() {
            Some((l, r)) => Ok(Some(RiemannSolution::solve(GAMMA, l, r)?.contact_speed())),
            None => Ok(None),
        }
    }

    /// Component on which errors are measured: density for Euler, else the scalar.
    pub fn error_component(&self) -> usize {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_ratios_follow_courant_numbers() {
        assert!((low_mach_max_speed(0.8) - 2.6786).abs() < 1e-3);
        assert!((low_mach_max_speed(0.3) - 5.1439).abs() < 1e-3);
        assert!((low_mach_max_speed(1e-4) / 1.1833e4 - 1.0).abs() < 1e-4);
        let p = ProblemSpec::new(ProblemId::AcousticPulses { eps: 1.0 / 11.0 });
        assert!((p.dt_over_h - 0.423).abs() < 1e-3);
        let p = ProblemSpec::new(ProblemId::AcousticPulses { eps: 1e-4 });
        assert!((p.dt_over_h - 5.59e-4).abs() < 2e-6);
        assert_eq!(ProblemSpec::new(ProblemId::StiffLax).dt_over_h, 2.83);
    }

    #[test]
    fn riemann_data_are_sharp() {
        let p = ProblemSpec::new(ProblemId::CollidingFlows);
        let g = p.grid(10).unwrap();
        let u = p.initial_field(&g).unwrap();
        assert_eq!(u.get(4, 0), 1.5);
        assert_eq!(u.get(5, 0), 0.5);
        assert!(p.initial_field(&p.grid(11).unwrap()).is_err());
        let exact = p.exact_field(&g, 0.0).unwrap().unwrap();
        assert!(exact.as_slice().iter().zip(u.as_slice()).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn names_round_trip() {
        for name in ProblemId::NAMES {
            assert_eq!(ProblemId::from_name(name, None, None).unwrap().name(), name);
        }
        assert!(ProblemId::from_name("sod", None, None).is_err());
    }

    #[test]
    fn pulses_are_periodic() {
        let eps = 1.0 / 11.0;
        let l = 2.0 / eps;
        let (a, b) = (pulses_state(eps, -l), pulses_state(eps, l));
        assert!((a.rho - b.rho).abs() < 1e-12 && (a.v - b.v).abs() < 1e-12);
        assert!(pulses_max_speed(0.5) > 2.0 * GAMMA.sqrt());
    }
}
