//! Time loop of one simulation with blow-up detection and bookkeeping.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::norms::restrict;
use super::problems::ProblemSpec;
use super::stats::{limiter_statistics, LimitEvent, LimiterStats};
use super::DriverError;
use crate::grid::{Field, Grid1D};
use crate::limiter::{EntropyReport, LimiterConfig, Strategy};
use crate::timeint::{cfl_time_step, NewtonConfig, Quinpi, QuinpiConfig, Ssprk3, TimeIntError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Quinpi without time limiting.
    Q3,
    QI1,
    QI2,
    QI3,
    /// SSPRK3 with CWENOZ at an adaptive CFL time step.
    Explicit,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::Q3, Scheme::QI1, Scheme::QI2, Scheme::QI3, Scheme::Explicit];

    pub fn strategy(self) -> Option<Strategy> {
        match self {
            Scheme::Q3 => Some(Strategy::None),
            Scheme::QI1 => Some(Strategy::I1),
            Scheme::QI2 => Some(Strategy::I2),
            Scheme::QI3 => Some(Strategy::I3),
            Scheme::Explicit => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Q3 => "q3",
            Scheme::QI1 => "qi1",
            Scheme::QI2 => "qi2",
            Scheme::QI3 => "qi3",
            Scheme::Explicit => "explicit",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = DriverError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| DriverError::Config(format!("unknown scheme '{s}', expected q3, qi1, qi2, qi3 or explicit")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunOptions {
    pub cells: usize,
    pub scheme: Scheme,
    pub newton: NewtonConfig,
    /// Courant number of the explicit scheme.
    pub explicit_cfl: f64,
    /// Blow-up when `max |U|` exceeds this multiple of its initial value.
    pub blowup_factor: f64,
    /// Keep the full entropy report of every step.
    pub keep_reports: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            cells: 200,
            scheme: Scheme::QI3,
            newton: NewtonConfig::default(),
            explicit_cfl: 0.4,
            blowup_factor: 1e6,
            keep_reports: false,
        }
    }
}

impl RunOptions {
    pub fn new(cells: usize, scheme: Scheme) -> Self {
        Self {
            cells,
            scheme,
            ..Self::default()
        }
    }
}

/// Per-step bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepSummary {
    pub step: usize,
    /// Time level reached.
    pub time: f64,
    pub dt: f64,
    pub limited_fluxes: usize,
    pub marked_cells: usize,
    pub loops: usize,
    pub newton_iterations: usize,
    pub hit_max_loops: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowUp {
    /// Last time level reached before the failure.
    pub time: f64,
    pub step: usize,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub spec: ProblemSpec,
    pub options: RunOptions,
    pub grid: Grid1D<f64>,
    pub initial: Field<f64>,
    pub field: Field<f64>,
    pub time: f64,
    pub steps: Vec<StepSummary>,
    pub events: Vec<LimitEvent>,
    /// Filled when `keep_reports` is set.
    pub reports: Vec<EntropyReport<f64>>,
    /// Report of the last completed implicit step.
    pub last_report: Option<EntropyReport<f64>>,
    pub blowup: Option<BlowUp>,
    pub wall_time: Duration,
}

impl RunReport {
    pub fn completed(&self) -> bool {
        self.blowup.is_none()
    }

    pub fn newton_iterations(&self) -> usize {
        self.steps.iter().map(|s| s.newton_iterations).sum()
    }

    pub fn stats(&self) -> LimiterStats {
        if !self.reports.is_empty() {
            return limiter_statistics(&self.reports);
        }
        let counts: Vec<usize> = self.steps.iter().map(|s| s.limited_fluxes).collect();
        LimiterStats::from_counts(&counts)
    }
}

fn is_breakdown(e: &TimeIntError) -> bool {
    matches!(e, TimeIntError::Newton { .. } | TimeIntError::Model(_))
}

/// Integrates `spec` to its final time with the chosen scheme. Solver
/// breakdowns and growth beyond `blowup_factor` end the run early with
/// [`RunReport::blowup`] set.
pub fn run_problem(spec: &ProblemSpec, opts: &RunOptions) -> Result<RunReport, DriverError> {
    spec.validate()?;
    if !(opts.explicit_cfl > 0.0) || !(opts.blowup_factor > 1.0) {
        return Err(DriverError::Config(format!("invalid run options: {opts:?}")));
    }
    let grid = spec.grid(opts.cells)?;
    let law = spec.model();
    let initial = spec.initial_field(&grid)?;
    let limit = opts.blowup_factor * initial.max_abs();
    let h = grid.h();
    let t_end = spec.final_time;

    let quinpi = match opts.scheme.strategy() {
        Some(strategy) => {
            let cfg = QuinpiConfig {
                policy: spec.policy,
                newton: opts.newton,
                limiter: LimiterConfig {
                    strategy,
                    ..spec.limiter
                },
            };
            Some(Quinpi::new(&law, &grid, spec.bc, cfg)?)
        }
        None => None,
    };
    let explicit = Ssprk3::new(&law, &grid, spec.bc, spec.policy)?;

    let start = Instant::now();
    let mut report = RunReport {
        spec: *spec,
        options: *opts,
        grid,
        field: initial.clone(),
        initial,
        time: 0.0,
        steps: Vec::new(),
        events: Vec::new(),
        reports: Vec::new(),
        last_report: None,
        blowup: None,
        wall_time: Duration::ZERO,
    };
    let mut u = report.field.clone();
    let mut t = 0.0;
    let mut step = 0;
    while t_end - t > 1e-12 * t_end {
        let mut dt = match quinpi {
            Some(_) => spec.dt_over_h * h,
            None => cfl_time_step(&law, &u, h, opts.explicit_cfl),
        };
        if !(dt > 0.0) || !dt.is_finite() {
            report.blowup = Some(BlowUp {
                time: t,
                step,
                reason: format!("invalid time step {dt}"),
            });
            break;
        }
        let last = t + dt >= t_end * (1.0 - 1e-12);
        if last {
            dt = t_end - t;
        }
        let result = match &quinpi {
            Some(q) => q.step(&u, dt).map(|out| (out.field, Some((out.report, out.record.total_iterations())))),
            None => explicit.step(&u, dt).map(|f| (f, None)),
        };
        let (next, extra) = match result {
            Ok(v) => v,
            Err(e) if is_breakdown(&e) => {
                report.blowup = Some(BlowUp {
                    time: t,
                    step,
                    reason: e.to_string(),
                });
                break;
            }
            Err(e) => return Err(e.into()),
        };
        let t_next = if last { t_end } else { t + dt };
        if !next.is_finite() || next.max_abs() > limit {
            report.blowup = Some(BlowUp {
                time: t_next,
                step,
                reason: "solution grew without bound".into(),
            });
            break;
        }
        let mut summary = StepSummary {
            step,
            time: t_next,
            dt,
            limited_fluxes: 0,
            marked_cells: 0,
            loops: 0,
            newton_iterations: 0,
            hit_max_loops: false,
        };
        if let Some((rep, its)) = extra {
            summary.limited_fluxes = rep.limited_interfaces.len();
            summary.marked_cells = rep.marked_count();
            summary.loops = rep.loop_count;
            summary.newton_iterations = its;
            summary.hit_max_loops = rep.hit_max_loops;
            report.events.extend(rep.limited_interfaces.iter().map(|&(interface, pass)| LimitEvent {
                step,
                time: t_next,
                interface,
                pass,
            }));
            if opts.keep_reports {
                report.reports.push(rep.clone());
            }
            report.last_report = Some(rep);
        }
        report.steps.push(summary);
        u = next;
        t = t_next;
        step += 1;
    }
    report.field = u;
    report.time = t;
    report.wall_time = start.elapsed();
    Ok(report)
}

/// Explicit run on `factor` times as many cells, averaged back to `cells`.
pub fn explicit_reference(spec: &ProblemSpec, cells: usize, factor: usize, cfl: f64) -> Result<Field<f64>, DriverError> {
    let opts = RunOptions {
        explicit_cfl: cfl,
        ..RunOptions::new(cells * factor, Scheme::Explicit)
    };
    let rep = run_problem(spec, &opts)?;
    if let Some(b) = rep.blowup {
        return Err(DriverError::Solver(format!("reference run failed at t={}: {}", b.time, b.reason)));
    }
    restrict(&rep.field, factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::problems::ProblemId;

    #[test]
    fn scheme_names() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert_eq!("QI3".parse::<Scheme>().unwrap(), Scheme::QI3);
        assert!("q4".parse::<Scheme>().is_err());
    }

    #[test]
    fn last_step_lands_on_final_time() {
        let mut spec = ProblemSpec::new(ProblemId::AdvDoubleStep);
        spec.final_time = 0.7;
        let rep = run_problem(&spec, &RunOptions::new(20, Scheme::QI3)).unwrap();
        assert!(rep.completed());
        assert_eq!(rep.time, 0.7);
        assert_eq!(rep.steps.len(), 2);
        assert!((rep.steps[1].dt - 0.2).abs() < 1e-15);
    }

    #[test]
    fn explicit_run_completes() {
        let mut spec = ProblemSpec::new(ProblemId::BurgersShockInteraction);
        spec.final_time = 0.1;
        let rep = run_problem(&spec, &RunOptions::new(40, Scheme::Explicit)).unwrap();
        assert!(rep.completed());
        assert_eq!(rep.time, 0.1);
        assert!(rep.stats().max_limited_fluxes == 0);
    }
}
