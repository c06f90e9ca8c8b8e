//! Conservative time limiting: interfaces next to troubled cells take the
//! first-order predictor flux, the others keep the third-order flux.

use super::{gauss_entropy, mark_cells, s1_production, s3_production, EntropyReport, LimiterConfig, Strategy};
use crate::grid::{BoundaryCondition, Field, Grid1D};
use crate::model::ConservationLaw;
use crate::reconstruction::{trace_source, LinearWeights, Side};
use crate::scalar::Real;
use crate::timeint::system::conservative_update;

/// Interfaces touching a marked cell through either of their trace sources.
pub fn limited_interfaces(marked: &[bool], bc: BoundaryCondition) -> Vec<bool> {
    let n = marked.len();
    (0..=n)
        .map(|i| marked[trace_source(i, Side::Minus, n, bc).0] || marked[trace_source(i, Side::Plus, n, bc).0])
        .collect()
}

/// Data of one completed step needed by the limiter. Flux arrays hold
/// `(N + 1) x m` stage-weighted sums, entropy fluxes `N + 1` values.
pub struct LimitInputs<'a, T, L: ?Sized> {
    pub law: &'a L,
    pub grid: &'a Grid1D<T>,
    pub weights: &'a LinearWeights<T>,
    pub bc: BoundaryCondition,
    pub dt: T,
    pub u_n: &'a Field<T>,
    /// Gauss entropy averages of `u_n`.
    pub eta_n: &'a [T],
    /// `U_n - dt/h sum theta_k dF*^(k)`.
    pub predictor_update: &'a Field<T>,
    /// `sum b_k F^(k)`.
    pub flux_high: &'a [T],
    /// `sum theta_k F*^(k)`.
    pub flux_low: &'a [T],
    pub psi_high: &'a [T],
    pub psi_low: &'a [T],
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitOutcome<T> {
    pub field: Field<T>,
    pub report: EntropyReport<T>,
}

/// Entropy marks plus cells with an inadmissible state or a non-finite
/// entropy production.
fn troubled<T: Real, L: ConservationLaw<T> + ?Sized>(
    law: &L,
    field: &Field<T>,
    s1: &[T],
    s3: &[T],
    cfg: &LimiterConfig,
    h: T,
) -> Vec<bool> {
    let mut marks = mark_cells(s1, s3, cfg, h);
    for (j, mk) in marks.iter_mut().enumerate() {
        *mk |= !s3[j].is_finite() || law.check_admissible(field.row(j)).is_err();
    }
    marks
}

fn mix<T: Real>(limited: &[bool], high: &[T], low: &[T], width: usize) -> Vec<T> {
    let mut out = high.to_vec();
    for (i, _) in limited.iter().enumerate().filter(|(_, &l)| l) {
        out[i * width..(i + 1) * width].copy_from_slice(&low[i * width..(i + 1) * width]);
    }
    out
}

/// Marks troubled cells and repeats the limiting with the accumulated marks
/// until no new cell is marked or `max_loops` passes have run.
pub fn time_limit<T: Real, L: ConservationLaw<T> + ?Sized>(
    inp: &LimitInputs<'_, T, L>,
    cfg: &LimiterConfig,
) -> LimitOutcome<T> {
    let n = inp.u_n.cells();
    let m = inp.u_n.components();
    let h = inp.grid.h();
    let dt_h = inp.dt / h;
    let s3_of = |u: &Field<T>, psi: &[T]| {
        let eta = gauss_entropy(inp.law, u, inp.grid, inp.weights);
        s3_production(&eta, inp.eta_n, psi, inp.dt, h)
    };

    let s1 = s1_production(inp.law, inp.u_n, inp.predictor_update, inp.psi_low, inp.dt, h);
    let mut field = conservative_update(inp.u_n, dt_h, inp.flux_high);
    let s3 = s3_of(&field, inp.psi_high);
    let mut marked = vec![false; n];
    let mut mark_loop = vec![None; n];
    if cfg.strategy != Strategy::None {
        marked = troubled(inp.law, &field, &s1, &s3, cfg, h);
        for (ml, _) in mark_loop.iter_mut().zip(&marked).filter(|(_, &mk)| mk) {
            *ml = Some(1);
        }
    }

    let mut report = EntropyReport {
        s1,
        s3_final: s3.clone(),
        s3,
        marked: Vec::new(),
        mark_loop: Vec::new(),
        loop_count: 0,
        limited_interfaces: Vec::new(),
        hit_max_loops: false,
    };
    let mut applied = vec![false; n + 1];
    let mut apply = |marked: &[bool], report: &mut EntropyReport<T>| {
        report.loop_count += 1;
        let pass = report.loop_count;
        let lim = limited_interfaces(marked, inp.bc);
        for (i, _) in lim.iter().enumerate().filter(|(_, &l)| l) {
            if !applied[i] {
                applied[i] = true;
                report.limited_interfaces.push((i, pass));
            }
        }
        let field = conservative_update(inp.u_n, dt_h, &mix(&lim, inp.flux_high, inp.flux_low, m));
        report.s3_final = s3_of(&field, &mix(&lim, inp.psi_high, inp.psi_low, 1));
        field
    };
    while marked.iter().any(|&mk| mk) {
        field = apply(&marked, &mut report);
        let pass = report.loop_count;
        let fresh = troubled(inp.law, &field, &report.s1, &report.s3_final, cfg, h);
        let new: Vec<usize> = (0..n).filter(|&j| fresh[j] && !marked[j]).collect();
        if new.is_empty() {
            break;
        }
        if pass == cfg.max_loops {
            report.hit_max_loops = true;
            break;
        }
        for j in new {
            marked[j] = true;
            mark_loop[j] = Some(pass + 1);
        }
    }
    // past the loop cap only inadmissible cells are added; a cell limited on
    // both sides takes its predictor value
    if cfg.strategy != Strategy::None {
        loop {
            let bad: Vec<usize> = (0..n)
                .filter(|&j| !marked[j] && inp.law.check_admissible(field.row(j)).is_err())
                .collect();
            if bad.is_empty() {
                break;
            }
            for j in bad {
                marked[j] = true;
                mark_loop[j] = Some(report.loop_count + 1);
            }
            field = apply(&marked, &mut report);
        }
    }
    report.marked = marked;
    report.mark_loop = mark_loop;
    LimitOutcome { field, report }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::project_initial_condition;
    use crate::model::Burgers;

    #[test]
    fn interface_selection() {
        let marked = [false, true, false, false];
        assert_eq!(
            limited_interfaces(&marked, BoundaryCondition::FreeFlow),
            vec![false, true, true, false, false]
        );
        let edge = [true, false, false];
        assert_eq!(
            limited_interfaces(&edge, BoundaryCondition::Periodic),
            vec![true, true, false, true]
        );
        assert_eq!(
            limited_interfaces(&edge, BoundaryCondition::FreeFlow),
            vec![true, true, false, false]
        );
    }

    struct Setup {
        grid: Grid1D<f64>,
        d: LinearWeights<f64>,
        u: Field<f64>,
        eta: Vec<f64>,
        low_update: Field<f64>,
        high: Vec<f64>,
        low: Vec<f64>,
        psi: Vec<f64>,
    }

    fn setup() -> Setup {
        let grid = Grid1D::new(-1.0, 1.0, 20).unwrap();
        let d = LinearWeights::standard(grid.h()).unwrap();
        let u = project_initial_condition(|x: f64, v: &mut [f64]| v[0] = if x < 0.0 { 1.0 } else { 0.0 }, &grid, 1);
        let eta = gauss_entropy(&Burgers, &u, &grid, &d);
        let high: Vec<f64> = (0..21).map(|i| 0.3 + 0.01 * ((i % 20) as f64).sin()).collect();
        let low: Vec<f64> = (0..21).map(|i| 0.2 + 0.02 * ((i % 20) as f64).cos()).collect();
        let low_update = conservative_update(&u, 0.5, &low);
        Setup {
            grid,
            d,
            u,
            eta,
            low_update,
            high,
            low,
            psi: vec![0.0; 21],
        }
    }

    fn inputs(s: &Setup) -> LimitInputs<'_, f64, Burgers> {
        LimitInputs {
            law: &Burgers,
            grid: &s.grid,
            weights: &s.d,
            bc: BoundaryCondition::Periodic,
            dt: 0.05,
            u_n: &s.u,
            eta_n: &s.eta,
            predictor_update: &s.low_update,
            flux_high: &s.high,
            flux_low: &s.low,
            psi_high: &s.psi,
            psi_low: &s.psi,
        }
    }

    #[test]
    fn no_marks_reproduce_unlimited_update() {
        let s = setup();
        let out = time_limit(&inputs(&s), &LimiterConfig::default());
        assert_eq!(out.field, conservative_update(&s.u, 0.5, &s.high));
        assert_eq!(out.report.loop_count, 0);
    }

    #[test]
    fn full_marks_reproduce_predictor_update() {
        let s = setup();
        let cfg = LimiterConfig {
            strategy: Strategy::I1,
            gamma1: Some(1e-300),
            ..LimiterConfig::default()
        };
        let out = time_limit(&inputs(&s), &cfg);
        assert!(out.report.marked.iter().all(|&m| m));
        assert_eq!(out.field, s.low_update);
        assert_eq!(out.report.limited_interfaces.len(), 21);
    }

    #[test]
    fn limiting_conserves_totals() {
        let s = setup();
        let base = time_limit(&inputs(&s), &LimiterConfig::default());
        let mut mags: Vec<f64> = base.report.s3.iter().map(|v| v.abs()).collect();
        mags.sort_by(f64::total_cmp);
        let cfg = LimiterConfig {
            strategy: Strategy::I1,
            gamma1: Some(mags[10]),
            ..LimiterConfig::default()
        };
        let out = time_limit(&inputs(&s), &cfg);
        assert!(out.report.marked_count() > 0);
        assert!((out.field.totals()[0] - s.u.totals()[0]).abs() < 1e-13);
    }
}
