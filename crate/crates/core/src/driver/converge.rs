//! Dyadic refinement sweeps and the weight-convergence study.

use rayon::prelude::*;

use super::norms::{convergence_rates, error_norms, restrict};
use super::problems::ProblemSpec;
use super::run::{run_problem, RunOptions};
use super::DriverError;
use crate::grid::Field;
use crate::reconstruction::study::weight_convergence_study;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub cells: usize,
    pub l1: f64,
    pub rate_l1: Option<f64>,
    pub linf: f64,
    pub rate_linf: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightStudyLevel {
    pub cells: usize,
    pub err: f64,
    pub rate: Option<f64>,
    pub err_hat: f64,
    pub rate_hat: Option<f64>,
}

/// `"40:1280"` is `40, 80, ..., 1280`; a single number is one level.
pub fn parse_levels(s: &str) -> Result<Vec<usize>, DriverError> {
    let bad = || DriverError::Config(format!("invalid levels '{s}', expected N or N0:N1"));
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (a.trim().parse::<usize>().map_err(|_| bad())?, b.trim().parse::<usize>().map_err(|_| bad())?),
        None => {
            let n = s.trim().parse::<usize>().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo == 0 || hi < lo {
        return Err(bad());
    }
    let mut out = vec![lo];
    while *out.last().expect("non-empty") < hi {
        out.push(2 * out.last().expect("non-empty"));
    }
    if *out.last().expect("non-empty") != hi {
        return Err(DriverError::NonDyadic(lo, hi));
    }
    Ok(out)
}

/// Worker count from `QUINPI_THREADS`, if set to a positive integer.
pub fn thread_count() -> Option<usize> {
    std::env::var("QUINPI_THREADS").ok()?.trim().parse().ok().filter(|&n: &usize| n > 0)
}

fn pool() -> Result<rayon::ThreadPool, DriverError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count() {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| DriverError::Config(e.to_string()))
}

fn table(cells: &[usize], norms: &[(f64, f64)]) -> Result<Vec<ConvergenceRow>, DriverError> {
    let l1: Vec<(usize, f64)> = cells.iter().zip(norms).map(|(&n, e)| (n, e.0)).collect();
    let linf: Vec<(usize, f64)> = cells.iter().zip(norms).map(|(&n, e)| (n, e.1)).collect();
    let r1 = convergence_rates(&l1)?;
    let rinf = convergence_rates(&linf)?;
    Ok((0..cells.len())
        .map(|i| ConvergenceRow {
            cells: cells[i],
            l1: norms[i].0,
            rate_l1: i.checked_sub(1).map(|p| r1[p]),
            linf: norms[i].1,
            rate_linf: i.checked_sub(1).map(|p| rinf[p]),
        })
        .collect())
}

/// Errors and rates over dyadic `levels`. Problems without an exact
/// solution are compared with the run on twice the finest level, averaged
/// back to each level. Levels run in parallel; results are in level order.
pub fn converge(spec: &ProblemSpec, base: &RunOptions, levels: &[usize]) -> Result<Vec<ConvergenceRow>, DriverError> {
    if levels.is_empty() {
        return Err(DriverError::Config("no levels given".into()));
    }
    convergence_rates(&levels.iter().map(|&n| (n, 1.0)).collect::<Vec<_>>())?;
    let probe = spec.grid(levels[0])?;
    let exact = spec.exact_field(&probe, spec.final_time)?.is_some();
    let mut all = levels.to_vec();
    if !exact {
        all.push(2 * levels[levels.len() - 1]);
    }

    let runs: Vec<Result<(usize, Field<f64>), DriverError>> = pool()?.install(|| {
        all.par_iter()
            .map(|&n| {
                let rep = run_problem(spec, &RunOptions { cells: n, ..*base })?;
                match rep.blowup {
                    Some(b) => Err(DriverError::Solver(format!("N={n} failed at t={}: {}", b.time, b.reason))),
                    None => Ok((n, rep.field)),
                }
            })
            .collect()
    });
    let runs: Vec<(usize, Field<f64>)> = runs.into_iter().collect::<Result<_, _>>()?;

    let c = spec.error_component();
    let mut norms = Vec::with_capacity(levels.len());
    for (n, field) in runs.iter().take(levels.len()) {
        let grid = spec.grid(*n)?;
        let reference = if exact {
            spec.exact_field(&grid, spec.final_time)?.expect("exact solution")
        } else {
            let (fine_n, fine) = runs.last().expect("reference level");
            restrict(fine, fine_n / n)?
        };
        norms.push(error_norms(field, &reference, &grid, c)?);
    }
    table(levels, &norms)
}

/// Distance of the nonlinear from the linear weights on each level.
pub fn weight_study(levels: &[usize]) -> Result<Vec<WeightStudyLevel>, DriverError> {
    let rows = levels
        .iter()
        .map(|&n| weight_convergence_study(n).map_err(DriverError::from))
        .collect::<Result<Vec<_>, _>>()?;
    let r = convergence_rates(&rows.iter().map(|r| (r.cells, r.err)).collect::<Vec<_>>())?;
    let rh = convergence_rates(&rows.iter().map(|r| (r.cells, r.err_hat)).collect::<Vec<_>>())?;
    Ok(rows
        .iter()
        .enumerate()
        .map(|(i, row)| WeightStudyLevel {
            cells: row.cells,
            err: row.err,
            rate: i.checked_sub(1).map(|p| r[p]),
            err_hat: row.err_hat,
            rate_hat: i.checked_sub(1).map(|p| rh[p]),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_parsing() {
        assert_eq!(parse_levels("40:320").unwrap(), vec![40, 80, 160, 320]);
        assert_eq!(parse_levels("50").unwrap(), vec![50]);
        assert!(parse_levels("40:100").is_err());
        assert!(parse_levels("a:b").is_err());
        assert!(parse_levels("80:40").is_err());
    }

    #[test]
    fn weight_study_rates() {
        let rows = weight_study(&[20, 40]).unwrap();
        assert!(rows[0].rate.is_none());
        assert!((rows[1].rate.unwrap() - (rows[0].err / rows[1].err).log2()).abs() < 1e-15);
    }
}
