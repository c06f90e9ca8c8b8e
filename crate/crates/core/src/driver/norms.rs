//! Error norms, grid transfer and observed convergence rates.

use std::ops::Range;

use super::DriverError;
use crate::grid::{Field, Grid1D};

/// `(L1, Linf)` of one component: `h sum |e_j|` and `max |e_j|`.
pub fn error_norms(num: &Field<f64>, reference: &Field<f64>, grid: &Grid1D<f64>, component: usize) -> Result<(f64, f64), DriverError> {
    windowed_error_norms(num, reference, grid, component, 0..grid.cells())
}

/// Norms restricted to the cells in `window`.
pub fn windowed_error_norms(
    num: &Field<f64>,
    reference: &Field<f64>,
    grid: &Grid1D<f64>,
    component: usize,
    window: Range<usize>,
) -> Result<(f64, f64), DriverError> {
    if num.cells() != grid.cells()
        || reference.cells() != grid.cells()
        || num.components() != reference.components()
        || component >= num.components()
        || window.end > grid.cells()
    {
        return Err(DriverError::GridMismatch(format!(
            "{}x{} vs {}x{} on {} cells",
            num.cells(),
            num.components(),
            reference.cells(),
            reference.components(),
            grid.cells()
        )));
    }
    let (mut l1, mut linf) = (0.0, 0.0_f64);
    for j in window {
        let e = (num.get(j, component) - reference.get(j, component)).abs();
        l1 += e;
        linf = linf.max(e);
    }
    Ok((l1 * grid.h(), linf))
}

/// Cells within `half_width` cells of position `x`.
pub fn window_around(grid: &Grid1D<f64>, x: f64, half_width: usize) -> Range<usize> {
    let n = grid.cells();
    let j = (((x - grid.a()) / grid.h()).floor().max(0.0) as usize).min(n - 1);
    j.saturating_sub(half_width)..(j + half_width + 1).min(n)
}

/// `log2(err_N / err_2N)` for consecutive dyadic levels.
pub fn convergence_rates(errors: &[(usize, f64)]) -> Result<Vec<f64>, DriverError> {
    errors
        .windows(2)
        .map(|w| {
            if w[1].0 != 2 * w[0].0 {
                return Err(DriverError::NonDyadic(w[0].0, w[1].0));
            }
            Ok((w[0].1 / w[1].1).log2())
        })
        .collect()
}

/// Averages groups of `factor` consecutive cells.
pub fn restrict(fine: &Field<f64>, factor: usize) -> Result<Field<f64>, DriverError> {
    if factor == 0 || fine.cells() % factor != 0 {
        return Err(DriverError::GridMismatch(format!(
            "{} cells cannot be coarsened by {factor}",
            fine.cells()
        )));
    }
    let m = fine.components();
    let n = fine.cells() / factor;
    let mut out = Field::zeros(n, m);
    let w = 1.0 / factor as f64;
    for j in 0..n {
        for k in 0..m {
            let s: f64 = (0..factor).map(|q| fine.get(j * factor + q, k)).sum();
            out.set(j, k, s * w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_error() {
        let g = Grid1D::new(0.0, 1.0, 8).unwrap();
        let a = Field::constant(8, &[1.0]);
        let b = Field::constant(8, &[1.25]);
        let (l1, linf) = error_norms(&a, &b, &g, 0).unwrap();
        assert!((l1 - 0.25).abs() < 1e-15 && linf == 0.25);
        assert_eq!(error_norms(&a, &a, &g, 0).unwrap(), (0.0, 0.0));
        assert_eq!(windowed_error_norms(&a, &b, &g, 0, 0..8).unwrap(), error_norms(&a, &b, &g, 0).unwrap());
        assert!(error_norms(&a, &Field::constant(4, &[1.0]), &g, 0).is_err());
    }

    #[test]
    fn rates() {
        let r = convergence_rates(&[(40, 4e-3), (80, 5e-4), (160, 5e-4)]).unwrap();
        assert!((r[0] - 3.0).abs() < 1e-12 && r[1] == 0.0);
        // third-order column of the weight study at its two finest levels
        let r = convergence_rates(&[(2560, 5.59e-3), (5120, 1.37e-3)]).unwrap();
        assert!((r[0] - 2.03).abs() < 5e-3);
        assert!(convergence_rates(&[(40, 1.0), (100, 0.1)]).is_err());
    }

    #[test]
    fn restriction_and_window() {
        let f = Field::from_vec(4, 1, vec![1.0, 3.0, 5.0, 7.0]).unwrap();
        assert_eq!(restrict(&f, 2).unwrap().as_slice(), &[2.0, 6.0]);
        assert!(restrict(&f, 3).is_err());
        let g = Grid1D::new(-1.0, 1.0, 100).unwrap();
        assert_eq!(window_around(&g, 0.001, 10), 40..61);
        assert_eq!(window_around(&g, -0.999, 10), 0..11);
    }
}
