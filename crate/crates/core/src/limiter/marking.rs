//! Troubled-cell predicates on the entropy production magnitudes.

use super::{LimiterConfig, Strategy};
use crate::scalar::Real;

/// I1: `|S3| > gamma1`; I2: `|S3| / (|S1| + sigma) > gamma2`; I3: both.
pub fn mark_cells<T: Real>(s1: &[T], s3: &[T], cfg: &LimiterConfig, h: T) -> Vec<bool> {
    let g1 = T::lit(cfg.gamma1_for(h.to_f64_lossy()));
    let g2 = T::lit(cfg.gamma2);
    let sigma = T::lit(cfg.sigma);
    s1.iter()
        .zip(s3)
        .map(|(&a, &b)| {
            let i1 = || b.abs() > g1;
            let i2 = || b.abs() / (a.abs() + sigma) > g2;
            match cfg.strategy {
                Strategy::None => false,
                Strategy::I1 => i1(),
                Strategy::I2 => i2(),
                Strategy::I3 => i1() && i2(),
            }
        })
        .collect()
}
