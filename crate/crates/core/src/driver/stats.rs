//! Time-limiting statistics.

use serde::Serialize;

use crate::limiter::EntropyReport;

/// Maximum number of limited fluxes in one step and share of steps with
/// at least one limited flux, in percent.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct LimiterStats {
    pub max_limited_fluxes: usize,
    pub pct_limited_steps: f64,
}

impl LimiterStats {
    pub fn from_counts(counts: &[usize]) -> Self {
        if counts.is_empty() {
            return Self::default();
        }
        let limited = counts.iter().filter(|&&c| c > 0).count();
        Self {
            max_limited_fluxes: counts.iter().copied().max().unwrap_or(0),
            pct_limited_steps: 100.0 * limited as f64 / counts.len() as f64,
        }
    }
}

pub fn limiter_statistics(reports: &[EntropyReport<f64>]) -> LimiterStats {
    let counts: Vec<usize> = reports.iter().map(|r| r.limited_interfaces.len()).collect();
    LimiterStats::from_counts(&counts)
}

/// One limited interface: step index, time level reached by the step,
/// interface index and the limiting pass that selected it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitEvent {
    pub step: usize,
    pub time: f64,
    pub interface: usize,
    pub pass: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(limited: &[(usize, usize)]) -> EntropyReport<f64> {
        EntropyReport {
            limited_interfaces: limited.to_vec(),
            ..EntropyReport::default()
        }
    }

    #[test]
    fn statistics() {
        assert_eq!(limiter_statistics(&[]), LimiterStats::default());
        let none = [report(&[]), report(&[])];
        assert_eq!(limiter_statistics(&none), LimiterStats::default());
        let one = [report(&[(3, 1)]), report(&[(7, 1)])];
        assert_eq!(
            limiter_statistics(&one),
            LimiterStats {
                max_limited_fluxes: 1,
                pct_limited_steps: 100.0
            }
        );
        let mixed = LimiterStats::from_counts(&[0, 4, 0, 2]);
        assert_eq!(mixed.max_limited_fluxes, 4);
        assert_eq!(mixed.pct_limited_steps, 50.0);
    }
}
