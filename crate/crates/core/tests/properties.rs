use proptest::prelude::*;

use quinpi::driver::{ProblemId, RunConfig, RunOptions, Scheme};
use quinpi::grid::{BoundaryCondition, Field, Grid1D};
use quinpi::model::Burgers;
use quinpi::timeint::{Quinpi, QuinpiConfig, StageRecord};

fn scheme() -> impl Strategy<Value = Scheme> {
    prop::sample::select(Scheme::ALL.to_vec())
}

fn total_variation(u: &Field<f64>) -> f64 {
    let n = u.cells();
    (0..n).map(|j| (u.get((j + 1) % n, 0) - u.get(j, 0)).abs()).sum()
}

/// Periodic wave plus a step: piecewise smooth with two jumps.
fn burgers_field(n: usize, mean: f64, amp: f64, phase: f64, jump: f64, at: f64) -> Field<f64> {
    let values = (0..n)
        .map(|j| {
            let x = (j as f64 + 0.5) / n as f64;
            mean + amp * (std::f64::consts::TAU * x + phase).sin() + if (x - at).rem_euclid(1.0) < 0.5 { jump } else { 0.0 }
        })
        .collect();
    Field::from_vec(n, 1, values).unwrap()
}

fn burgers_data() -> impl Strategy<Value = Field<f64>> {
    (16usize..48, -0.5..0.5f64, 0.0..1.0f64, 0.0..6.3f64, -1.0..1.0f64, 0.0..1.0f64)
        .prop_map(|(n, mean, amp, phase, jump, at)| burgers_field(n, mean, amp, phase, jump, at))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn config_round_trip(name in prop::sample::select(ProblemId::NAMES.to_vec()),
                         kappa in 0.0..8.0f64, eps in 1e-3..1.0f64,
                         cells in 2usize..400, s in scheme()) {
        let id = ProblemId::from_name(name, Some(kappa), Some(eps)).unwrap();
        let cfg = RunConfig::new(id, RunOptions::new(2 * cells, s));
        let text = cfg.to_toml_string().unwrap();
        prop_assert_eq!(RunConfig::from_toml_str(&text).unwrap(), cfg);
    }

    #[test]
    fn quinpi_step_conserves(u in burgers_data(), ratio in 0.5..8.0f64, strategy in 0usize..4) {
        let grid = Grid1D::new(0.0, 1.0, u.cells()).unwrap();
        let s = [Scheme::Q3, Scheme::QI1, Scheme::QI2, Scheme::QI3][strategy];
        let mut cfg = QuinpiConfig::default();
        cfg.limiter.strategy = s.strategy().unwrap();
        let q = Quinpi::new(&Burgers, &grid, BoundaryCondition::Periodic, cfg).unwrap();
        let next = q.step(&u, ratio * grid.h()).unwrap().field;
        let (a, b) = (u.totals()[0], next.totals()[0]);
        prop_assert!((a - b).abs() <= 1e-12 * u.cells() as f64, "{a} vs {b}");
    }

    #[test]
    fn predictor_never_increases_tv(u in burgers_data(), ratio in 0.5..12.0f64) {
        let grid = Grid1D::new(0.0, 1.0, u.cells()).unwrap();
        let q = Quinpi::new(&Burgers, &grid, BoundaryCondition::Periodic, QuinpiConfig::default()).unwrap();
        let stages = q.predictor(&u, ratio * grid.h(), &mut StageRecord::default()).unwrap();
        let mut prev = total_variation(&u);
        for (stage, _) in &stages {
            let tv = total_variation(stage);
            prop_assert!(tv <= prev * (1.0 + 1e-12), "{tv} > {prev}");
            prev = tv;
        }
    }
}
