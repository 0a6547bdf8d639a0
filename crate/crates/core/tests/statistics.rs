//! Monte Carlo checks of the generator and counters against closed forms.

use ttp_validity::analytics::{run_sweep, Constraint, SweepConfig};
use ttp_validity::{count_drr, count_norepeat, expected_violations, random_schedule, GenConfig};

#[test]
fn n4_means_within_stated_tolerances() {
    let cfg = GenConfig::new(4, 2718).unwrap();
    let samples = 10_000u64;
    let (mut drr, mut norep) = (0u64, 0u64);
    for i in 0..samples {
        let s = random_schedule(&cfg, i);
        drr += count_drr(&s);
        norep += count_norepeat(&s);
    }
    let drr = drr as f64 / samples as f64;
    let norep = norep as f64 / samples as f64;
    assert!((drr - 8.04).abs() <= 0.15, "drr mean {drr}");
    assert!((norep - 10.0 / 3.0).abs() <= 0.1, "norepeat mean {norep}");
}

#[test]
fn n4_sweep_cell_within_stated_tolerances() {
    let cfg = SweepConfig {
        team_sizes: vec![4],
        samples_per_size: 10_000,
        k_values: vec![3],
        master_seed: 31,
    };
    let recs = run_sweep(&cfg).unwrap();
    let avg = |c| recs.iter().find(|r| r.constraint == c).unwrap().avg;
    assert!((avg(Constraint::Drr) - 8.04).abs() <= 0.15);
    assert!((avg(Constraint::NoRepeat) - 3.33).abs() <= 0.1);
    assert!((avg(Constraint::MaxStreak) - 1.5).abs() <= 0.06);
}

#[test]
fn every_cell_agrees_with_expectation() {
    let cfg = SweepConfig {
        team_sizes: vec![4, 6, 10, 16],
        samples_per_size: 2000,
        k_values: (1..=6).collect(),
        master_seed: 8,
    };
    for r in run_sweep(&cfg).unwrap() {
        let e = expected_violations(r.n_teams, r.constraint, r.k).unwrap();
        let se = r.std_dev.unwrap() / (r.samples as f64).sqrt();
        assert!(
            (r.avg - e).abs() <= 4.0 * se + 1e-12,
            "n={} {} k={:?}: {} vs {e}",
            r.n_teams,
            r.constraint,
            r.k,
            r.avg
        );
        assert!(r.min as f64 <= r.avg && r.avg <= r.max as f64);
    }
}
