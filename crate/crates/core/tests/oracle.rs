use hybrid_ee::oracle::{brute_force_solve, monte_carlo_rate, GridSpec};
use hybrid_ee::*;

#[test]
fn single_epoch_oracle_is_bounded_by_the_solver() {
    for (energy, qos) in [(0.0, 0.0), (150.0, 5.0), (600.0, 10.0)] {
        let p = SystemParams {
            horizon: 2.0,
            qos_min: qos,
            ..SystemParams::default()
        };
        let tl = EpochTimeline::single_arrival(energy, 2.0).unwrap();
        let o = brute_force_solve(&p, &tl, &GridSpec::default()).unwrap();
        let r = dinkelbach_solve(&p, &tl, &SolveOptions::default()).unwrap();
        assert!(check_feasibility(&o.schedule, &tl, &p).is_feasible());
        assert!(r.q_star >= 0.98 * o.weighted_ee, "{energy} J: {} vs {}", r.q_star, o.weighted_ee);
    }
}

#[test]
fn two_epoch_oracle_tracks_the_solver() {
    let p = SystemParams {
        horizon: 5.0,
        battery_capacity: 800.0,
        qos_min: 10.0,
        ..SystemParams::default()
    };
    let tl = hybrid_ee::harvest::timeline_from_arrivals(50.0, &[(0.0, 300.0), (2.0, 400.0)], 5.0).unwrap();
    let o = brute_force_solve(&p, &tl, &GridSpec::default()).unwrap();
    let r = dinkelbach_solve(&p, &tl, &SolveOptions::default()).unwrap();
    assert!(r.q_star >= 0.98 * o.weighted_ee);
    // A coarse grid cannot beat the continuous optimum by much.
    assert!(o.weighted_ee <= r.q_star * 1.01);
}

#[test]
fn monte_carlo_single_antenna_matches_rayleigh_closed_form() {
    // M = N = 1: E[log2(1 + p·X)] with X ~ Exp(1) equals e^{1/p}·E1(1/p)/ln 2.
    let p: f64 = 2.0;
    let x = 1.0 / p;
    // E1 by its convergent series.
    let mut e1 = -0.577_215_664_901_532_9 - x.ln();
    let mut term = 1.0;
    for k in 1..60 {
        term *= -x / k as f64;
        e1 -= term / k as f64;
    }
    let exact = x.exp() * e1 / std::f64::consts::LN_2;
    let mc = monte_carlo_rate(1, p, 1, 200_000, 3).unwrap();
    assert!((mc.mean - exact).abs() <= 4.0 * mc.mean_stderr + 1e-3, "{} vs {exact}", mc.mean);
}

#[test]
fn monte_carlo_is_seeded() {
    let a = monte_carlo_rate(20, 1.0, 100, 5000, 11).unwrap();
    let b = monte_carlo_rate(20, 1.0, 100, 5000, 11).unwrap();
    assert_eq!(a, b);
}
