use hybrid_ee::*;
use proptest::prelude::*;

fn params() -> SystemParams {
    SystemParams::default()
}

fn split(p: &SystemParams, tx: f64, frac: f64, c: f64, rf: f64) -> PowerSplit {
    PowerSplit::balanced(p, tx * frac, tx * (1.0 - frac), c, rf)
}

proptest! {
    #[test]
    fn rate_is_concave_in_power(m in 1usize..=100, a in 0.0f64..40.0, b in 0.0f64..40.0, t in 0.0f64..1.0) {
        let n = 100;
        let mid = mean_rate(m, t * a + (1.0 - t) * b, n).unwrap();
        let chord = t * mean_rate(m, a, n).unwrap() + (1.0 - t) * mean_rate(m, b, n).unwrap();
        prop_assert!(mid >= chord - 1e-12);
    }

    #[test]
    fn spectral_efficiency_adds_over_epochs(
        m1 in 1usize..=100, m2 in 1usize..=100,
        p1 in 0.0f64..39.0, p2 in 0.0f64..39.0,
        t1 in 0.1f64..5.0, t2 in 0.1f64..5.0,
    ) {
        let p = params();
        let a = EpochAllocation { antennas: m1, power: split(&p, p1, 0.0, 0.0, 0.0) };
        let b = EpochAllocation { antennas: m2, power: split(&p, p2, 0.0, 0.0, 0.0) };
        let both = EpochTimeline::from_lengths(0.0, vec![t1, t2], vec![0.0, 0.0]).unwrap();
        let one = |t| EpochTimeline::from_lengths(0.0, vec![t], vec![0.0]).unwrap();
        let whole = spectral_efficiency(&Schedule::new(vec![a, b]), &both, &p).unwrap();
        let parts = spectral_efficiency(&Schedule::new(vec![a]), &one(t1), &p).unwrap()
            + spectral_efficiency(&Schedule::new(vec![b]), &one(t2), &p).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-12 * whole.max(1.0));
    }

    #[test]
    fn grid_to_renewable_move_saves_weighted_energy(
        m in 1usize..=100, tx in 0.0f64..39.0, frac in 0.0f64..1.0, shift in 0.0f64..1.0, t in 0.1f64..5.0,
    ) {
        let p = params();
        let tl = EpochTimeline::from_lengths(0.0, vec![t], vec![0.0]).unwrap();
        let moved = tx * (1.0 - frac) * shift;
        let before = Schedule::new(vec![EpochAllocation { antennas: m, power: split(&p, tx, frac, 0.0, 0.0) }]);
        let after = Schedule::new(vec![EpochAllocation {
            antennas: m,
            power: PowerSplit::balanced(&p, tx * frac + moved, tx * (1.0 - frac) - moved, 0.0, 0.0),
        }]);
        let saved = weighted_energy(&before, &tl, &p).unwrap() - weighted_energy(&after, &tl, &p).unwrap();
        let expect = (1.0 - p.grid_weight) * moved / p.pa_efficiency * t;
        prop_assert!((saved - expect).abs() <= 1e-9 * (1.0 + expect));
        let (u0, u1) = (spectral_efficiency(&before, &tl, &p).unwrap(), spectral_efficiency(&after, &tl, &p).unwrap());
        prop_assert!((u0 - u1).abs() <= 1e-12 * u0.max(1.0));
    }

    #[test]
    fn battery_conserves_energy(
        e0 in 0.0f64..200.0,
        harvest in prop::collection::vec(0.0f64..800.0, 1..6),
        cap in 50.0f64..1500.0,
        draw in 0.0f64..1.0,
    ) {
        let p = SystemParams { battery_capacity: cap, ..params() };
        let lengths = vec![1.0; harvest.len()];
        let tl = EpochTimeline::from_lengths(e0, lengths, harvest).unwrap();
        let s = Schedule::new(
            (0..tl.len())
                .map(|_| EpochAllocation { antennas: 10, power: PowerSplit::balanced(&p, 0.0, 1.0, draw * p.p_circuit, 0.0) })
                .collect(),
        );
        let tr = battery_trajectory(&s, &tl, &p).unwrap();
        prop_assert!(tr.conservation_residual(&tl).abs() <= 1e-9 * tl.total_energy().max(1.0));
    }

    #[test]
    fn overflow_shrinks_as_capacity_grows(
        harvest in prop::collection::vec(0.0f64..800.0, 1..6),
        cap in 10.0f64..1500.0,
        extra in 0.0f64..500.0,
    ) {
        let lengths = vec![1.0; harvest.len()];
        let tl = EpochTimeline::from_lengths(0.0, lengths, harvest).unwrap();
        let run = |b: f64| {
            let p = SystemParams { battery_capacity: b, ..params() };
            let s = Schedule::silent(&p, 1, tl.len());
            battery_trajectory(&s, &tl, &p).unwrap().total_overflow()
        };
        prop_assert!(run(cap + extra) <= run(cap) + 1e-9);
    }

    #[test]
    fn arrivals_above_capacity_violate_the_overflow_constraint(cap in 10.0f64..1000.0, excess in 1.0f64..500.0) {
        let p = SystemParams { battery_capacity: cap, horizon: 1.0, ..params() };
        let tl = EpochTimeline::single_arrival(cap + excess, 1.0).unwrap();
        let s = Schedule::silent(&p, 1, 1);
        prop_assert!(!check_feasibility(&s, &tl, &p).is_feasible());
        let spill = SystemParams { overflow: OverflowRule::Spill, qos_min: 0.0, ..p };
        prop_assert!(check_feasibility(&s, &tl, &spill).is_feasible());
    }
}
