//! Closed-form per-epoch power allocation for a fixed antenna count.
//!
//! With the battery multipliers folded into a renewable energy price, each
//! epoch maximises `ρ·R(p) − φ(P)` where `P = p/η + P_C + M·P_RF` is the
//! consumption and `φ` is the cheapest renewable/grid mix for that
//! consumption. `φ` is convex and piecewise linear with one kink, so the
//! optimum is a water-filling level on one of two segments or the kink.

use std::f64::consts::LOG2_E;

use crate::model::{array_gain, mean_rate_unchecked, PowerSplit, SystemParams};

/// Energy prices faced by one epoch, per joule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochPrices {
    /// Weight on the rate term, `1 + μ`.
    pub rate_weight: f64,
    /// Price of grid energy, `q`.
    pub grid: f64,
    /// Price of battery energy, `q·w + π_i` where `π_i` aggregates the
    /// battery multipliers covering the epoch.
    pub renewable: f64,
}

/// Battery energy the epoch may use and must use, in joules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryContext {
    pub length: f64,
    pub available: f64,
    pub must_drain: f64,
}

impl BatteryContext {
    /// No battery limits: the response the dual function is built from.
    pub fn unbounded(length: f64) -> Self {
        Self {
            length,
            available: f64::INFINITY,
            must_drain: 0.0,
        }
    }
}

/// Best response of one epoch for one antenna count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochDecision {
    pub antennas: usize,
    pub p_tx: f64,
    /// Battery power drawn, W.
    pub renewable: f64,
    pub split: PowerSplit,
    /// Multiplier of the transmit cap.
    pub zeta: f64,
    /// Multiplier of the grid cap.
    pub theta: f64,
    /// `ρ·R − φ`, per second.
    pub value: f64,
    /// The water level was unbounded and the power sits on its box bound.
    pub capped: bool,
    pub feasible: bool,
}

impl EpochDecision {
    fn infeasible(antennas: usize) -> Self {
        Self {
            antennas,
            p_tx: 0.0,
            renewable: 0.0,
            split: PowerSplit::default(),
            zeta: 0.0,
            theta: 0.0,
            value: f64::NEG_INFINITY,
            capped: false,
            feasible: false,
        }
    }
}

/// Water levels of the renewable and grid transmit powers at fixed
/// multipliers: `ρη·log2e / (qw + π + ηζ)` and `ρη·log2e / (q + ηζ + θ)`.
/// A zero denominator gives an infinite level.
pub fn water_levels(prices: &EpochPrices, zeta: f64, theta: f64, eta: f64) -> (f64, f64) {
    let num = prices.rate_weight * eta * LOG2_E;
    let level = |d: f64| if d > 0.0 { num / d } else { f64::INFINITY };
    (level(prices.renewable + eta * zeta), level(prices.grid + eta * zeta + theta))
}

/// Literal two-level water-filling at fixed multipliers: the renewable power
/// fills up to its level above the floor `Φ`, and the grid power fills what
/// remains up to its own level.
pub fn water_filling_split(prices: &EpochPrices, zeta: f64, theta: f64, antennas: usize, params: &SystemParams) -> (f64, f64) {
    let (level_e, level_g) = water_levels(prices, zeta, theta, params.pa_efficiency);
    let floor = 1.0 / array_gain(antennas, params.total_antennas);
    let p_e = (level_e - floor).max(0.0).min(params.p_tx_max);
    let p_g = (level_g - floor - p_e).max(0.0).min(params.p_tx_max - p_e);
    (p_e, p_g)
}

/// Optimal transmit power, battery draw and cap multipliers for one epoch at
/// a fixed antenna count.
pub fn kkt_power_update(prices: &EpochPrices, antennas: usize, params: &SystemParams, battery: &BatteryContext) -> EpochDecision {
    let eta = params.pa_efficiency;
    let gain = array_gain(antennas, params.total_antennas);
    let floor = 1.0 / gain;
    let fixed = params.p_circuit + antennas as f64 * params.p_rf;
    let t = battery.length;
    let avail = if battery.available.is_finite() { battery.available.max(0.0) / t } else { f64::INFINITY };
    let must = battery.must_drain.max(0.0) / t;
    let grid_cap = params.p_grid_max;
    if must > avail * (1.0 + 1e-12) + 1e-12 {
        return EpochDecision::infeasible(antennas);
    }

    // Feasible consumption interval.
    let lo = fixed.max(must);
    let hi = (fixed + params.p_tx_max / eta).min(avail + grid_cap);
    if lo > hi * (1.0 + 1e-12) + 1e-12 {
        return EpochDecision::infeasible(antennas);
    }
    let hi = hi.max(lo);
    let p_lo = (eta * (lo - fixed)).clamp(0.0, params.p_tx_max);
    let p_hi = (eta * (hi - fixed)).clamp(p_lo, params.p_tx_max);

    let c_e = prices.renewable;
    let q = prices.grid;
    let renewable_first = c_e <= q;
    let (kink, s1, s2) = if renewable_first { (avail, c_e, q) } else { (must + grid_cap, q, c_e) };
    let p_kink = if kink.is_finite() { eta * (kink - fixed) } else { f64::INFINITY };

    let num = prices.rate_weight * eta * LOG2_E;
    let level = |s: f64| if s > 0.0 { num / s - floor } else { f64::INFINITY };
    let l1 = level(s1);
    let l2 = level(s2);
    let (raw, capped) = if l1 <= p_kink {
        (l1, s1 <= 0.0)
    } else if l2 > p_kink {
        (l2, s2 <= 0.0)
    } else {
        (p_kink, false)
    };
    let p = raw.clamp(p_lo, p_hi);
    let consumption = p / eta + fixed;

    let r = if renewable_first {
        consumption.min(avail)
    } else {
        must.max(consumption - grid_cap)
    }
    .clamp(0.0, consumption);
    let grid = consumption - r;
    let value = prices.rate_weight * mean_rate_unchecked(antennas, p, params.total_antennas) - c_e * r - q * grid;

    // Marginal value of transmit power, per watt of consumption.
    let marginal = num / (p + floor);
    let grid_binds = grid >= grid_cap * (1.0 - 1e-12) && grid_cap > 0.0 && p > 0.0;
    let theta = if grid_binds {
        if renewable_first {
            (marginal - q).max(0.0)
        } else {
            (marginal.min(c_e) - q).max(0.0)
        }
    } else {
        0.0
    };
    let cost_here = if renewable_first && consumption < avail {
        c_e
    } else if !renewable_first && grid_binds && consumption > (must + grid_cap) * (1.0 + 1e-12) {
        c_e
    } else {
        q + theta
    };
    let at_cap = p >= params.p_tx_max * (1.0 - 1e-12);
    let zeta = if at_cap {
        ((marginal - cost_here) / eta).max(0.0)
    } else {
        0.0
    };

    EpochDecision {
        antennas,
        p_tx: p,
        renewable: r,
        split: PowerSplit::from_renewable_budget(params, antennas, p, r),
        zeta,
        theta,
        value,
        capped: capped && p >= p_hi,
        feasible: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prices(q: f64, w: f64, pi: f64) -> EpochPrices {
        EpochPrices {
            rate_weight: 1.0,
            grid: q,
            renewable: q * w + pi,
        }
    }

    #[test]
    fn circuit_fully_renewable_when_battery_covers_it() {
        let p = SystemParams::default();
        let ctx = BatteryContext {
            length: 1.0,
            available: 1e6,
            must_drain: 0.0,
        };
        let d = kkt_power_update(&prices(0.1, 0.01, 0.0), 50, &p, &ctx);
        assert_eq!(d.split.circuit_renewable(), p.p_circuit);
        assert_eq!(d.split.circuit_grid(), 0.0);
    }

    #[test]
    fn empty_battery_puts_circuit_on_grid() {
        let p = SystemParams::default();
        let ctx = BatteryContext {
            length: 1.0,
            available: 0.0,
            must_drain: 0.0,
        };
        let d = kkt_power_update(&prices(0.1, 0.01, 0.0), 50, &p, &ctx);
        assert_eq!(d.split.circuit_renewable(), 0.0);
        assert_eq!(d.split.circuit_grid(), p.p_circuit);
        assert_eq!(d.split.tx_renewable(), 0.0);
    }

    #[test]
    fn negative_bracket_gives_zero_renewable_power() {
        let p = SystemParams::default();
        // A huge battery price pushes the renewable level below the floor.
        let pr = prices(1.0, 0.5, 1e9);
        let (pe, _) = water_filling_split(&pr, 0.0, 0.0, 10, &p);
        assert_eq!(pe, 0.0);
    }

    #[test]
    fn grid_power_shrinks_one_for_one_with_renewable_power() {
        let p = SystemParams::default();
        let q = 0.05;
        let mut last: Option<(f64, f64)> = None;
        // Battery prices above q(1 − w) put the renewable level below the grid level.
        for pi in [0.2, 0.15, 0.1, 0.08, 0.06] {
            let pr = prices(q, 0.01, pi);
            let (le, lg) = water_levels(&pr, 0.0, 0.0, p.pa_efficiency);
            assert!(le < lg);
            let (pe, pg) = water_filling_split(&pr, 0.0, 0.0, 40, &p);
            assert!(pe > 0.0 && pg > 0.0);
            if let Some((pe0, pg0)) = last {
                assert!(pe > pe0);
                assert!(((pg0 - pg) - (pe - pe0)).abs() < 1e-9);
            }
            last = Some((pe, pg));
        }
    }

    #[test]
    fn zero_prices_hit_the_box_and_flag_it() {
        let p = SystemParams::default();
        let d = kkt_power_update(&prices(0.0, 0.01, 0.0), 100, &p, &BatteryContext::unbounded(1.0));
        assert_eq!(d.p_tx, p.p_tx_max);
        assert!(d.capped);
        // With no battery energy the grid limit sets the cap.
        let ctx = BatteryContext {
            length: 1.0,
            available: 0.0,
            must_drain: 0.0,
        };
        let small = SystemParams {
            p_grid_max: 180.0,
            ..p.clone()
        };
        let d = kkt_power_update(&prices(0.0, 0.01, 0.0), 10, &small, &ctx);
        let expect = small.pa_efficiency * (180.0 - small.p_circuit - 10.0 * small.p_rf);
        assert!((d.p_tx - expect).abs() < 1e-9);
    }

    #[test]
    fn transmit_cap_complementary_slackness() {
        let p = SystemParams::default();
        for q in [1e-4, 1e-3, 0.01, 0.1, 1.0] {
            let d = kkt_power_update(&prices(q, 0.01, 0.0), 60, &p, &BatteryContext::unbounded(1.0));
            assert!(d.zeta >= 0.0);
            assert!((d.zeta * (d.p_tx - p.p_tx_max)).abs() < 1e-9);
        }
        let d = kkt_power_update(&prices(1e-4, 0.01, 0.0), 60, &p, &BatteryContext::unbounded(1.0));
        assert!(d.zeta > 0.0);
        // At the cap the stationarity condition holds with ζ included.
        let lhs = LOG2_E * p.pa_efficiency / (d.p_tx + water_floorish(60, &p));
        assert!((lhs - (1e-4 * 0.01 + p.pa_efficiency * d.zeta)).abs() < 1e-9);
    }

    fn water_floorish(m: usize, p: &SystemParams) -> f64 {
        1.0 / array_gain(m, p.total_antennas)
    }

    #[test]
    fn interior_optimum_is_stationary() {
        let p = SystemParams::default();
        let pr = prices(0.3, 0.01, 0.1);
        let d = kkt_power_update(&pr, 30, &p, &BatteryContext::unbounded(1.0));
        assert!(d.p_tx > 0.0 && d.p_tx < p.p_tx_max);
        let eps = 1e-6;
        let f = |x: f64| mean_rate_unchecked(30, x, 100) - pr.renewable * x / p.pa_efficiency;
        assert!(f(d.p_tx) >= f(d.p_tx + eps) && f(d.p_tx) >= f(d.p_tx - eps));
    }

    #[test]
    fn must_drain_beyond_available_is_infeasible() {
        let p = SystemParams::default();
        let ctx = BatteryContext {
            length: 1.0,
            available: 10.0,
            must_drain: 20.0,
        };
        assert!(!kkt_power_update(&prices(0.1, 0.01, 0.0), 5, &p, &ctx).feasible);
        // Must drain more than the epoch can consume.
        let ctx = BatteryContext {
            length: 1.0,
            available: 1e6,
            must_drain: 1e5,
        };
        assert!(!kkt_power_update(&prices(0.1, 0.01, 0.0), 5, &p, &ctx).feasible);
    }

    #[test]
    fn expensive_battery_drains_only_what_it_must() {
        let p = SystemParams::default();
        let ctx = BatteryContext {
            length: 2.0,
            available: 1000.0,
            must_drain: 100.0,
        };
        let d = kkt_power_update(&prices(0.1, 0.01, 5.0), 20, &p, &ctx);
        assert!(d.feasible);
        assert!((d.renewable * 2.0 - 100.0).abs() < 1e-9);
    }
}
