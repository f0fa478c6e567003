use super::kkt::{kkt_power_update, BatteryContext, EpochDecision, EpochPrices};
use super::options::AntennaPolicy;
use crate::model::SystemParams;

/// Exhaustive scan over the admissible antenna counts. Returns the decision
/// with the largest per-epoch Lagrangian value; ties go to the smaller count.
/// If no count is feasible under the battery context, the returned decision
/// has `feasible == false`.
pub fn select_antennas(prices: &EpochPrices, params: &SystemParams, battery: &BatteryContext, policy: AntennaPolicy) -> EpochDecision {
    let range = match policy {
        AntennaPolicy::Free => 1..=params.total_antennas,
        AntennaPolicy::Fixed(m) => {
            let m = m.clamp(1, params.total_antennas);
            m..=m
        }
    };
    let mut best: Option<EpochDecision> = None;
    for m in range {
        let d = kkt_power_update(prices, m, params, battery);
        match &best {
            Some(b) if !(d.feasible && (!b.feasible || d.value > b.value)) => {}
            _ => best = Some(d),
        }
    }
    best.expect("antenna range is never empty")
}
