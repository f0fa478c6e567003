use std::fmt::Write as _;
use std::io::Write;

use super::dinkelbach::SolveReport;
use crate::error::Result;
use crate::model::EpochTimeline;

/// Writes a report as `key = value` lines followed by a `[trace]` table of
/// outer iterations and an `[epochs]` table of the schedule.
pub fn write_report<W: Write>(report: &SolveReport, timeline: &EpochTimeline, mut out: W) -> Result<()> {
    let mut s = String::new();
    let violated: Vec<&str> = report.feasibility.violated().map(|c| c.constraint.label()).collect();
    let _ = writeln!(s, "converged = {}", report.converged);
    let _ = writeln!(s, "weighted_ee = {:.10}", report.q_star);
    let _ = writeln!(s, "spectral_efficiency = {:.10}", report.spectral_efficiency);
    let _ = writeln!(s, "weighted_energy = {:.10}", report.weighted_energy);
    let _ = writeln!(s, "dual_gap = {:.3e}", report.dual_gap);
    let _ = writeln!(s, "iterations = {}", report.iterations());
    let _ = writeln!(s, "qos_multiplier = {}", report.multipliers.mu);
    let _ = writeln!(s, "feasible = {}", report.feasibility.is_feasible());
    let _ = writeln!(s, "violated = {}", violated.join(","));
    let _ = writeln!(s, "battery_final = {:.6}", report.battery.final_level);
    let _ = writeln!(s, "battery_overflow = {:.6}", report.battery.total_overflow());
    let capped: Vec<String> = report.capped_epochs.iter().map(|i| i.to_string()).collect();
    let _ = writeln!(s, "capped_epochs = {}", capped.join(","));

    let _ = writeln!(s, "\n[trace]\niteration,q,surplus");
    for t in &report.trace {
        let _ = writeln!(s, "{},{:.10},{:.6e}", t.iteration, t.q, t.surplus);
    }

    let _ = writeln!(
        s,
        "\n[epochs]\nindex,t_start_s,t_end_s,antennas,p_tx_renewable,p_tx_grid,p_circuit_renewable,p_circuit_grid,p_rf_renewable,p_rf_grid,battery_post_arrival_J,drain_J"
    );
    for (i, e) in report.schedule.epochs.iter().enumerate() {
        let c = e.power.components();
        let ledger = &report.battery.epochs[i];
        let _ = writeln!(
            s,
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            i,
            timeline.t_start(i),
            timeline.t_end(i),
            e.antennas,
            c[0],
            c[1],
            c[2],
            c[3],
            c[4],
            c[5],
            ledger.post_arrival,
            ledger.drain
        );
    }
    out.write_all(s.as_bytes())?;
    Ok(())
}
