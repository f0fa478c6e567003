use crate::error::{Error, Result};
use crate::model::{
    check_feasibility, mean_rate_unchecked, EpochAllocation, EpochTimeline, OverflowRule, PowerSplit, Schedule,
    SystemParams,
};

/// Enumeration grid of the brute-force oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    /// Levels per transmit-power variable, endpoints included.
    pub power_levels: usize,
    /// Upper end of both transmit-power ranges; `None` means `P_Tx,max`.
    pub power_max: Option<f64>,
    pub antennas: Vec<usize>,
    pub max_epochs: usize,
    /// Largest number of grid points allowed.
    pub budget: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            power_levels: 25,
            power_max: None,
            antennas: vec![1, 10, 25, 50, 75, 100],
            max_epochs: 3,
            budget: 1e8,
        }
    }
}

impl GridSpec {
    pub fn step(&self, params: &SystemParams) -> f64 {
        self.power_max.unwrap_or(params.p_tx_max) / (self.power_levels - 1) as f64
    }

    /// Number of candidate schedules over `epochs` epochs.
    pub fn points(&self, epochs: usize) -> f64 {
        let per_epoch = self.antennas.len() as f64 * (self.power_levels as f64).powi(2);
        per_epoch.powi(epochs as i32)
    }

    /// Halves the power step; the refined grid contains the original one.
    pub fn refined(&self) -> Self {
        Self {
            power_levels: 2 * self.power_levels - 1,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    pub schedule: Schedule,
    pub weighted_ee: f64,
    pub evaluated: u64,
}

struct Search<'a> {
    params: &'a SystemParams,
    timeline: &'a EpochTimeline,
    levels: Vec<f64>,
    antennas: Vec<usize>,
    stack: Vec<EpochAllocation>,
    best: Option<(f64, Schedule)>,
    evaluated: u64,
}

impl Search<'_> {
    fn descend(&mut self, epoch: usize, level: f64, se: f64, energy: f64) {
        let p = self.params;
        let tl = self.timeline;
        if epoch == tl.len() {
            self.evaluated += 1;
            let ee = se / energy;
            if self.best.as_ref().map_or(true, |b| ee > b.0) {
                let schedule = Schedule::new(self.stack.clone());
                if check_feasibility(&schedule, tl, p).is_feasible() {
                    self.best = Some((ee, schedule));
                }
            }
            return;
        }
        let t = tl.epoch_lengths()[epoch];
        let mut post = level + tl.harvested()[epoch];
        if p.overflow == OverflowRule::Spill {
            post = post.min(p.battery_capacity);
        }
        let eta = p.pa_efficiency;
        let w = p.grid_weight;
        for ai in 0..self.antennas.len() {
            let m = self.antennas[ai];
            for i in 0..self.levels.len() {
                let pe = self.levels[i];
                // Transmit energy the battery cannot cover fails causality.
                let residual = post - pe / eta * t;
                if residual < -1e-9 * post.abs().max(1.0) {
                    break;
                }
                let avail = (residual / t).max(0.0);
                let circuit_e = avail.min(p.p_circuit);
                let rf_e = ((avail - circuit_e) / m as f64).min(p.p_rf);
                for j in 0..self.levels.len() {
                    let pg = self.levels[j];
                    if pe + pg > p.p_tx_max * (1.0 + 1e-12) {
                        break;
                    }
                    let split = PowerSplit::balanced(p, pe, pg, circuit_e, rf_e);
                    let drain = split.renewable_draw(m, eta) * t;
                    let grid = split.grid_draw(m, eta);
                    let rate = mean_rate_unchecked(m, pe + pg, p.total_antennas) * t;
                    self.stack.push(EpochAllocation { antennas: m, power: split });
                    self.descend(epoch + 1, post - drain, se + rate, energy + (w * drain + grid * t));
                    self.stack.pop();
                }
            }
        }
    }
}

/// Exhaustive search over the grid: every antenna count in the list, every
/// pair of renewable and grid transmit levels, and a renewable-first split of
/// circuit and RF power. Each candidate that could beat the incumbent is
/// screened by the full constraint check.
pub fn brute_force_solve(params: &SystemParams, timeline: &EpochTimeline, grid: &GridSpec) -> Result<OracleSolution> {
    params.validate()?;
    timeline.validate()?;
    if grid.power_levels < 2 || grid.antennas.is_empty() {
        return Err(Error::Domain("grid needs at least two power levels and one antenna count".into()));
    }
    if timeline.len() > grid.max_epochs {
        return Err(Error::Domain(format!(
            "oracle handles at most {} epochs, timeline has {}",
            grid.max_epochs,
            timeline.len()
        )));
    }
    let points = grid.points(timeline.len());
    if points > grid.budget {
        return Err(Error::BudgetExceeded {
            points,
            budget: grid.budget,
        });
    }
    let step = grid.step(params);
    let mut antennas: Vec<usize> = grid.antennas.iter().copied().filter(|&m| m >= 1 && m <= params.total_antennas).collect();
    antennas.sort_unstable();
    antennas.dedup();
    let mut search = Search {
        params,
        timeline,
        levels: (0..grid.power_levels).map(|k| k as f64 * step).collect(),
        antennas,
        stack: Vec::with_capacity(timeline.len()),
        best: None,
        evaluated: 0,
    };
    search.descend(0, timeline.initial_energy(), 0.0, 0.0);
    let evaluated = search.evaluated;
    let (weighted_ee, schedule) = search
        .best
        .ok_or_else(|| Error::Infeasible("no grid point satisfies every constraint".into()))?;
    Ok(OracleSolution {
        schedule,
        weighted_ee,
        evaluated,
    })
}
