//! Lagrangian-dual inner solver for a fixed energy price `q`.

use super::antennas::select_antennas;
use super::kkt::{BatteryContext, EpochDecision, EpochPrices};
use super::multipliers::{update_multipliers, BatteryConstraints, Multipliers, StepSchedule};
use super::options::{AntennaPolicy, SolveOptions};
use crate::error::{Error, Result};
use crate::model::{mean_rate_unchecked, weighted_power, EpochAllocation, EpochTimeline, OverflowRule, Schedule, SystemParams};

/// Outcome of one inner solve.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerSolution {
    pub schedule: Schedule,
    pub decisions: Vec<EpochDecision>,
    /// Multipliers of the last dual iterate, with `ζ`, `θ` taken from the
    /// returned schedule and `μ` as given.
    pub multipliers: Multipliers,
    /// Best dual bound on `max U − q·E` seen.
    pub dual_bound: f64,
    /// `dual_bound − (U − q·E)` of the returned schedule.
    pub dual_gap: f64,
    pub spectral_efficiency: f64,
    pub weighted_energy: f64,
    pub iterations: usize,
}

impl InnerSolution {
    pub fn surplus(&self, q: f64) -> f64 {
        self.spectral_efficiency - q * self.weighted_energy
    }
}

#[derive(Clone, Copy)]
enum Restoration {
    /// Follow the dual iterate's drains, clipped into what the battery allows.
    Dual,
    /// Spend battery energy as soon as it is available.
    Greedy,
}

pub(crate) struct Problem<'a> {
    pub params: &'a SystemParams,
    pub timeline: &'a EpochTimeline,
    pub constraints: BatteryConstraints,
    pub policy: AntennaPolicy,
    pub q: f64,
    pub rate_weight: f64,
}

impl<'a> Problem<'a> {
    pub fn new(params: &'a SystemParams, timeline: &'a EpochTimeline, policy: AntennaPolicy, q: f64, rate_weight: f64) -> Result<Self> {
        Ok(Self {
            params,
            timeline,
            constraints: BatteryConstraints::new(timeline, params)?,
            policy,
            q,
            rate_weight,
        })
    }

    fn epoch_prices(&self, pi: &[f64]) -> Vec<EpochPrices> {
        pi.iter()
            .map(|&p| EpochPrices {
                rate_weight: self.rate_weight,
                grid: self.q,
                renewable: self.q * self.params.grid_weight + p,
            })
            .collect()
    }

    /// Forward pass that turns per-epoch price signals into a schedule the
    /// battery can actually serve.
    fn restore(&self, prices: &[EpochPrices], desired: &[EpochDecision], mode: Restoration) -> Option<Vec<EpochDecision>> {
        let tl = self.timeline;
        let h = tl.harvested();
        let cap = self.params.battery_capacity;
        let spill = self.params.overflow == OverflowRule::Spill;
        let mut level = tl.initial_energy();
        let mut out = Vec::with_capacity(h.len());
        for (i, &t) in tl.epoch_lengths().iter().enumerate() {
            let mut post = level + h[i];
            if spill {
                post = post.min(cap);
            }
            let post = post.max(0.0);
            let must = if spill {
                0.0
            } else {
                (post + h.get(i + 1).copied().unwrap_or(0.0) - cap).max(0.0)
            };
            let (pr, ctx) = match mode {
                Restoration::Dual => {
                    let target = (desired[i].renewable * t).clamp(must.min(post), post);
                    (
                        prices[i],
                        BatteryContext {
                            length: t,
                            available: target,
                            must_drain: must,
                        },
                    )
                }
                Restoration::Greedy => (
                    EpochPrices {
                        rate_weight: self.rate_weight,
                        grid: self.q,
                        renewable: self.q * self.params.grid_weight,
                    },
                    BatteryContext {
                        length: t,
                        available: post,
                        must_drain: must,
                    },
                ),
            };
            let d = select_antennas(&pr, self.params, &ctx, self.policy);
            if !d.feasible {
                return None;
            }
            level = post - d.split.renewable_draw(d.antennas, self.params.pa_efficiency) * t;
            out.push(d);
        }
        Some(out)
    }

    /// `(U_SE, E_W)` of a decision sequence.
    pub fn evaluate(&self, decisions: &[EpochDecision]) -> (f64, f64) {
        let n = self.params.total_antennas;
        let mut u = 0.0;
        let mut e = 0.0;
        for (d, &t) in decisions.iter().zip(self.timeline.epoch_lengths()) {
            u += mean_rate_unchecked(d.antennas, d.p_tx, n) * t;
            e += weighted_power(self.params, d.antennas, &d.split) * t;
        }
        (u, e)
    }

    /// Projected subgradient ascent on the battery multipliers, tracking the
    /// best restored schedule under `ρ·U − q·E`.
    pub fn solve(&self, options: &SolveOptions, warm: Option<&Multipliers>) -> Result<InnerSolution> {
        let cons = &self.constraints;
        let lengths = self.timeline.epoch_lengths();
        let rho = self.rate_weight;
        let mut m = match warm {
            Some(w) if w.alpha.len() == cons.epochs && w.beta.len() == cons.floors.len() && w.window.len() == cons.windows.len() => w.clone(),
            _ => Multipliers::zeros(cons),
        };

        let mut best: Option<(f64, Vec<EpochDecision>, f64, f64)> = None;
        let consider = |cand: Option<Vec<EpochDecision>>, best: &mut Option<(f64, Vec<EpochDecision>, f64, f64)>| {
            if let Some(c) = cand {
                let (u, e) = self.evaluate(&c);
                let obj = rho * u - self.q * e;
                if best.as_ref().map_or(true, |b| obj > b.0) {
                    *best = Some((obj, c, u, e));
                }
            }
        };
        consider(self.restore(&[], &[], Restoration::Greedy), &mut best);

        let price_scale = (self.q * (1.0 - self.params.grid_weight)).max(1e-4 * rho.max(1e-3));
        let energy_scale = self.timeline.total_energy().max(self.params.battery_capacity).max(1.0);
        let mut step: Option<StepSchedule> = None;
        let mut best_dual = f64::INFINITY;
        let mut iterations = 0;
        for k in 1..=options.dual_iterations {
            iterations = k;
            let pi = cons.prices(&m);
            let prices = self.epoch_prices(&pi);
            let desired: Vec<EpochDecision> = prices
                .iter()
                .zip(lengths)
                .map(|(p, &t)| select_antennas(p, self.params, &BatteryContext::unbounded(t), self.policy))
                .collect();
            let dual: f64 = desired.iter().zip(lengths).map(|(d, t)| d.value * t).sum::<f64>() + cons.dual_constant(&m);
            best_dual = best_dual.min(dual);

            let drains: Vec<f64> = desired
                .iter()
                .zip(lengths)
                .map(|(d, t)| d.split.renewable_draw(d.antennas, self.params.pa_efficiency) * t)
                .collect();
            let res = cons.residuals(&drains);
            consider(self.restore(&prices, &desired, Restoration::Dual), &mut best);

            if let Some(b) = &best {
                let gap = best_dual - b.0;
                if gap <= options.dual_gap_tol * (rho * b.2).abs().max(1e-9) {
                    break;
                }
            }
            let s = *step.get_or_insert_with(|| {
                let typical = res.typical();
                let scale = if typical > 0.0 { typical } else { energy_scale };
                StepSchedule {
                    initial: options.step_scale * price_scale / scale,
                }
            });
            m = update_multipliers(&m, &res, &s, k);
        }

        let (obj, decisions, u, e) = best.ok_or_else(|| Error::Infeasible("no schedule satisfies the battery constraints".into()))?;
        m.zeta = decisions.iter().map(|d| d.zeta).collect();
        m.theta = decisions.iter().map(|d| d.theta).collect();
        let schedule = Schedule::new(
            decisions
                .iter()
                .map(|d| EpochAllocation {
                    antennas: d.antennas,
                    power: d.split,
                })
                .collect(),
        );
        Ok(InnerSolution {
            schedule,
            decisions,
            multipliers: m,
            dual_bound: best_dual,
            dual_gap: (best_dual - obj).max(0.0),
            spectral_efficiency: u,
            weighted_energy: e,
            iterations,
        })
    }
}

/// Maximises `U_SE − q·E_W` subject to every constraint except QoS.
pub fn inner_solve(q: f64, params: &SystemParams, timeline: &EpochTimeline, options: &SolveOptions) -> Result<InnerSolution> {
    if !(q >= 0.0) {
        return Err(Error::Domain(format!("energy price must be >= 0, got {q}")));
    }
    params.validate()?;
    timeline.validate()?;
    Problem::new(params, timeline, options.antennas, q, 1.0)?.solve(options, None)
}
