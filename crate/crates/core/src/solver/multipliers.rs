//! Battery constraints in window form, their multipliers and the projected
//! subgradient update.

use crate::error::{Error, Result};
use crate::model::{EpochTimeline, OverflowRule, SystemParams};

/// Lagrange multipliers. `alpha[e]` prices causality up to epoch `e`;
/// `beta[k]` prices the overflow constraint at arrival `k + 2` (one-based),
/// the last slot being the end of the horizon; `window` prices the extra
/// causality windows that appear once spilled energy is clipped at capacity.
/// The circuit and RF split multipliers do not appear: those constraints
/// hold by construction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Multipliers {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub window: Vec<f64>,
    pub zeta: Vec<f64>,
    pub theta: Vec<f64>,
    pub mu: f64,
}

impl Multipliers {
    pub fn zeros(constraints: &BatteryConstraints) -> Self {
        let l = constraints.epochs;
        Self {
            alpha: vec![0.0; l],
            beta: vec![0.0; constraints.floors.len()],
            window: vec![0.0; constraints.windows.len()],
            zeta: vec![0.0; l],
            theta: vec![0.0; l],
            mu: 0.0,
        }
    }

    pub fn is_non_negative(&self) -> bool {
        self.alpha
            .iter()
            .chain(&self.beta)
            .chain(&self.window)
            .chain(&self.zeta)
            .chain(&self.theta)
            .chain(std::iter::once(&self.mu))
            .all(|&x| x >= 0.0)
    }

    /// Multiplies the battery multipliers by `factor`, used to carry a
    /// solution across a change of the energy price `q`.
    pub fn scaled(&self, factor: f64) -> Self {
        let f = |v: &Vec<f64>| v.iter().map(|x| x * factor).collect();
        Self {
            alpha: f(&self.alpha),
            beta: f(&self.beta),
            window: f(&self.window),
            zeta: self.zeta.clone(),
            theta: self.theta.clone(),
            mu: self.mu,
        }
    }
}

/// One upper-bounded window `Σ_{k=start..=end} d_k ≤ cap`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub start: usize,
    pub end: usize,
    pub cap: f64,
}

/// Linear constraints on the per-epoch battery drains `d_k` (J).
#[derive(Debug, Clone, PartialEq)]
pub struct BatteryConstraints {
    pub epochs: usize,
    /// `Σ_{k≤e} d_k ≤ causality[e]`.
    pub causality: Vec<f64>,
    /// `Σ_{k≤idx} d_k ≥ floors[idx]`; empty when overflow spills.
    pub floors: Vec<f64>,
    /// Extra windows starting after the first epoch (spill rule only).
    pub windows: Vec<Window>,
}

impl BatteryConstraints {
    pub fn new(timeline: &EpochTimeline, params: &SystemParams) -> Result<Self> {
        let h = timeline.harvested();
        let l = h.len();
        let e0 = timeline.initial_energy();
        let cap = params.battery_capacity;
        match params.overflow {
            OverflowRule::Constrained => {
                if e0 + h[0] > cap * (1.0 + 1e-12) {
                    return Err(Error::Infeasible(format!(
                        "initial energy {} J exceeds the battery capacity {cap} J",
                        e0 + h[0]
                    )));
                }
                let mut causality = Vec::with_capacity(l);
                let mut floors = Vec::with_capacity(l);
                let mut acc = e0;
                for k in 0..l {
                    acc += h[k];
                    causality.push(acc);
                    let next = h.get(k + 1).copied().unwrap_or(0.0);
                    floors.push(acc + next - cap);
                }
                Ok(Self {
                    epochs: l,
                    causality,
                    floors,
                    windows: Vec::new(),
                })
            }
            OverflowRule::Spill => {
                let mut causality = Vec::with_capacity(l);
                let mut acc = (e0 + h[0]).min(cap);
                causality.push(acc);
                for &x in &h[1..] {
                    acc += x;
                    causality.push(acc);
                }
                let mut windows = Vec::new();
                for start in 1..l {
                    let mut c = cap;
                    for end in start..l {
                        if end > start {
                            c += h[end];
                        }
                        windows.push(Window { start, end, cap: c });
                    }
                }
                Ok(Self {
                    epochs: l,
                    causality,
                    floors: Vec::new(),
                    windows,
                })
            }
        }
    }

    /// Battery price `π_i` of every epoch: upper multipliers covering the
    /// epoch minus lower multipliers covering it.
    pub fn prices(&self, m: &Multipliers) -> Vec<f64> {
        let l = self.epochs;
        let mut pi = vec![0.0; l];
        let mut acc = 0.0;
        for i in (0..l).rev() {
            acc += m.alpha[i] - m.beta.get(i).copied().unwrap_or(0.0);
            pi[i] = acc;
        }
        for (w, &lam) in self.windows.iter().zip(&m.window) {
            if lam != 0.0 {
                for p in &mut pi[w.start..=w.end] {
                    *p += lam;
                }
            }
        }
        pi
    }

    /// Constraint residuals (positive means violated) of the drains `d`.
    pub fn residuals(&self, drains: &[f64]) -> Residuals {
        let mut prefix = Vec::with_capacity(drains.len() + 1);
        prefix.push(0.0);
        for &d in drains {
            prefix.push(prefix.last().unwrap() + d);
        }
        Residuals {
            alpha: self.causality.iter().enumerate().map(|(e, c)| prefix[e + 1] - c).collect(),
            beta: self.floors.iter().enumerate().map(|(k, f)| f - prefix[k + 1]).collect(),
            window: self
                .windows
                .iter()
                .map(|w| prefix[w.end + 1] - prefix[w.start] - w.cap)
                .collect(),
        }
    }

    /// Constant part of the Lagrangian: `Σ α·cap − Σ β·floor + Σ λ·cap`.
    pub fn dual_constant(&self, m: &Multipliers) -> f64 {
        let a: f64 = self.causality.iter().zip(&m.alpha).map(|(c, x)| c * x).sum();
        let b: f64 = self.floors.iter().zip(&m.beta).map(|(f, x)| f * x).sum();
        let w: f64 = self.windows.iter().zip(&m.window).map(|(w, x)| w.cap * x).sum();
        a - b + w
    }
}

/// Residuals of the battery constraints, grouped like [`Multipliers`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Residuals {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub window: Vec<f64>,
}

impl Residuals {
    pub fn max_violation(&self) -> f64 {
        self.alpha
            .iter()
            .chain(&self.beta)
            .chain(&self.window)
            .fold(0.0f64, |a, &b| a.max(b))
    }

    /// Mean absolute residual, the scale used to calibrate the first step.
    pub fn typical(&self) -> f64 {
        let all: Vec<f64> = self.alpha.iter().chain(&self.beta).chain(&self.window).map(|x| x.abs()).collect();
        if all.is_empty() {
            0.0
        } else {
            all.iter().sum::<f64>() / all.len() as f64
        }
    }
}

/// Diminishing step `s0 / √k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSchedule {
    pub initial: f64,
}

impl StepSchedule {
    pub fn step(&self, k: usize) -> f64 {
        self.initial / (k.max(1) as f64).sqrt()
    }
}

/// Projected subgradient step `m ← [m + s_k·residual]⁺` on the battery
/// multipliers; `ζ`, `θ` and `μ` are carried over unchanged.
pub fn update_multipliers(m: &Multipliers, residuals: &Residuals, schedule: &StepSchedule, k: usize) -> Multipliers {
    let s = schedule.step(k);
    let step = |v: &[f64], r: &[f64]| v.iter().zip(r).map(|(x, g)| (x + s * g).max(0.0)).collect();
    Multipliers {
        alpha: step(&m.alpha, &residuals.alpha),
        beta: step(&m.beta, &residuals.beta),
        window: step(&m.window, &residuals.window),
        zeta: m.zeta.clone(),
        theta: m.theta.clone(),
        mu: m.mu,
    }
}
