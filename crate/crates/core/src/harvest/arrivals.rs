use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

use crate::error::{Error, Result};
use crate::model::EpochTimeline;

/// Law of the amount harvested at each arrival, in J.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AmountModel {
    Constant(f64),
    Uniform { lo: f64, hi: f64 },
    Exponential { mean: f64 },
}

impl AmountModel {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            AmountModel::Constant(e) => e.is_finite() && e >= 0.0,
            AmountModel::Uniform { lo, hi } => lo.is_finite() && hi.is_finite() && lo >= 0.0 && hi >= lo,
            AmountModel::Exponential { mean } => mean.is_finite() && mean > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("invalid amount model {self:?}")))
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            AmountModel::Constant(e) => e,
            AmountModel::Uniform { lo, hi } => {
                if hi > lo {
                    rng.random_range(lo..hi)
                } else {
                    lo
                }
            }
            AmountModel::Exponential { mean } => Exp::new(1.0 / mean).expect("mean > 0").sample(rng),
        }
    }
}

/// Poisson energy arrivals over a finite horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalModel {
    /// Arrival rate λ_E in events/s.
    pub rate: f64,
    pub amounts: AmountModel,
    pub initial_energy: f64,
    pub horizon: f64,
    pub seed: u64,
}

impl ArrivalModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.rate > 0.0 && self.rate.is_finite()) {
            return Err(Error::InvalidParams("arrival rate must be > 0".into()));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::InvalidParams("horizon must be > 0".into()));
        }
        if !(self.initial_energy >= 0.0 && self.initial_energy.is_finite()) {
            return Err(Error::InvalidParams("initial energy must be >= 0".into()));
        }
        self.amounts.validate()
    }
}

/// Draws a timeline: exponential inter-arrival gaps with mean `1/rate`, arrivals
/// at or beyond the horizon dropped and the last epoch closed at the horizon.
/// The first epoch starts at `t = 0` with only the initial energy.
pub fn generate_timeline(model: &ArrivalModel) -> Result<EpochTimeline> {
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let gaps = Exp::new(model.rate).map_err(|e| Error::InvalidParams(e.to_string()))?;
    let mut arrivals = Vec::new();
    let mut t = 0.0;
    loop {
        t += gaps.sample(&mut rng);
        if t >= model.horizon {
            break;
        }
        arrivals.push((t, model.amounts.sample(&mut rng)));
    }
    timeline_from_arrivals(model.initial_energy, &arrivals, model.horizon)
}

/// Builds a timeline from an explicit `(time, amount)` arrival list.
///
/// An arrival at `t = 0` becomes the harvest of the first epoch; every later
/// arrival opens a new epoch. Times must be strictly increasing and inside
/// `[0, horizon)`.
pub fn timeline_from_arrivals(initial_energy: f64, arrivals: &[(f64, f64)], horizon: f64) -> Result<EpochTimeline> {
    let mut ends = Vec::with_capacity(arrivals.len() + 1);
    let mut harvested = vec![0.0];
    let mut prev = f64::NEG_INFINITY;
    for &(t, amount) in arrivals {
        if !(t >= 0.0 && t < horizon) || t <= prev {
            return Err(Error::InvalidTimeline(format!(
                "arrival time {t} must be increasing and inside [0, {horizon})"
            )));
        }
        prev = t;
        if t == 0.0 {
            harvested[0] += amount;
        } else {
            ends.push(t);
            harvested.push(amount);
        }
    }
    ends.push(horizon);
    EpochTimeline::new(initial_energy, ends, harvested)
}
