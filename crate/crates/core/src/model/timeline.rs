use crate::error::{Error, Result};

/// Energy arrivals over the horizon, split into epochs.
///
/// Epoch `i` (zero-based) spans `[t_start(i), t_end(i))`. Its harvested amount
/// `harvested[i]` lands at the start of the epoch and is usable from then on;
/// `initial_energy` sits in the battery at `t = 0` on top of `harvested[0]`.
/// `arrival_times` holds the epoch end instants, so the last entry equals the
/// horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochTimeline {
    initial_energy: f64,
    arrival_times: Vec<f64>,
    epoch_lengths: Vec<f64>,
    harvested: Vec<f64>,
}

impl EpochTimeline {
    /// Builds a timeline from epoch end instants (strictly increasing, first > 0).
    pub fn new(initial_energy: f64, arrival_times: Vec<f64>, harvested: Vec<f64>) -> Result<Self> {
        let mut lengths = Vec::with_capacity(arrival_times.len());
        let mut prev = 0.0;
        for &t in &arrival_times {
            lengths.push(t - prev);
            prev = t;
        }
        let timeline = Self {
            initial_energy,
            arrival_times,
            epoch_lengths: lengths,
            harvested,
        };
        timeline.validate()?;
        Ok(timeline)
    }

    /// Builds a timeline from epoch lengths.
    pub fn from_lengths(initial_energy: f64, epoch_lengths: Vec<f64>, harvested: Vec<f64>) -> Result<Self> {
        let mut t = 0.0;
        let arrival_times = epoch_lengths
            .iter()
            .map(|len| {
                t += len;
                t
            })
            .collect();
        let timeline = Self {
            initial_energy,
            arrival_times,
            epoch_lengths,
            harvested,
        };
        timeline.validate()?;
        Ok(timeline)
    }

    /// One epoch covering the whole horizon with a single arrival at `t = 0`.
    pub fn single_arrival(amount: f64, horizon: f64) -> Result<Self> {
        Self::from_lengths(0.0, vec![horizon], vec![amount])
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTimeline(msg));
        if self.epoch_lengths.is_empty() {
            return bad("timeline needs at least one epoch".into());
        }
        if self.harvested.len() != self.epoch_lengths.len() {
            return bad(format!(
                "{} harvested amounts for {} epochs",
                self.harvested.len(),
                self.epoch_lengths.len()
            ));
        }
        if !(self.initial_energy.is_finite() && self.initial_energy >= 0.0) {
            return bad(format!("initial energy must be >= 0, got {}", self.initial_energy));
        }
        for (i, (&len, &e)) in self.epoch_lengths.iter().zip(&self.harvested).enumerate() {
            if !(len.is_finite() && len > 0.0) {
                return bad(format!("epoch {i} has non-positive length {len}"));
            }
            if !(e.is_finite() && e >= 0.0) {
                return bad(format!("epoch {i} has negative harvest {e}"));
            }
        }
        Ok(())
    }

    /// Checks that the epochs tile `[0, horizon]` up to a relative tolerance.
    pub fn check_horizon(&self, horizon: f64) -> Result<()> {
        let total = self.horizon();
        if (total - horizon).abs() > 1e-9 * horizon.max(1.0) {
            return Err(Error::InvalidTimeline(format!(
                "epochs sum to {total} s but the horizon is {horizon} s"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.epoch_lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epoch_lengths.is_empty()
    }

    pub fn initial_energy(&self) -> f64 {
        self.initial_energy
    }

    pub fn arrival_times(&self) -> &[f64] {
        &self.arrival_times
    }

    pub fn epoch_lengths(&self) -> &[f64] {
        &self.epoch_lengths
    }

    pub fn harvested(&self) -> &[f64] {
        &self.harvested
    }

    pub fn t_start(&self, epoch: usize) -> f64 {
        if epoch == 0 {
            0.0
        } else {
            self.arrival_times[epoch - 1]
        }
    }

    pub fn t_end(&self, epoch: usize) -> f64 {
        self.arrival_times[epoch]
    }

    pub fn horizon(&self) -> f64 {
        self.epoch_lengths.iter().sum()
    }

    /// Initial energy plus everything harvested.
    pub fn total_energy(&self) -> f64 {
        self.initial_energy + self.harvested.iter().sum::<f64>()
    }

    /// Copy with every epoch length multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_lengths(
            self.initial_energy,
            self.epoch_lengths.iter().map(|t| t * factor).collect(),
            self.harvested.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_follow_from_arrivals() {
        let tl = EpochTimeline::new(5.0, vec![1.0, 2.5, 7.0], vec![10.0, 0.0, 3.0]).unwrap();
        assert_eq!(tl.epoch_lengths(), &[1.0, 1.5, 4.5]);
        assert_eq!(tl.t_start(1), 1.0);
        assert_eq!(tl.t_end(2), 7.0);
        assert_eq!(tl.total_energy(), 18.0);
        tl.check_horizon(7.0).unwrap();
        assert!(tl.check_horizon(8.0).is_err());
    }

    #[test]
    fn rejects_bad_timelines() {
        assert!(EpochTimeline::new(0.0, vec![1.0, 1.0], vec![0.0, 0.0]).is_err());
        assert!(EpochTimeline::new(0.0, vec![], vec![]).is_err());
        assert!(EpochTimeline::new(0.0, vec![1.0], vec![-1.0]).is_err());
        assert!(EpochTimeline::new(0.0, vec![1.0], vec![1.0, 2.0]).is_err());
        assert!(EpochTimeline::new(-1.0, vec![1.0], vec![1.0]).is_err());
    }
}
