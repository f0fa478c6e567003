use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};

/// Channel power gains `|h_j|²` of all antennas, unit-mean exponential.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDraw {
    pub gains: Vec<f64>,
}

impl ChannelDraw {
    pub fn sample<R: rand::Rng>(antennas: usize, rng: &mut R) -> Self {
        Self {
            gains: (0..antennas).map(|_| Exp1.sample(rng)).collect(),
        }
    }

    /// Sum of the `m` largest gains.
    pub fn top_sum(&mut self, m: usize) -> f64 {
        self.gains.sort_unstable_by(|a, b| b.total_cmp(a));
        self.gains[..m].iter().sum()
    }
}

/// Sample statistics of the selected-antenna rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    pub mean: f64,
    pub variance: f64,
    pub mean_stderr: f64,
    pub variance_stderr: f64,
}

/// Monte-Carlo estimate of `log2(1 + p·Σ top-M |h_j|²)`.
pub fn monte_carlo_rate(antennas: usize, p_tx: f64, total: usize, draws: usize, seed: u64) -> Result<RateEstimate> {
    if antennas < 1 || antennas > total {
        return Err(Error::Domain(format!("antenna count {antennas} outside [1, {total}]")));
    }
    if draws < 2 || !(p_tx >= 0.0) {
        return Err(Error::Domain("need at least two draws and p_tx >= 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<f64> = (0..draws)
        .map(|_| {
            let mut ch = ChannelDraw::sample(total, &mut rng);
            (p_tx * ch.top_sum(antennas)).ln_1p() * std::f64::consts::LOG2_E
        })
        .collect();
    let n = draws as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let m2: f64 = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let m4: f64 = samples.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    Ok(RateEstimate {
        mean,
        variance: m2,
        mean_stderr: (m2 / n).sqrt(),
        variance_stderr: ((m4 - m2 * m2).max(0.0) / n).sqrt(),
    })
}

/// Largest second central difference of `M ↦ log2(1 + (1 + ln(N/M))·p·M)`
/// over the interior points `M = 2..N−1`. Negative means concave on the grid.
/// With `N = 2` there is no interior integer, so the midpoint `M = 1.5` is
/// probed with a half step.
pub fn numeric_concavity_probe(p_tx: f64, total: usize) -> f64 {
    let n = total as f64;
    let f = |m: f64| ((1.0 + (n / m).ln()) * p_tx * m).ln_1p() * std::f64::consts::LOG2_E;
    if total == 2 {
        return f(2.0) - 2.0 * f(1.5) + f(1.0);
    }
    (2..total)
        .map(|m| {
            let m = m as f64;
            f(m + 1.0) - 2.0 * f(m) + f(m - 1.0)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}
