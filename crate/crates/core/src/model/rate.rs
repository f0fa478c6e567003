//! Mean and variance of the mutual information under transmit antenna
//! selection (best `M` of `N` antennas, unit noise variance).

use std::f64::consts::LOG2_E;

use crate::error::{Error, Result};

fn check(antennas: usize, p_tx: f64, total: usize) -> Result<()> {
    if antennas < 1 || antennas > total {
        return Err(Error::Domain(format!("antenna count {antennas} outside [1, {total}]")));
    }
    if !(p_tx >= 0.0) {
        return Err(Error::Domain(format!("transmit power must be >= 0, got {p_tx}")));
    }
    Ok(())
}

/// Effective array gain `(1 + ln(N/M)) * M` of the `M` strongest antennas.
pub fn array_gain(antennas: usize, total: usize) -> f64 {
    let m = antennas as f64;
    (1.0 + (total as f64 / m).ln()) * m
}

/// `Φ = 1 / array_gain`, the water-filling floor.
pub fn water_floor(antennas: usize, total: usize) -> f64 {
    1.0 / array_gain(antennas, total)
}

/// `log2(1 + (1 + ln(N/M)) p M)` in bits/s/Hz.
pub fn mean_rate(antennas: usize, p_tx: f64, total: usize) -> Result<f64> {
    check(antennas, p_tx, total)?;
    Ok(mean_rate_unchecked(antennas, p_tx, total))
}

pub(crate) fn mean_rate_unchecked(antennas: usize, p_tx: f64, total: usize) -> f64 {
    (array_gain(antennas, total) * p_tx).ln_1p() * LOG2_E
}

/// `(log2 e · p)² M (2 − M/N) / (1 + (1 + ln(N/M)) p M)²`.
pub fn rate_variance(antennas: usize, p_tx: f64, total: usize) -> Result<f64> {
    check(antennas, p_tx, total)?;
    let m = antennas as f64;
    let n = total as f64;
    let denom = 1.0 + array_gain(antennas, total) * p_tx;
    Ok((LOG2_E * p_tx).powi(2) * m * (2.0 - m / n) / (denom * denom))
}
