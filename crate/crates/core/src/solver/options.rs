use crate::error::{Error, Result};

/// Which antenna counts the per-epoch scan may pick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AntennaPolicy {
    /// Any `M` in `1..=N`, chosen per epoch.
    #[default]
    Free,
    /// The same `M` in every epoch.
    Fixed(usize),
}

/// Solver knobs: outer iteration cap and tolerance, dual-loop budget.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Dinkelbach iteration cap `L_max`.
    pub max_iterations: usize,
    /// Dinkelbach stopping tolerance `Δ` on `U_SE - q E_W`, bits/Hz.
    pub tolerance: f64,
    /// Projected-subgradient iterations per inner solve.
    pub dual_iterations: usize,
    /// Early exit once the dual gap falls below this fraction of the
    /// spectral-efficiency scale.
    pub dual_gap_tol: f64,
    /// Multiplies the automatically calibrated initial step `s0`.
    pub step_scale: f64,
    /// Bisection steps for the QoS multiplier and for SE targets.
    pub bisection_iterations: usize,
    pub antennas: AntennaPolicy,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            max_iterations: 10,
            tolerance: 1e-3,
            dual_iterations: 500,
            dual_gap_tol: 1e-3,
            step_scale: 1.0,
            bisection_iterations: 40,
            antennas: AntennaPolicy::Free,
        }
    }
}

impl SolveOptions {
    /// Applies `key = value` overrides. Unknown keys are rejected.
    pub fn apply<'a, I>(&mut self, pairs: I) -> Result<()>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad value {v:?} for solver option {key}")))
        }
        for (key, value) in pairs {
            match key.trim() {
                "max_iterations" => self.max_iterations = num(key, value)?,
                "tolerance" => self.tolerance = num(key, value)?,
                "dual_iterations" => self.dual_iterations = num(key, value)?,
                "dual_gap_tol" => self.dual_gap_tol = num(key, value)?,
                "step_scale" => self.step_scale = num(key, value)?,
                "bisection_iterations" => self.bisection_iterations = num(key, value)?,
                "fixed_antennas" => {
                    let m: usize = num(key, value)?;
                    self.antennas = if m == 0 { AntennaPolicy::Free } else { AntennaPolicy::Fixed(m) };
                }
                other => return Err(Error::Config(format!("unknown solver option {other:?}"))),
            }
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 || self.dual_iterations == 0 {
            return Err(Error::Config("iteration budgets must be positive".into()));
        }
        if !(self.tolerance > 0.0) || !(self.dual_gap_tol >= 0.0) || !(self.step_scale > 0.0) {
            return Err(Error::Config("tolerances and step scale must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_and_typos() {
        let mut o = SolveOptions::default();
        o.apply([("tolerance", "1e-4"), ("fixed_antennas", "61")]).unwrap();
        assert_eq!(o.tolerance, 1e-4);
        assert_eq!(o.antennas, AntennaPolicy::Fixed(61));
        assert!(o.apply([("tolerence", "1")]).is_err());
        assert!(o.apply([("dual_iterations", "0")]).is_err());
        assert!(o.apply([("tolerance", "abc")]).is_err());
    }
}
