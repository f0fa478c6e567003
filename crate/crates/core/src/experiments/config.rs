//! Scenario files: `key = value` lines grouped under `[section]` headers
//! (a TOML subset). Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::harvest::{generate_timeline, timeline_from_arrivals, AmountModel, ArrivalModel};
use crate::model::{dbm_to_watts, EpochTimeline, OverflowRule, SystemParams};
use crate::solver::SolveOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    EeVsM,
    EeVsCapacity,
    EeSeTradeoff,
    SingleSolve,
}

impl SweepKind {
    pub fn name(self) -> &'static str {
        match self {
            SweepKind::EeVsM => "ee_vs_m",
            SweepKind::EeVsCapacity => "ee_vs_capacity",
            SweepKind::EeSeTradeoff => "ee_se_tradeoff",
            SweepKind::SingleSolve => "single_solve",
        }
    }
}

/// Inclusive range `start, start + step, ..., ≤ stop`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || !(self.stop >= self.start) || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::Config(format!("sweep range {self:?} must be non-empty with step > 0")));
        }
        Ok(())
    }
}

/// Where the energy arrivals come from.
#[derive(Debug, Clone, PartialEq)]
pub enum TimelineSource {
    /// `(time, amount)` pairs.
    Explicit { initial_energy: f64, arrivals: Vec<(f64, f64)> },
    /// Poisson arrivals at the configured rate; the seed comes from the scenario.
    Poisson { initial_energy: f64, amounts: AmountModel },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub sweep: SweepKind,
    pub params: SystemParams,
    pub timeline: TimelineSource,
    pub range: Option<SweepRange>,
    /// Extra series: RF-chain powers in W for `ee_vs_m`, battery capacities
    /// in J for `ee_se_tradeoff`.
    pub series: Vec<f64>,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub solver: SolveOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    scenario: RawScenario,
    #[serde(default)]
    params: RawParams,
    #[serde(default)]
    timeline: Option<RawTimeline>,
    #[serde(default)]
    arrivals: Option<RawArrivals>,
    #[serde(default)]
    sweep: Option<RawSweep>,
    #[serde(default)]
    solver: BTreeMap<String, toml::Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    sweep: SweepKind,
    #[serde(default)]
    output: Option<PathBuf>,
    #[serde(default)]
    seed: u64,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawParams {
    total_antennas: Option<usize>,
    p_tx_max_dbm: Option<f64>,
    p_tx_max_w: Option<f64>,
    p_circuit: Option<f64>,
    p_rf: Option<f64>,
    pa_efficiency: Option<f64>,
    grid_weight: Option<f64>,
    p_grid_max: Option<f64>,
    battery_capacity: Option<f64>,
    qos_min: Option<f64>,
    arrival_rate: Option<f64>,
    horizon: Option<f64>,
    overflow: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTimeline {
    #[serde(default)]
    initial_energy: f64,
    arrivals: Vec<(f64, f64)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrivals {
    #[serde(default)]
    initial_energy: f64,
    amount: Option<f64>,
    amount_lo: Option<f64>,
    amount_hi: Option<f64>,
    amount_mean: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    start: Option<f64>,
    stop: Option<f64>,
    step: Option<f64>,
    #[serde(default)]
    series: Vec<f64>,
}

fn cfg<E: std::fmt::Display>(e: E) -> Error {
    Error::Config(e.to_string())
}

impl RawParams {
    fn build(self) -> Result<SystemParams> {
        let d = SystemParams::default();
        if self.p_tx_max_dbm.is_some() && self.p_tx_max_w.is_some() {
            return Err(Error::Config("give p_tx_max_dbm or p_tx_max_w, not both".into()));
        }
        let overflow = match self.overflow.as_deref() {
            None | Some("constrained") => OverflowRule::Constrained,
            Some("spill") => OverflowRule::Spill,
            Some(o) => return Err(Error::Config(format!("overflow must be \"constrained\" or \"spill\", got {o:?}"))),
        };
        let p = SystemParams {
            total_antennas: self.total_antennas.unwrap_or(d.total_antennas),
            p_tx_max: self.p_tx_max_w.or(self.p_tx_max_dbm.map(dbm_to_watts)).unwrap_or(d.p_tx_max),
            p_circuit: self.p_circuit.unwrap_or(d.p_circuit),
            p_rf: self.p_rf.unwrap_or(d.p_rf),
            pa_efficiency: self.pa_efficiency.unwrap_or(d.pa_efficiency),
            grid_weight: self.grid_weight.unwrap_or(d.grid_weight),
            p_grid_max: self.p_grid_max.unwrap_or(d.p_grid_max),
            battery_capacity: self.battery_capacity.unwrap_or(d.battery_capacity),
            qos_min: self.qos_min.unwrap_or(d.qos_min),
            arrival_rate: self.arrival_rate.unwrap_or(d.arrival_rate),
            horizon: self.horizon.unwrap_or(d.horizon),
            overflow,
        };
        p.validate().map_err(cfg)?;
        Ok(p)
    }
}

impl RawArrivals {
    fn amounts(&self) -> Result<AmountModel> {
        match (self.amount, self.amount_lo, self.amount_hi, self.amount_mean) {
            (Some(a), None, None, None) => Ok(AmountModel::Constant(a)),
            (None, Some(lo), Some(hi), None) => Ok(AmountModel::Uniform { lo, hi }),
            (None, None, None, Some(mean)) => Ok(AmountModel::Exponential { mean }),
            _ => Err(Error::Config(
                "[arrivals] needs exactly one of: amount, amount_lo + amount_hi, amount_mean".into(),
            )),
        }
    }
}

fn value_string(v: &toml::Value) -> String {
    match v {
        toml::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(cfg)?;
        let params = raw.params.build()?;
        let timeline = match (raw.timeline, raw.arrivals) {
            (Some(t), None) => TimelineSource::Explicit {
                initial_energy: t.initial_energy,
                arrivals: t.arrivals,
            },
            (None, Some(a)) => TimelineSource::Poisson {
                initial_energy: a.initial_energy,
                amounts: a.amounts()?,
            },
            (None, None) => return Err(Error::Config("one of [timeline] or [arrivals] is required".into())),
            (Some(_), Some(_)) => return Err(Error::Config("[timeline] and [arrivals] are mutually exclusive".into())),
        };
        let (range, series) = match raw.sweep {
            Some(s) => {
                let range = match (s.start, s.stop, s.step) {
                    (Some(start), Some(stop), Some(step)) => Some(SweepRange { start, stop, step }),
                    (None, None, None) => None,
                    _ => return Err(Error::Config("[sweep] needs start, stop and step together".into())),
                };
                (range, s.series)
            }
            None => (None, Vec::new()),
        };
        let mut solver = SolveOptions::default();
        let pairs: Vec<(String, String)> = raw.solver.iter().map(|(k, v)| (k.clone(), value_string(v))).collect();
        solver.apply(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))?;

        let c = Self {
            sweep: raw.scenario.sweep,
            params,
            timeline,
            range,
            series,
            output: raw.scenario.output,
            seed: raw.scenario.seed,
            solver,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let needs_range = self.sweep != SweepKind::SingleSolve;
        match (&self.range, needs_range) {
            (Some(r), _) => r.validate()?,
            (None, true) => return Err(Error::Config(format!("sweep {} needs a [sweep] range", self.sweep.name()))),
            (None, false) => {}
        }
        if self.sweep == SweepKind::EeVsM {
            if let Some(r) = &self.range {
                let n = self.params.total_antennas as f64;
                if r.start < 1.0 || r.stop > n || r.start.fract() != 0.0 || r.step.fract() != 0.0 {
                    return Err(Error::Config(format!("antenna range must be integral inside [1, {n}]")));
                }
            }
        }
        if self.series.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::Config("series values must be finite and >= 0".into()));
        }
        self.timeline().map(|_| ())
    }

    /// The energy arrival timeline; Poisson draws use the scenario seed.
    pub fn timeline(&self) -> Result<EpochTimeline> {
        match &self.timeline {
            TimelineSource::Explicit { initial_energy, arrivals } => {
                timeline_from_arrivals(*initial_energy, arrivals, self.params.horizon)
            }
            TimelineSource::Poisson { initial_energy, amounts } => generate_timeline(&ArrivalModel {
                rate: self.params.arrival_rate,
                amounts: *amounts,
                initial_energy: *initial_energy,
                horizon: self.params.horizon,
                seed: self.seed,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EE_VS_M: &str = r#"
[scenario]
sweep = "ee_vs_m"
seed = 3

[params]
p_tx_max_dbm = 46
horizon = 3.0

[timeline]
arrivals = [[0.0, 1000.0]]

[sweep]
start = 1
stop = 100
step = 1
series = [0.0, 0.16, 0.45]

[solver]
tolerance = 1e-4
"#;

    #[test]
    fn parses_a_full_file() {
        let c = ScenarioConfig::parse(EE_VS_M).unwrap();
        assert_eq!(c.sweep, SweepKind::EeVsM);
        assert!((c.params.p_tx_max - 39.810717055).abs() < 1e-6);
        assert_eq!(c.range.unwrap().values().len(), 100);
        assert_eq!(c.series, vec![0.0, 0.16, 0.45]);
        assert_eq!(c.solver.tolerance, 1e-4);
        let tl = c.timeline().unwrap();
        assert_eq!(tl.len(), 1);
        assert_eq!(tl.harvested(), &[1000.0]);
    }

    #[test]
    fn typos_are_errors() {
        for bad in [
            EE_VS_M.replace("horizon", "horizen"),
            EE_VS_M.replace("tolerance", "tolerence"),
            EE_VS_M.replace("[sweep]", "[swep]"),
            EE_VS_M.replace("\"ee_vs_m\"", "\"ee_vs_n\""),
        ] {
            assert!(matches!(ScenarioConfig::parse(&bad), Err(Error::Config(_))), "{bad}");
        }
    }

    #[test]
    fn range_rules() {
        assert!(ScenarioConfig::parse(&EE_VS_M.replace("step = 1", "step = 0")).is_err());
        assert!(ScenarioConfig::parse(&EE_VS_M.replace("stop = 100", "stop = 101")).is_err());
        assert_eq!(
            SweepRange {
                start: 0.0,
                stop: 12.0,
                step: 0.5
            }
            .values()
            .len(),
            25
        );
    }

    #[test]
    fn poisson_timelines_follow_the_seed() {
        let text = r#"
[scenario]
sweep = "single_solve"
seed = 11
[arrivals]
amount = 700
"#;
        let c = ScenarioConfig::parse(text).unwrap();
        let a = c.timeline().unwrap();
        assert_eq!(a, c.timeline().unwrap());
        assert!(a.harvested()[1..].iter().all(|&e| e == 700.0));
    }
}
