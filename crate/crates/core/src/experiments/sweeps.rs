use super::config::{ScenarioConfig, SweepKind};
use crate::error::{Error, Result};
use crate::model::{EpochTimeline, OverflowRule, SystemParams};
use crate::solver::{baseline_full_array_with, dinkelbach_solve, min_energy_for_se, AntennaPolicy, SolveOptions, SolveReport};

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Ok,
    Infeasible,
    NotConverged,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infeasible => "infeasible",
            Status::NotConverged => "not_converged",
        }
    }
}

/// Outcome of one solve inside a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub status: Status,
    pub weighted_ee: Option<f64>,
    pub spectral_efficiency: Option<f64>,
    pub weighted_energy: Option<f64>,
    pub antennas: Vec<usize>,
    pub iterations: usize,
    pub trace: Vec<(f64, f64)>,
}

impl Point {
    fn infeasible() -> Self {
        Self {
            status: Status::Infeasible,
            weighted_ee: None,
            spectral_efficiency: None,
            weighted_energy: None,
            antennas: Vec::new(),
            iterations: 0,
            trace: Vec::new(),
        }
    }

    fn from_report(r: &SolveReport, status: Status) -> Self {
        Self {
            status,
            weighted_ee: Some(r.q_star),
            spectral_efficiency: Some(r.spectral_efficiency),
            weighted_energy: Some(r.weighted_energy),
            antennas: r.schedule.antenna_counts(),
            iterations: r.iterations(),
            trace: r.trace.iter().map(|s| (s.q, s.surplus)).collect(),
        }
    }
}

fn solve_point(result: Result<SolveReport>) -> Result<Point> {
    match result {
        Ok(r) => Ok(Point::from_report(&r, Status::Ok)),
        Err(Error::NotConverged { report, .. }) => Ok(Point::from_report(&report, Status::NotConverged)),
        Err(Error::Infeasible(_)) => Ok(Point::infeasible()),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EeVsMRow {
    pub p_rf: f64,
    pub antennas: usize,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityRow {
    pub battery_capacity: f64,
    pub proposed: Point,
    pub baseline: Point,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffRow {
    pub battery_capacity: f64,
    /// Time-averaged spectral efficiency target, bits/s/Hz.
    pub se_target: f64,
    pub status: Status,
    pub weighted_ee: Option<f64>,
    /// Time-averaged spectral efficiency reached, bits/s/Hz.
    pub se_achieved: Option<f64>,
    pub weighted_energy: Option<f64>,
}

/// Maps `f` over `items`, keeping input order. With the `parallel` feature
/// and `workers != 1` the points run on a dedicated thread pool
/// (`workers == 0` picks the number of cores).
pub fn map_points<T, R, F>(items: Vec<T>, workers: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers != 1 {
        use rayon::prelude::*;
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            return pool.install(|| items.into_par_iter().map(&f).collect());
        }
    }
    let _ = workers;
    items.into_iter().map(f).collect()
}

fn series_or(config: &ScenarioConfig, fallback: f64) -> Vec<f64> {
    if config.series.is_empty() {
        vec![fallback]
    } else {
        config.series.clone()
    }
}

fn range(config: &ScenarioConfig) -> Result<Vec<f64>> {
    config
        .range
        .map(|r| r.values())
        .ok_or_else(|| Error::Config(format!("sweep {} needs a range", config.sweep.name())))
}

fn aligned(config: &ScenarioConfig) -> Result<(SystemParams, EpochTimeline)> {
    let tl = config.timeline()?;
    let mut params = config.params.clone();
    params.horizon = tl.horizon();
    Ok((params, tl))
}

/// Energy efficiency with the antenna count pinned across epochs and powers
/// optimised, for every count in the range and every RF-chain power in the
/// series.
pub fn run_ee_vs_m(config: &ScenarioConfig, workers: usize) -> Result<Vec<EeVsMRow>> {
    let (params, tl) = aligned(config)?;
    let mut jobs = Vec::new();
    for p_rf in series_or(config, params.p_rf) {
        for m in range(config)? {
            jobs.push((p_rf, m as usize));
        }
    }
    map_points(jobs, workers, |(p_rf, m)| {
        let p = SystemParams { p_rf, ..params.clone() };
        let options = SolveOptions {
            antennas: AntennaPolicy::Fixed(m),
            ..config.solver.clone()
        };
        Ok(EeVsMRow {
            p_rf,
            antennas: m,
            point: solve_point(dinkelbach_solve(&p, &tl, &options))?,
        })
    })
    .into_iter()
    .collect()
}

/// Proposed and full-array energy efficiency against battery capacity, with
/// the overflow constraint removed.
pub fn run_ee_vs_capacity(config: &ScenarioConfig, workers: usize) -> Result<Vec<CapacityRow>> {
    let (params, tl) = aligned(config)?;
    map_points(range(config)?, workers, |b| {
        let p = SystemParams {
            battery_capacity: b,
            overflow: OverflowRule::Spill,
            ..params.clone()
        };
        Ok(CapacityRow {
            battery_capacity: b,
            proposed: solve_point(dinkelbach_solve(&p, &tl, &config.solver))?,
            baseline: solve_point(baseline_full_array_with(&p, &tl, &config.solver))?,
        })
    })
    .into_iter()
    .collect()
}

/// Highest energy efficiency at each time-averaged spectral-efficiency
/// target, found as the least weighted energy meeting the target exactly.
/// One series per battery capacity.
pub fn run_ee_se_tradeoff(config: &ScenarioConfig, workers: usize) -> Result<Vec<TradeoffRow>> {
    let (params, tl) = aligned(config)?;
    let horizon = tl.horizon();
    let mut jobs = Vec::new();
    for b in series_or(config, params.battery_capacity) {
        for s in range(config)? {
            jobs.push((b, s));
        }
    }
    map_points(jobs, workers, |(b, s)| {
        let p = SystemParams {
            battery_capacity: b,
            ..params.clone()
        };
        let row = match min_energy_for_se(&p, &tl, s * horizon, &config.solver) {
            Ok(t) => TradeoffRow {
                battery_capacity: b,
                se_target: s,
                status: Status::Ok,
                weighted_ee: Some(t.weighted_ee),
                se_achieved: Some(t.spectral_efficiency / horizon),
                weighted_energy: Some(t.weighted_energy),
            },
            Err(Error::Infeasible(_)) => TradeoffRow {
                battery_capacity: b,
                se_target: s,
                status: Status::Infeasible,
                weighted_ee: None,
                se_achieved: None,
                weighted_energy: None,
            },
            Err(e) => return Err(e),
        };
        Ok(row)
    })
    .into_iter()
    .collect()
}

/// One full solve.
pub fn run_single(config: &ScenarioConfig) -> Result<(SolveReport, EpochTimeline)> {
    let (params, tl) = aligned(config)?;
    let r = dinkelbach_solve(&params, &tl, &config.solver)?;
    Ok((r, tl))
}

/// Sweep results in table form.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub kind: SweepKind,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Axis and series names for the sidecar file.
    pub meta: Vec<(String, String)>,
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn counts(a: &[usize]) -> String {
    a.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

impl Table {
    pub fn ee_vs_m(rows: &[EeVsMRow]) -> Self {
        Self {
            kind: SweepKind::EeVsM,
            header: strings(&["p_rf_w", "antennas", "weighted_ee", "spectral_efficiency", "weighted_energy_j", "iterations", "status"]),
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.p_rf.to_string(),
                        r.antennas.to_string(),
                        cell(r.point.weighted_ee),
                        cell(r.point.spectral_efficiency),
                        cell(r.point.weighted_energy),
                        r.point.iterations.to_string(),
                        r.point.status.label().to_string(),
                    ]
                })
                .collect(),
            meta: vec![
                ("x_axis".into(), "antennas".into()),
                ("y_axis".into(), "weighted_ee (bits/Hz/J)".into()),
                ("series".into(), "p_rf_w".into()),
            ],
        }
    }

    pub fn ee_vs_capacity(rows: &[CapacityRow]) -> Self {
        Self {
            kind: SweepKind::EeVsCapacity,
            header: strings(&[
                "battery_capacity_j",
                "weighted_ee_proposed",
                "weighted_ee_full_array",
                "antennas_proposed",
                "status_proposed",
                "status_full_array",
            ]),
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.battery_capacity.to_string(),
                        cell(r.proposed.weighted_ee),
                        cell(r.baseline.weighted_ee),
                        counts(&r.proposed.antennas),
                        r.proposed.status.label().to_string(),
                        r.baseline.status.label().to_string(),
                    ]
                })
                .collect(),
            meta: vec![
                ("x_axis".into(), "battery_capacity_j".into()),
                ("y_axis".into(), "weighted_ee (bits/Hz/J)".into()),
                ("series".into(), "weighted_ee_proposed,weighted_ee_full_array".into()),
            ],
        }
    }

    pub fn ee_se_tradeoff(rows: &[TradeoffRow]) -> Self {
        Self {
            kind: SweepKind::EeSeTradeoff,
            header: strings(&["battery_capacity_j", "se_target", "weighted_ee", "se_achieved", "weighted_energy_j", "status"]),
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.battery_capacity.to_string(),
                        r.se_target.to_string(),
                        cell(r.weighted_ee),
                        cell(r.se_achieved),
                        cell(r.weighted_energy),
                        r.status.label().to_string(),
                    ]
                })
                .collect(),
            meta: vec![
                ("x_axis".into(), "se_target (bits/s/Hz, time average)".into()),
                ("y_axis".into(), "weighted_ee (bits/Hz/J)".into()),
                ("series".into(), "battery_capacity_j".into()),
            ],
        }
    }
}
