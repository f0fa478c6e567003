use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::config::{ScenarioConfig, SweepKind};
use super::sweeps::{run_ee_se_tradeoff, run_ee_vs_capacity, run_ee_vs_m, run_single, Table};
use crate::error::Result;
use crate::harvest::csv::write_timeline;
use crate::model::EpochTimeline;
use crate::solver::{write_report, SolveReport};

/// Everything a scenario run produces.
#[derive(Debug, Clone)]
pub enum RunOutput {
    Table { table: Table, timeline: EpochTimeline },
    Report { report: Box<SolveReport>, timeline: EpochTimeline },
}

/// Runs the scenario's sweep directive.
pub fn run(config: &ScenarioConfig, workers: usize) -> Result<RunOutput> {
    let timeline = config.timeline()?;
    let table = match config.sweep {
        SweepKind::EeVsM => Table::ee_vs_m(&run_ee_vs_m(config, workers)?),
        SweepKind::EeVsCapacity => Table::ee_vs_capacity(&run_ee_vs_capacity(config, workers)?),
        SweepKind::EeSeTradeoff => Table::ee_se_tradeoff(&run_ee_se_tradeoff(config, workers)?),
        SweepKind::SingleSolve => {
            let (report, timeline) = run_single(config)?;
            return Ok(RunOutput::Report {
                report: Box::new(report),
                timeline,
            });
        }
    };
    Ok(RunOutput::Table { table, timeline })
}

/// Comma-separated, header first, LF line endings.
pub fn write_table<W: Write>(table: &Table, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// `key = value` sidecar naming the sweep, axes and series.
pub fn write_meta<W: Write>(table: &Table, config: &ScenarioConfig, mut out: W) -> Result<()> {
    writeln!(out, "sweep = {}", table.kind.name())?;
    writeln!(out, "seed = {}", config.seed)?;
    writeln!(out, "columns = {}", table.header.join(","))?;
    for (k, v) in &table.meta {
        writeln!(out, "{k} = {v}")?;
    }
    Ok(())
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

/// Writes the main output to `path` plus `<stem>.meta` (tables only) and
/// `<stem>_timeline.csv`. Returns the paths written.
pub fn write_outputs(output: &RunOutput, config: &ScenarioConfig, path: &Path) -> Result<Vec<PathBuf>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut written = vec![path.to_path_buf()];
    let timeline = match output {
        RunOutput::Table { table, timeline } => {
            write_table(table, BufWriter::new(File::create(path)?))?;
            let meta = sibling(path, ".meta");
            write_meta(table, config, BufWriter::new(File::create(&meta)?))?;
            written.push(meta);
            timeline
        }
        RunOutput::Report { report, timeline } => {
            write_report(report, timeline, BufWriter::new(File::create(path)?))?;
            timeline
        }
    };
    let tl_path = sibling(path, "_timeline.csv");
    write_timeline(timeline, BufWriter::new(File::create(&tl_path)?))?;
    written.push(tl_path);
    Ok(written)
}
