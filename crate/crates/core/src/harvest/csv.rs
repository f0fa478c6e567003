//! Plain-text timeline records: `index,t_start_s,t_end_s,E_in_J`.
//!
//! Row `0` carries the initial battery energy as a zero-length record at
//! `t = 0`; rows `1..=L` are the epochs in order.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::EpochTimeline;

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    index: usize,
    t_start_s: f64,
    t_end_s: f64,
    #[serde(rename = "E_in_J")]
    e_in_j: f64,
}

pub fn write_timeline<W: Write>(timeline: &EpochTimeline, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.serialize(Record {
        index: 0,
        t_start_s: 0.0,
        t_end_s: 0.0,
        e_in_j: timeline.initial_energy(),
    })?;
    for i in 0..timeline.len() {
        w.serialize(Record {
            index: i + 1,
            t_start_s: timeline.t_start(i),
            t_end_s: timeline.t_end(i),
            e_in_j: timeline.harvested()[i],
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_timeline<R: Read>(input: R) -> Result<EpochTimeline> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut initial = 0.0;
    let mut ends = Vec::new();
    let mut harvested = Vec::new();
    let mut expected_start = 0.0;
    for (row, rec) in rd.deserialize::<Record>().enumerate() {
        let rec = rec?;
        if rec.index != row {
            return Err(Error::InvalidTimeline(format!("row {row} has index {}", rec.index)));
        }
        if row == 0 {
            if rec.t_start_s != 0.0 || rec.t_end_s != 0.0 {
                return Err(Error::InvalidTimeline("row 0 must be the t = 0 initial-energy record".into()));
            }
            initial = rec.e_in_j;
            continue;
        }
        if (rec.t_start_s - expected_start).abs() > 1e-9 * expected_start.max(1.0) {
            return Err(Error::InvalidTimeline(format!(
                "epoch {row} starts at {} but the previous one ended at {expected_start}",
                rec.t_start_s
            )));
        }
        expected_start = rec.t_end_s;
        ends.push(rec.t_end_s);
        harvested.push(rec.e_in_j);
    }
    EpochTimeline::new(initial, ends, harvested)
}
