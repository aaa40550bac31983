//! Fixed-schema CSV for sweep rows.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{BenchError, Result};
use crate::harness::SweepRow;

pub const HEADER: &str = "L,snr_db,method,trials,avg_rate,total_time_ns";

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        // Display for f64 is the shortest string that round-trips
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.dim, r.snr_db, r.method, r.trials, r.avg_rate, r.total_time_ns
        );
    }
    out
}

pub fn write_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    std::fs::write(path, to_csv(rows)).map_err(|e| BenchError::io(path, e))
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        None => return Err(BenchError::EmptyCsv),
        Some((_, h)) if h.trim() == HEADER => {}
        Some((i, h)) => {
            return Err(BenchError::Csv {
                line: i + 1,
                msg: format!("expected header {HEADER:?}, found {h:?}"),
            })
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let err = |msg: String| BenchError::Csv { line: i + 1, msg };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [dim, snr, method, trials, rate, time] = fields.as_slice() else {
            return Err(err(format!("expected 6 fields, found {}", fields.len())));
        };
        let num = |name: &str, v: &str| err(format!("bad {name} {v:?}"));
        let row = SweepRow {
            dim: dim.parse().map_err(|_| num("L", dim))?,
            snr_db: snr.parse().map_err(|_| num("snr_db", snr))?,
            method: (*method).to_owned(),
            trials: trials.parse().map_err(|_| num("trials", trials))?,
            avg_rate: rate.parse().map_err(|_| num("avg_rate", rate))?,
            total_time_ns: time.parse().map_err(|_| num("total_time_ns", time))?,
        };
        if row.method.is_empty() || !row.snr_db.is_finite() || !row.avg_rate.is_finite() {
            return Err(err("empty method or non-finite value".into()));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(BenchError::EmptyCsv);
    }
    Ok(rows)
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    parse_csv(&text)
}
