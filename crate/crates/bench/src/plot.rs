//! gnuplot script generation from sweep CSVs.
//!
//! The emitted script is self-contained: data is embedded as named
//! datablocks, and running `gnuplot script.gp` writes `<stem>_rate.png`
//! (average rate against SNR, one panel per L) and `<stem>_time.png`
//! (total time against L, one panel per SNR).

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::csv::read_csv;
use crate::error::{BenchError, Result};
use crate::harness::SweepRow;

/// Panel arrangement `(rows, cols)` for `n` panels.
pub fn grid_layout(n: usize) -> (usize, usize) {
    match n {
        0 | 1 => (1, 1),
        2 => (1, 2),
        _ => (n.div_ceil(2), 2),
    }
}

fn distinct<T: Clone + PartialEq>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for x in items {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn sorted_f64(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn quote(s: &str) -> String {
    s.replace('\'', "''")
}

pub fn render_plot_script(rows: &[SweepRow], stem: &str) -> Result<String> {
    if rows.is_empty() {
        return Err(BenchError::EmptyCsv);
    }
    let dims: Vec<usize> = rows.iter().map(|r| r.dim).collect::<BTreeSet<_>>().into_iter().collect();
    let snrs = sorted_f64(distinct(rows.iter().map(|r| r.snr_db)));
    let methods = distinct(rows.iter().map(|r| r.method.clone()));

    let mut s = String::new();
    let mut blocks: HashSet<String> = HashSet::new();
    let _ = writeln!(s, "# cfqpr-bench plot script; run with: gnuplot <this file>");
    s.push_str("set datafile separator whitespace\nset key left top\nset grid\n\n");

    for (mi, m) in methods.iter().enumerate() {
        for &d in &dims {
            let mut pts: Vec<&SweepRow> = rows.iter().filter(|r| r.dim == d && &r.method == m).collect();
            if pts.is_empty() {
                continue;
            }
            pts.sort_by(|a, b| a.snr_db.total_cmp(&b.snr_db));
            let name = format!("rate_L{d}_m{mi}");
            let _ = writeln!(s, "${name} << EOD");
            blocks.insert(name);
            for r in pts {
                let _ = writeln!(s, "{} {}", r.snr_db, r.avg_rate);
            }
            s.push_str("EOD\n");
        }
        for (si, &snr) in snrs.iter().enumerate() {
            let mut pts: Vec<&SweepRow> = rows.iter().filter(|r| r.snr_db == snr && &r.method == m).collect();
            if pts.is_empty() {
                continue;
            }
            pts.sort_by_key(|r| r.dim);
            let name = format!("time_s{si}_m{mi}");
            let _ = writeln!(s, "${name} << EOD");
            blocks.insert(name);
            for r in pts {
                let _ = writeln!(s, "{} {}", r.dim, r.total_time_ns as f64 * 1e-9);
            }
            s.push_str("EOD\n");
        }
    }

    let has = |name: &str| blocks.contains(name);

    let (gr, gc) = grid_layout(dims.len());
    let _ = writeln!(s, "\nset terminal pngcairo size {},{}", 520 * gc, 400 * gr);
    let _ = writeln!(s, "set output '{}_rate.png'", quote(stem));
    let _ = writeln!(s, "set multiplot layout {gr},{gc}");
    s.push_str("set xlabel 'SNR (dB)'\nset ylabel 'average computation rate (bits)'\nunset logscale y\n");
    for &d in &dims {
        let _ = writeln!(s, "set title 'L = {d}'");
        let series: Vec<String> = methods
            .iter()
            .enumerate()
            .filter(|(mi, _)| has(&format!("rate_L{d}_m{mi}")))
            .map(|(mi, m)| format!("$rate_L{d}_m{mi} using 1:2 with linespoints title '{}'", quote(m)))
            .collect();
        let _ = writeln!(s, "plot {}", series.join(", \\\n     "));
    }
    s.push_str("unset multiplot\n");

    let _ = writeln!(s, "\nset terminal pngcairo size 520,{}", 320 * snrs.len());
    let _ = writeln!(s, "set output '{}_time.png'", quote(stem));
    let _ = writeln!(s, "set multiplot layout {},1", snrs.len());
    s.push_str("set xlabel 'L'\nset ylabel 'total time (s)'\nset logscale y\n");
    for (si, snr) in snrs.iter().enumerate() {
        let _ = writeln!(s, "set title 'SNR = {snr} dB'");
        let series: Vec<String> = methods
            .iter()
            .enumerate()
            .filter(|(mi, _)| has(&format!("time_s{si}_m{mi}")))
            .map(|(mi, m)| format!("$time_s{si}_m{mi} using 1:2 with linespoints title '{}'", quote(m)))
            .collect();
        let _ = writeln!(s, "plot {}", series.join(", \\\n     "));
    }
    s.push_str("unset multiplot\nunset output\n");
    Ok(s)
}

/// Reads `csv_path` and writes a gnuplot script to `out_path`. Images are
/// named after the script's file stem.
pub fn emit_plot_script(csv_path: &Path, out_path: &Path) -> Result<String> {
    let rows = read_csv(csv_path)?;
    let stem = out_path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("figure")
        .to_owned();
    let script = render_plot_script(&rows, &stem)?;
    std::fs::write(out_path, &script).map_err(|e| BenchError::io(out_path, e))?;
    Ok(script)
}
