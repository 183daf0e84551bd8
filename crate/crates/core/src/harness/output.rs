//! CSV files written and read by the harness.
//!
//! All files are comma-separated with a header row. Reals are written in
//! scientific notation with 17 significant digits, which round-trips every
//! `f64`; missing values are written as `NaN`.

use std::fs::File;
use std::path::Path;

use crate::error::{Error, Result};
use crate::indicators::{quartiles, BatchManifest, RunRecord, RunStatus, TracePoint};

pub const MANIFEST_FILE: &str = "manifest.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const BOXPLOT_FILE: &str = "boxplot.csv";
pub const RUNS_DIR: &str = "runs";

pub fn fmt_real(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else {
        format!("{v:.16e}")
    }
}

fn parse_real(s: &str, path: &Path) -> Result<f64> {
    s.trim().parse().map_err(|_| parse_error(path, format!("`{s}` is not a number")))
}

fn parse_error(path: &Path, reason: impl Into<String>) -> Error {
    Error::Parse { path: path.to_path_buf(), reason: reason.into() }
}

/// File name of a run's convergence trace.
pub fn convergence_file_name(problem: &str, algorithm: &str, run: usize) -> String {
    format!("{problem}__{algorithm}__{run:03}.csv")
}

pub fn write_convergence(path: &Path, trace: &[TracePoint]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["evaluations", "igd", "archive_delta"])?;
    for t in trace {
        w.write_record([t.evaluations.to_string(), fmt_real(t.igd), fmt_real(t.archive_delta)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_convergence(path: &Path) -> Result<Vec<TracePoint>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in r.records() {
        let row = row?;
        if row.len() != 3 {
            return Err(parse_error(path, "expected 3 columns"));
        }
        out.push(TracePoint {
            evaluations: row[0].parse().map_err(|_| parse_error(path, "bad evaluation count"))?,
            igd: parse_real(&row[1], path)?,
            archive_delta: parse_real(&row[2], path)?,
        });
    }
    Ok(out)
}

const MANIFEST_HEADER: [&str; 8] =
    ["problem", "algorithm", "run", "seed", "evaluations", "final_igd", "final_hv", "status"];

pub fn write_manifest(path: &Path, manifest: &BatchManifest) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(MANIFEST_HEADER)?;
    for r in &manifest.records {
        w.write_record([
            r.problem.clone(),
            r.algorithm.clone(),
            r.run.to_string(),
            r.seed.to_string(),
            r.evaluations.to_string(),
            fmt_real(r.final_igd),
            fmt_real(r.final_hv),
            r.status.label(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `manifest.csv` from `dir` and attaches each run's convergence trace
/// when its file exists. The runs-per-algorithm count is taken from the data
/// and must be the same for every (problem, algorithm) pair.
pub fn read_manifest(dir: &Path) -> Result<BatchManifest> {
    let path = dir.join(MANIFEST_FILE);
    let mut r = csv::Reader::from_reader(File::open(&path)?);
    if r.headers()?.iter().ne(MANIFEST_HEADER.iter().copied()) {
        return Err(parse_error(&path, "unexpected header"));
    }
    let mut records = Vec::new();
    for row in r.records() {
        let row = row?;
        let run: usize = row[2].parse().map_err(|_| parse_error(&path, "bad run index"))?;
        let trace_path = dir.join(RUNS_DIR).join(convergence_file_name(&row[0], &row[1], run));
        let trace = if trace_path.exists() { read_convergence(&trace_path)? } else { Vec::new() };
        records.push(RunRecord {
            problem: row[0].to_string(),
            algorithm: row[1].to_string(),
            run,
            seed: row[3].parse().map_err(|_| parse_error(&path, "bad seed"))?,
            evaluations: row[4].parse().map_err(|_| parse_error(&path, "bad evaluation count"))?,
            final_igd: parse_real(&row[5], &path)?,
            final_hv: parse_real(&row[6], &path)?,
            trace,
            status: RunStatus::parse(&row[7]),
        });
    }
    let mut manifest = BatchManifest::new(records, 0);
    let counts: Vec<usize> = manifest
        .problems()
        .iter()
        .flat_map(|p| manifest.algorithms().into_iter().map(move |a| (*p, a)))
        .map(|(p, a)| manifest.runs(p, a).count())
        .filter(|&c| c > 0)
        .collect();
    manifest.runs_per_algorithm = counts.iter().copied().max().unwrap_or(0);
    Ok(manifest)
}

/// One row of the batch summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub problem: String,
    pub algorithm: String,
    pub runs: usize,
    pub mean_igd: f64,
    pub min_igd: f64,
    pub max_igd: f64,
    pub mean_hv: f64,
    pub min_hv: f64,
    pub max_hv: f64,
    pub insensitive_igd: f64,
    pub insensitive_hv: f64,
}

fn stats(values: &[f64]) -> (f64, f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (mean, min, max)
}

/// Summary statistics over successful runs. Dispersion metrics are NaN when
/// the manifest is incomplete for the problem.
pub fn summarize(manifest: &BatchManifest) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    for problem in manifest.problems() {
        for algorithm in manifest.algorithms() {
            let ok: Vec<&RunRecord> = manifest.runs(problem, algorithm).filter(|r| !r.status.is_failed()).collect();
            if manifest.runs(problem, algorithm).next().is_none() {
                continue;
            }
            let igd: Vec<f64> = ok.iter().map(|r| r.final_igd).collect();
            let hv: Vec<f64> = ok.iter().map(|r| r.final_hv).collect();
            let (mean_igd, min_igd, max_igd) = stats(&igd);
            let (mean_hv, min_hv, max_hv) = stats(&hv);
            rows.push(SummaryRow {
                problem: problem.to_string(),
                algorithm: algorithm.to_string(),
                runs: ok.len(),
                mean_igd,
                min_igd,
                max_igd,
                mean_hv,
                min_hv,
                max_hv,
                insensitive_igd: manifest.insensitive_igd(problem, algorithm).unwrap_or(f64::NAN),
                insensitive_hv: manifest.insensitive_hv(problem, algorithm).unwrap_or(f64::NAN),
            });
        }
    }
    rows
}

pub fn write_summary<W: std::io::Write>(out: W, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "problem",
        "algorithm",
        "runs",
        "mean_igd",
        "min_igd",
        "max_igd",
        "mean_hv",
        "min_hv",
        "max_hv",
        "insensitive_igd",
        "insensitive_hv",
    ])?;
    for r in rows {
        let mut rec = vec![r.problem.clone(), r.algorithm.clone(), r.runs.to_string()];
        rec.extend(
            [r.mean_igd, r.min_igd, r.max_igd, r.mean_hv, r.min_hv, r.max_hv, r.insensitive_igd, r.insensitive_hv]
                .map(fmt_real),
        );
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Five-number summary of final IGD per (problem, algorithm).
pub fn emit_boxplot_data(manifest: &BatchManifest, path: &Path) -> Result<()> {
    if manifest.records.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["problem", "algorithm", "min", "q1", "median", "q3", "max"])?;
    for problem in manifest.problems() {
        for algorithm in manifest.algorithms() {
            let values: Vec<f64> =
                manifest.runs(problem, algorithm).filter(|r| !r.status.is_failed()).map(|r| r.final_igd).collect();
            if values.is_empty() {
                continue;
            }
            let q = quartiles(&values)?;
            let mut rec = vec![problem.to_string(), algorithm.to_string()];
            rec.extend([q.min, q.q1, q.median, q.q3, q.max].map(fmt_real));
            w.write_record(rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One objective vector per row, columns `f1..fm`.
pub fn write_front(path: &Path, points: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let m = points.first().map_or(0, Vec::len);
    w.write_record((1..=m).map(|j| format!("f{j}")))?;
    for p in points {
        w.write_record(p.iter().map(|&v| fmt_real(v)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_front(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in r.records() {
        out.push(row?.iter().map(|s| parse_real(s, path)).collect::<Result<Vec<f64>>>()?);
    }
    Ok(out)
}
