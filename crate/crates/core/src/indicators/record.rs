//! Per-run records, batches of runs and the run-dispersion metrics.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// One snapshot of a run: evaluations spent so far, IGD of the current output
/// population, and the archive's estimated hypervolume (NaN when the
/// algorithm has no archive).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub evaluations: u64,
    pub igd: f64,
    pub archive_delta: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunStatus {
    Ok,
    /// Completed, with a note (e.g. the budget ran out before any expansion).
    Warning(String),
    Failed(String),
}

impl RunStatus {
    pub fn label(&self) -> String {
        match self {
            RunStatus::Ok => "ok".into(),
            RunStatus::Warning(w) => format!("warning: {w}"),
            RunStatus::Failed(e) => format!("failed: {e}"),
        }
    }

    pub fn parse(s: &str) -> Self {
        if let Some(w) = s.strip_prefix("warning: ") {
            RunStatus::Warning(w.into())
        } else if let Some(e) = s.strip_prefix("failed: ") {
            RunStatus::Failed(e.into())
        } else {
            RunStatus::Ok
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, RunStatus::Failed(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub problem: String,
    pub algorithm: String,
    pub run: usize,
    pub seed: u64,
    pub evaluations: u64,
    pub final_igd: f64,
    pub final_hv: f64,
    pub trace: Vec<TracePoint>,
    pub status: RunStatus,
}

impl RunRecord {
    /// Appends a snapshot, replacing the last one if it has the same
    /// evaluation count so the trace stays strictly increasing.
    pub fn push_trace(&mut self, point: TracePoint) {
        match self.trace.last_mut() {
            Some(last) if last.evaluations == point.evaluations => *last = point,
            Some(last) if last.evaluations > point.evaluations => {
                panic!("trace evaluations must increase ({} after {})", point.evaluations, last.evaluations)
            }
            _ => self.trace.push(point),
        }
    }

    pub fn archive_trace(&self) -> Vec<f64> {
        self.trace.iter().map(|t| t.archive_delta).collect()
    }
}

/// All runs of a batch.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BatchManifest {
    pub records: Vec<RunRecord>,
    pub runs_per_algorithm: usize,
}

impl BatchManifest {
    pub fn new(records: Vec<RunRecord>, runs_per_algorithm: usize) -> Self {
        Self { records, runs_per_algorithm }
    }

    /// Problem names in first-appearance order.
    pub fn problems(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.records {
            if !out.contains(&r.problem.as_str()) {
                out.push(&r.problem);
            }
        }
        out
    }

    /// Algorithm names in first-appearance order.
    pub fn algorithms(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.records {
            if !out.contains(&r.algorithm.as_str()) {
                out.push(&r.algorithm);
            }
        }
        out
    }

    pub fn runs<'a>(&'a self, problem: &'a str, algorithm: &'a str) -> impl Iterator<Item = &'a RunRecord> + 'a {
        self.records.iter().filter(move |r| r.problem == problem && r.algorithm == algorithm)
    }

    /// Checks that every algorithm has exactly `runs_per_algorithm` successful
    /// runs on `problem`, with finite final values.
    pub fn check_complete(&self, problem: &str) -> Result<()> {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for r in self.records.iter().filter(|r| r.problem == problem) {
            if r.status.is_failed() || !r.final_igd.is_finite() || !r.final_hv.is_finite() {
                return Err(Error::IncompleteManifest(format!(
                    "{} run {} on {} has no usable result",
                    r.algorithm, r.run, problem
                )));
            }
            *counts.entry(&r.algorithm).or_default() += 1;
        }
        if counts.is_empty() {
            return Err(Error::IncompleteManifest(format!("no runs for problem {problem}")));
        }
        for (alg, count) in counts {
            if count != self.runs_per_algorithm {
                return Err(Error::IncompleteManifest(format!(
                    "{alg} has {count} runs on {problem}, expected {}",
                    self.runs_per_algorithm
                )));
            }
        }
        Ok(())
    }

    fn finals(&self, problem: &str, value: fn(&RunRecord) -> f64) -> BTreeMap<&str, Vec<f64>> {
        let mut out: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
        for r in self.records.iter().filter(|r| r.problem == problem) {
            out.entry(&r.algorithm).or_default().push(value(r));
        }
        out
    }

    /// Dispersion of `algorithm`'s final IGD values around the best (lowest)
    /// single-run IGD of any algorithm on `problem`.
    pub fn insensitive_igd(&self, problem: &str, algorithm: &str) -> Result<f64> {
        self.check_complete(problem)?;
        let finals = self.finals(problem, |r| r.final_igd);
        let own = finals.get(algorithm).ok_or_else(|| missing(algorithm, problem))?;
        insensitive_igd(&finals.values().map(Vec::as_slice).collect::<Vec<_>>(), own)
    }

    /// Dispersion of `algorithm`'s final HV values around the best (highest)
    /// single-run HV of any algorithm on `problem`.
    pub fn insensitive_hv(&self, problem: &str, algorithm: &str) -> Result<f64> {
        self.check_complete(problem)?;
        let finals = self.finals(problem, |r| r.final_hv);
        let own = finals.get(algorithm).ok_or_else(|| missing(algorithm, problem))?;
        insensitive_hv(&finals.values().map(Vec::as_slice).collect::<Vec<_>>(), own)
    }
}

fn missing(algorithm: &str, problem: &str) -> Error {
    Error::IncompleteManifest(format!("no runs of {algorithm} on {problem}"))
}

/// Mean squared deviation of `values` from `anchor`.
pub fn dispersion(values: &[f64], anchor: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(values.iter().map(|v| (v - anchor) * (v - anchor)).sum::<f64>() / values.len() as f64)
}

/// `own` is one algorithm's per-run IGD values, `all` the per-run values of
/// every compared algorithm (including `own`). The anchor is the minimum
/// over all runs of all algorithms.
pub fn insensitive_igd(all: &[&[f64]], own: &[f64]) -> Result<f64> {
    let anchor = all.iter().flat_map(|v| v.iter().copied()).fold(f64::INFINITY, f64::min);
    dispersion(own, anchor.min(own.iter().copied().fold(f64::INFINITY, f64::min)))
}

/// Like [`insensitive_igd`] with the maximum as the anchor.
pub fn insensitive_hv(all: &[&[f64]], own: &[f64]) -> Result<f64> {
    let anchor = all.iter().flat_map(|v| v.iter().copied()).fold(f64::NEG_INFINITY, f64::max);
    dispersion(own, anchor.max(own.iter().copied().fold(f64::NEG_INFINITY, f64::max)))
}

/// Five-number summary. Quartiles use linear interpolation between order
/// statistics at position `p (n - 1)` (0-based), so `{1,2,3,4,5}` gives
/// `Q1 = 2`, median `3`, `Q3 = 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quartiles {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

pub fn quartiles(values: &[f64]) -> Result<Quartiles> {
    if values.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let at = |p: f64| {
        let pos = p * (v.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        v[lo] + (pos - lo as f64) * (v[hi] - v[lo])
    };
    Ok(Quartiles { min: v[0], q1: at(0.25), median: at(0.5), q3: at(0.75), max: v[v.len() - 1] })
}
