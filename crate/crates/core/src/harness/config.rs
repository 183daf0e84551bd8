//! Experiment configuration.
//!
//! The file is TOML with one `[experiment]` table and any number of
//! `[[problem]]` and `[[algorithm]]` tables:
//!
//! ```toml
//! [experiment]
//! runs = 20                  # runs per algorithm and problem
//! seed = 1                   # master seed
//! seed_policy = "independent" # or "shared-initial-population"
//! output = "results"
//! snapshot_every = 1000      # evaluations between convergence snapshots
//! workers = 0                # 0 = one per core
//! front_size = 10000         # reference-front points (upper bound)
//! igd_nondominated_only = false
//!
//! [[problem]]
//! name = "LSMOP1"
//! m = 3
//! d = 1000
//!
//! [[algorithm]]
//! name = "LMOMCTS"           # label used in outputs
//! kind = "lmomcts"           # or "nsga2"
//! f = 0.2
//! E = 100000
//! e = 1000                   # defaults to E / 100
//! n = 300
//! p_cov = 0.9
//! backprop_mode = "sum"      # or "mean"
//! hv_samples = 10000
//! child_initial_visits = 1
//! ```
//!
//! Every key except `problem.name` is optional. Without any `[[algorithm]]`
//! table a single default LMOMCTS entry is used.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcts::{BackpropMode, SearchConfig};
use crate::problems::{make_problem, Toy, DEFAULT_FRONT_SIZE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedPolicy {
    /// Every run draws its own initial population.
    #[default]
    Independent,
    /// All runs of all algorithms on a problem start from one population.
    SharedInitialPopulation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmKind {
    #[default]
    Lmomcts,
    /// Full-dimension NSGA-II baseline.
    Nsga2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    #[serde(default = "defaults::runs")]
    pub runs: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub seed_policy: SeedPolicy,
    #[serde(default = "defaults::output")]
    pub output: PathBuf,
    #[serde(default = "defaults::snapshot_every")]
    pub snapshot_every: u64,
    #[serde(default)]
    pub workers: usize,
    #[serde(default = "defaults::front_size")]
    pub front_size: usize,
    #[serde(default)]
    pub igd_nondominated_only: bool,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        Self {
            runs: defaults::runs(),
            seed: 0,
            seed_policy: SeedPolicy::default(),
            output: defaults::output(),
            snapshot_every: defaults::snapshot_every(),
            workers: 0,
            front_size: defaults::front_size(),
            igd_nondominated_only: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    #[serde(default = "defaults::m")]
    pub m: usize,
    /// Defaults to 1000 for LSMOP problems and 2 for the toy problems.
    #[serde(default)]
    pub d: Option<usize>,
}

impl ProblemSpec {
    pub fn dimension(&self) -> usize {
        self.d.unwrap_or(if Toy::parse(&self.name).is_some() { 2 } else { 1000 })
    }

    /// Identifier used in file names and seeds, e.g. `LSMOP1-m3-d1000`.
    pub fn id(&self) -> String {
        format!("{}-m{}-d{}", self.name, self.m, self.dimension())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSpec {
    #[serde(default = "defaults::algorithm_name")]
    pub name: String,
    #[serde(default)]
    pub kind: AlgorithmKind,
    #[serde(default = "defaults::f")]
    pub f: f64,
    #[serde(rename = "E", default = "defaults::max_evaluations")]
    pub max_evaluations: u64,
    /// Defaults to `E / 100`.
    #[serde(rename = "e", default)]
    pub expansion_evaluations: Option<u64>,
    #[serde(rename = "n", default = "defaults::population")]
    pub population: usize,
    #[serde(default = "defaults::p_cov")]
    pub p_cov: f64,
    #[serde(default)]
    pub backprop_mode: BackpropMode,
    #[serde(default = "defaults::hv_samples")]
    pub hv_samples: usize,
    #[serde(default = "defaults::child_initial_visits")]
    pub child_initial_visits: u64,
}

impl Default for AlgorithmSpec {
    fn default() -> Self {
        toml::from_str("").expect("all algorithm fields have defaults")
    }
}

impl AlgorithmSpec {
    pub fn search_config(&self) -> SearchConfig {
        SearchConfig {
            sampling_ratio: self.f,
            max_evaluations: self.max_evaluations,
            expansion_evaluations: self.expansion_evaluations.unwrap_or(self.max_evaluations / 100),
            population_size: self.population,
            coverage: self.p_cov,
            backprop: self.backprop_mode,
            hv_samples: self.hv_samples,
            child_initial_visits: self.child_initial_visits,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub experiment: ExperimentSection,
    #[serde(default)]
    pub problem: Vec<ProblemSpec>,
    #[serde(default)]
    pub algorithm: Vec<AlgorithmSpec>,
}

mod defaults {
    use std::path::PathBuf;

    pub fn runs() -> usize {
        20
    }
    pub fn output() -> PathBuf {
        PathBuf::from("results")
    }
    pub fn snapshot_every() -> u64 {
        1000
    }
    pub fn front_size() -> usize {
        super::DEFAULT_FRONT_SIZE
    }
    pub fn m() -> usize {
        3
    }
    pub fn algorithm_name() -> String {
        "LMOMCTS".into()
    }
    pub fn f() -> f64 {
        0.2
    }
    pub fn max_evaluations() -> u64 {
        100_000
    }
    pub fn population() -> usize {
        300
    }
    pub fn p_cov() -> f64 {
        0.9
    }
    pub fn hv_samples() -> usize {
        10_000
    }
    pub fn child_initial_visits() -> u64 {
        1
    }
}

impl ExperimentConfig {
    /// Parses and validates a config, filling every default.
    pub fn from_toml(text: &str, origin: &Path) -> Result<Self> {
        let mut config: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Parse { path: origin.to_path_buf(), reason: e.to_string() })?;
        config.resolve_defaults();
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    fn resolve_defaults(&mut self) {
        if self.algorithm.is_empty() {
            self.algorithm.push(AlgorithmSpec::default());
        }
        for p in &mut self.problem {
            p.d = Some(p.dimension());
        }
        for a in &mut self.algorithm {
            a.expansion_evaluations = Some(a.expansion_evaluations.unwrap_or(a.max_evaluations / 100));
        }
    }

    pub fn validate(&self) -> Result<()> {
        let x = &self.experiment;
        if x.runs == 0 {
            return Err(Error::config("experiment.runs", "must be at least 1"));
        }
        if x.snapshot_every == 0 {
            return Err(Error::config("experiment.snapshot_every", "must be at least 1"));
        }
        if x.front_size < 100 {
            return Err(Error::config("experiment.front_size", "must be at least 100"));
        }
        if self.problem.is_empty() {
            return Err(Error::config("problem", "at least one [[problem]] is required"));
        }
        for (i, p) in self.problem.iter().enumerate() {
            make_problem(&p.name, p.m, p.dimension())
                .map_err(|e| Error::config(format!("problem[{i}]"), e.to_string()))?;
            if self.problem[..i].iter().any(|q| q.id() == p.id()) {
                return Err(Error::config(format!("problem[{i}]"), format!("duplicate problem {}", p.id())));
            }
        }
        for (i, a) in self.algorithm.iter().enumerate() {
            let field = |name: &str| format!("algorithm[{i}].{name}");
            if a.name.is_empty() || a.name.contains(|c: char| c == ',' || c == '/' || c.is_whitespace()) {
                return Err(Error::config(field("name"), "must be non-empty without commas, slashes or spaces"));
            }
            if self.algorithm[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::config(field("name"), format!("duplicate algorithm name {}", a.name)));
            }
            match a.kind {
                AlgorithmKind::Lmomcts => {
                    a.search_config().validate().map_err(|e| match e {
                        Error::Config { field: f, reason } => Error::config(field(&f), reason),
                        other => other,
                    })?;
                }
                AlgorithmKind::Nsga2 => {
                    if a.population < 2 {
                        return Err(Error::config(field("n"), "population size must be at least 2"));
                    }
                    if a.max_evaluations < a.population as u64 {
                        return Err(Error::config(field("E"), "budget is below the population size"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reads, parses and validates a config file.
pub fn parse_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)?;
    ExperimentConfig::from_toml(&text, path)
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgorithmKind::Lmomcts => "lmomcts",
            AlgorithmKind::Nsga2 => "nsga2",
        })
    }
}
