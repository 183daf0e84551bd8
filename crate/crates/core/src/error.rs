use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("problem {name} needs at least {min} decision variables, got {d}")]
    DimensionTooSmall { name: String, d: usize, min: usize },

    #[error("problem {name} does not support {m} objectives")]
    UnsupportedObjectives { name: String, m: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("evaluation budget {budget} is smaller than the population size {population}")]
    BudgetTooSmall { budget: u64, population: usize },

    #[error("node {0} has no live population (discarded)")]
    DiscardedPopulation(usize),

    #[error("node {node} is already fully expanded ({k} children)")]
    NodeFull { node: usize, k: usize },

    #[error("empty point set")]
    EmptySet,

    #[error("exact hypervolume supports at most 3 objectives, got {0}")]
    UnsupportedHypervolume(usize),

    #[error("manifest incomplete: {0}")]
    IncompleteManifest(String),

    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("failed to parse {path}: {reason}")]
    Parse { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config { field: field.into(), reason: reason.into() }
    }
}
