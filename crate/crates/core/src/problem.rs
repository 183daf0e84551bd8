//! Box-constrained multiobjective problems and the counting evaluator.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A deterministic objective function `x -> F(x)`.
pub trait ObjectiveFn: Send + Sync {
    fn evaluate(&self, x: &[f64]) -> Vec<f64>;
}

impl<F> ObjectiveFn for F
where
    F: Fn(&[f64]) -> Vec<f64> + Send + Sync,
{
    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        self(x)
    }
}

#[derive(Clone)]
pub struct Problem {
    name: String,
    m: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
    objective: Arc<dyn ObjectiveFn>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem").field("name", &self.name).field("d", &self.d()).field("m", &self.m).finish()
    }
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        m: usize,
        lower: Vec<f64>,
        upper: Vec<f64>,
        objective: Arc<dyn ObjectiveFn>,
    ) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { expected: lower.len(), actual: upper.len() });
        }
        if lower.is_empty() || m == 0 {
            return Err(Error::InvalidArgument("problem needs d >= 1 and m >= 1".into()));
        }
        if let Some(i) = lower.iter().zip(&upper).position(|(lo, hi)| lo.is_nan() || hi.is_nan() || lo >= hi) {
            return Err(Error::InvalidArgument(format!("lower[{i}] must be below upper[{i}]")));
        }
        Ok(Self { name: name.into(), m, lower, upper, objective })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn d(&self) -> usize {
        self.lower.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Uncounted evaluation. Algorithms go through [`Evaluator`].
    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.d());
        self.objective.evaluate(x)
    }

    pub fn clamp(&self, x: &[f64]) -> Vec<f64> {
        clamp_to(x, &self.lower, &self.upper)
    }
}

/// Component-wise projection onto `[lower, upper]`.
pub fn clamp_to(x: &[f64], lower: &[f64], upper: &[f64]) -> Vec<f64> {
    x.iter().zip(lower).zip(upper).map(|((&v, &lo), &hi)| v.max(lo).min(hi)).collect()
}

/// Wraps a problem and counts every objective evaluation. All budgets are
/// expressed in these counts.
#[derive(Debug)]
pub struct Evaluator {
    problem: Problem,
    count: AtomicU64,
}

impl Evaluator {
    pub fn new(problem: Problem) -> Self {
        Self { problem, count: AtomicU64::new(0) }
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        self.count.fetch_add(1, Ordering::Relaxed);
        self.problem.evaluate(x)
    }

    pub fn count(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }
}
