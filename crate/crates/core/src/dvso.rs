//! Decision-variable sampling for optimization.
//!
//! A child population is produced from a parent population by drawing `d_n`
//! of the `d` variables, reducing every parent solution to those coordinates,
//! running the inner optimizer on the reduced vectors, and restoring each
//! result into a full solution. Every reduced candidate carries the index of
//! the parent solution it descends from (its *lineage*); the non-sampled
//! coordinates always come from that base. Offspring inherit the lineage of
//! their first parent. Fitness is always computed on the restored solution.

use rand::seq::index;

use crate::error::{Error, Result};
use crate::nsga2::{Individual, InnerOptimizer, OptimizerBudget, SearchSpace};
use crate::problem::Evaluator;
use crate::rng::RandomStream;
use crate::solution::{Population, Solution};

/// Sorted, distinct variable indices in `[0, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSample {
    indices: Vec<usize>,
    d: usize,
}

impl VariableSample {
    pub fn new(mut indices: Vec<usize>, d: usize) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("variable sample contains duplicates".into()));
        }
        if indices.last().is_some_and(|&i| i >= d) {
            return Err(Error::InvalidArgument(format!("variable index out of range for d = {d}")));
        }
        Ok(Self { indices, d })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

/// Number of sampled variables for ratio `f`: `max(1, round(f d))`, capped at `d`.
pub fn sampled_dimension(f: f64, d: usize) -> usize {
    ((f * d as f64).round() as usize).clamp(1, d)
}

/// Uniform sample of `d_n` distinct indices out of `d`. Taking every variable
/// (`d_n == d`) consumes no randomness.
pub fn sample_variables(d: usize, d_n: usize, rng: &mut RandomStream) -> Result<VariableSample> {
    if d_n == 0 || d_n > d {
        return Err(Error::InvalidArgument(format!("cannot sample {d_n} of {d} variables")));
    }
    let indices = if d_n == d { (0..d).collect() } else { index::sample(rng, d, d_n).into_vec() };
    VariableSample::new(indices, d)
}

/// Projection of full solutions onto a variable sample and back.
#[derive(Debug, Clone, Copy)]
pub struct ReducedView<'a> {
    pub sample: &'a VariableSample,
    pub base: &'a [f64],
}

impl<'a> ReducedView<'a> {
    pub fn new(sample: &'a VariableSample, base: &'a [f64]) -> Self {
        debug_assert_eq!(sample.d(), base.len());
        Self { sample, base }
    }

    pub fn reduce(sample: &VariableSample, x: &[f64]) -> Vec<f64> {
        sample.indices().iter().map(|&i| x[i]).collect()
    }

    /// The base with the sampled coordinates replaced by `reduced`.
    pub fn restore(&self, reduced: &[f64]) -> Vec<f64> {
        let mut x = self.base.to_vec();
        for (&i, &v) in self.sample.indices().iter().zip(reduced) {
            x[i] = v;
        }
        x
    }
}

/// The reduced search space over a fixed sample; candidate `lineage` selects
/// the base solution used for restoration.
pub struct ReducedSpace<'a> {
    sample: &'a VariableSample,
    bases: &'a [Vec<f64>],
    lower: Vec<f64>,
    upper: Vec<f64>,
    evaluator: &'a Evaluator,
}

impl<'a> ReducedSpace<'a> {
    pub fn new(sample: &'a VariableSample, bases: &'a [Vec<f64>], evaluator: &'a Evaluator) -> Self {
        let p = evaluator.problem();
        Self {
            sample,
            bases,
            lower: ReducedView::reduce(sample, p.lower()),
            upper: ReducedView::reduce(sample, p.upper()),
            evaluator,
        }
    }

    pub fn restore(&self, genes: &[f64], lineage: usize) -> Vec<f64> {
        ReducedView::new(self.sample, &self.bases[lineage]).restore(genes)
    }
}

impl SearchSpace for ReducedSpace<'_> {
    fn lower(&self) -> &[f64] {
        &self.lower
    }

    fn upper(&self) -> &[f64] {
        &self.upper
    }

    fn evaluate(&self, genes: &[f64], lineage: usize) -> Vec<f64> {
        self.evaluator.evaluate(&self.restore(genes, lineage))
    }
}

/// Result of one sampling-and-optimization step.
#[derive(Debug, Clone)]
pub struct DvsoOutcome {
    pub population: Population,
    pub sample: VariableSample,
    /// Index of the parent solution each child's non-sampled variables came from.
    pub lineage: Vec<usize>,
}

/// Builds a child population from `parent`, spending exactly `budget`
/// evaluations through `evaluator`.
pub fn dvso(
    parent: &Population,
    evaluator: &Evaluator,
    optimizer: &dyn InnerOptimizer,
    d_n: usize,
    budget: u64,
    rng: &mut RandomStream,
) -> Result<DvsoOutcome> {
    let n = parent.len();
    if budget < n as u64 {
        return Err(Error::BudgetTooSmall { budget, population: n });
    }
    let d = evaluator.problem().d();
    let sample = sample_variables(d, d_n, rng)?;
    let bases: Vec<Vec<f64>> = parent.iter().map(|s| s.x().to_vec()).collect();
    let initial: Vec<Individual> = parent
        .iter()
        .enumerate()
        .map(|(i, s)| Individual {
            genes: ReducedView::reduce(&sample, s.x()),
            objectives: s.objectives().to_vec(),
            lineage: i,
        })
        .collect();
    let space = ReducedSpace::new(&sample, &bases, evaluator);
    let optimized = optimizer.optimize(initial, &space, OptimizerBudget::new(budget), rng)?;
    let lineage = optimized.iter().map(|i| i.lineage).collect();
    let members = optimized
        .into_iter()
        .map(|ind| Solution::with_objectives(space.restore(&ind.genes, ind.lineage), ind.objectives))
        .collect();
    Ok(DvsoOutcome { population: Population::new(members)?, sample, lineage })
}
