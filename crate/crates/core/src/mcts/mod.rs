//! Tree search over populations.
//!
//! Each iteration walks down from the root by UCB through fully expanded
//! nodes, expands the node it stops at with one decision-variable sampling
//! step, scores the new child by the estimated hypervolume of its
//! non-dominated front, updates the archive, releases populations that can no
//! longer be expanded, and folds the score into the ancestors.

mod tree;

pub use tree::{Archive, BackpropMode, Tree, TreeNode, ROOT};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dvso::{dvso, sampled_dimension};
use crate::error::{Error, Result};
use crate::indicators::hv_monte_carlo;
use crate::nsga2::{InnerOptimizer, Nsga2};
use crate::problem::{Evaluator, Problem};
use crate::rng::RandomStream;
use crate::solution::{Population, Solution};

/// Smallest `k` with `(1 - 1/d)^(d_n k) <= 1 - coverage`: the number of
/// children per node so that a fixed variable is sampled by at least one
/// child with probability `coverage`.
pub fn branching_factor(d: usize, d_n: usize, coverage: f64) -> Result<usize> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("branching factor needs d >= 2, got {d}")));
    }
    if d_n == 0 || d_n > d {
        return Err(Error::InvalidArgument(format!("sample size {d_n} outside 1..={d}")));
    }
    if !(coverage > 0.0 && coverage < 1.0) {
        return Err(Error::InvalidArgument(format!("coverage must lie in (0, 1), got {coverage}")));
    }
    let per_draw = (-1.0 / d as f64).ln_1p();
    let k = ((-coverage).ln_1p() / (d_n as f64 * per_draw)).ceil();
    Ok((k as usize).max(1))
}

/// Upper confidence bound of a child: `delta + sqrt(2 ln(total) / visits)`,
/// infinite for a child that was never visited.
pub fn ucb(delta: f64, visits: u64, total_visits: u64) -> f64 {
    if visits == 0 {
        return f64::INFINITY;
    }
    delta + (2.0 * (total_visits as f64).ln() / visits as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Fraction of the decision variables optimized per expansion.
    pub sampling_ratio: f64,
    /// Total evaluation budget, including the initial population.
    pub max_evaluations: u64,
    /// Evaluations spent by one expansion.
    pub expansion_evaluations: u64,
    pub population_size: usize,
    /// Probability that a variable is sampled by some child of a node.
    pub coverage: f64,
    pub backprop: BackpropMode,
    /// Monte Carlo samples per node evaluation.
    pub hv_samples: usize,
    /// Visit count given to a child when it is created (1 or 0).
    pub child_initial_visits: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            sampling_ratio: 0.2,
            max_evaluations: 100_000,
            expansion_evaluations: 1_000,
            population_size: 300,
            coverage: 0.9,
            backprop: BackpropMode::Sum,
            hv_samples: 10_000,
            child_initial_visits: 1,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.sampling_ratio > 0.0 && self.sampling_ratio <= 1.0) {
            return Err(Error::config("f", format!("must lie in (0, 1], got {}", self.sampling_ratio)));
        }
        if self.population_size < 2 {
            return Err(Error::config("n", "population size must be at least 2"));
        }
        if self.expansion_evaluations < self.population_size as u64 {
            return Err(Error::config(
                "e",
                format!(
                    "per-expansion budget {} is below the population size {}",
                    self.expansion_evaluations, self.population_size
                ),
            ));
        }
        if self.expansion_evaluations > self.max_evaluations {
            return Err(Error::config(
                "e",
                format!(
                    "per-expansion budget {} exceeds the total budget E = {}",
                    self.expansion_evaluations, self.max_evaluations
                ),
            ));
        }
        if !(self.coverage > 0.0 && self.coverage < 1.0) {
            return Err(Error::config("p_cov", format!("must lie in (0, 1), got {}", self.coverage)));
        }
        if self.hv_samples == 0 {
            return Err(Error::config("hv_samples", "must be at least 1"));
        }
        if self.child_initial_visits > 1 {
            return Err(Error::config("child_initial_visits", "must be 0 or 1"));
        }
        Ok(())
    }
}

/// Running component-wise minimum and maximum of every objective vector seen.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveBounds {
    pub ideal: Vec<f64>,
    pub nadir: Vec<f64>,
}

impl ObjectiveBounds {
    pub fn new(m: usize) -> Self {
        Self { ideal: vec![f64::INFINITY; m], nadir: vec![f64::NEG_INFINITY; m] }
    }

    pub fn include(&mut self, population: &Population) {
        for s in population.iter() {
            for (j, &v) in s.objectives().iter().enumerate() {
                self.ideal[j] = self.ideal[j].min(v);
                self.nadir[j] = self.nadir[j].max(v);
            }
        }
    }

    /// Maps `ideal -> 0` and `nadir -> 1`; a flat objective maps to 0.
    pub fn normalize(&self, f: &[f64]) -> Vec<f64> {
        f.iter()
            .zip(self.ideal.iter().zip(&self.nadir))
            .map(|(v, (lo, hi))| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 })
            .collect()
    }
}

/// Estimated hypervolume of `front` after normalization by `bounds`, with the
/// reference point at 1.1 per objective, divided by the reference box volume
/// so the result lies in `[0, 1]`.
pub fn node_value<R: Rng + ?Sized>(
    front: &[Vec<f64>],
    bounds: &ObjectiveBounds,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let m = bounds.ideal.len();
    let scaled: Vec<Vec<f64>> = front.iter().map(|f| bounds.normalize(f)).collect();
    let reference = vec![1.1; m];
    let hv = hv_monte_carlo(&scaled, &reference, samples, rng)?;
    Ok((hv / 1.1f64.powi(m as i32)).clamp(0.0, 1.0))
}

/// State after one iteration, passed to the observer of a run. Iteration 0
/// is reported once right after the initial population is evaluated.
#[derive(Debug)]
pub struct IterationReport<'a> {
    pub iteration: usize,
    pub evaluations: u64,
    pub archive: Archive,
    pub archive_population: &'a Population,
    pub live_populations: usize,
    pub census_bound: usize,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Population of the archive node.
    pub population: Population,
    pub evaluations: u64,
    pub iterations: usize,
    pub branching_factor: usize,
    pub sampled_variables: usize,
    /// Archived value after every iteration.
    pub archive_trace: Vec<f64>,
    /// Live populations after every iteration.
    pub live_trace: Vec<usize>,
    pub tree: Tree,
    /// Set when the budget did not allow a single expansion.
    pub warning: Option<String>,
}

impl SearchOutcome {
    pub fn peak_live_populations(&self) -> usize {
        self.live_trace.iter().copied().max().unwrap_or(1)
    }
}

fn report(tree: &Tree, iteration: usize, evaluations: u64) -> IterationReport<'_> {
    let archive = tree.archive();
    IterationReport {
        iteration,
        evaluations,
        archive,
        archive_population: tree.node(archive.node).population.as_ref().expect("archive keeps its population"),
        live_populations: tree.live_populations(),
        census_bound: tree.census_bound(),
    }
}

/// Runs the search with NSGA-II as the inner optimizer.
pub fn run_lmomcts(
    problem: &Problem,
    config: &SearchConfig,
    rng: RandomStream,
    initial: Option<&Population>,
    observer: &mut dyn FnMut(&IterationReport),
) -> Result<SearchOutcome> {
    run_lmomcts_with(problem, config, &Nsga2::default(), rng, initial, observer)
}

/// Runs the search until another expansion would exceed the budget.
///
/// A supplied `initial` population is re-evaluated so its cost is charged to
/// the budget like a random one.
pub fn run_lmomcts_with(
    problem: &Problem,
    config: &SearchConfig,
    optimizer: &dyn InnerOptimizer,
    mut rng: RandomStream,
    initial: Option<&Population>,
    observer: &mut dyn FnMut(&IterationReport),
) -> Result<SearchOutcome> {
    config.validate()?;
    let evaluator = Evaluator::new(problem.clone());
    let d = problem.d();
    let d_n = sampled_dimension(config.sampling_ratio, d);
    let k = branching_factor(d, d_n, config.coverage)?;
    let root = match initial {
        Some(p) => {
            if p.iter().any(|s| s.x().len() != d) {
                return Err(Error::DimensionMismatch { expected: d, actual: p.members()[0].x().len() });
            }
            Population::new(
                p.iter().map(|s| Solution::with_objectives(s.x().to_vec(), evaluator.evaluate(s.x()))).collect(),
            )?
        }
        None => Population::random(&evaluator, config.population_size, &mut rng)?,
    };
    let mut bounds = ObjectiveBounds::new(problem.m());
    bounds.include(&root);
    let mut tree = Tree::new(root, k)?;
    observer(&report(&tree, 0, evaluator.count()));

    let e = config.expansion_evaluations;
    let mut archive_trace = Vec::new();
    let mut live_trace = Vec::new();
    while evaluator.count() + e <= config.max_evaluations {
        let parent = tree.select();
        let parent_pop = tree.node(parent).population.as_ref().ok_or(Error::DiscardedPopulation(parent))?;
        let mut child_rng = rng.split();
        let out = dvso(parent_pop, &evaluator, optimizer, d_n, e, &mut child_rng)?;
        bounds.include(&out.population);
        let value = node_value(&out.population.front_objectives(), &bounds, config.hv_samples, &mut child_rng)?;
        let child = tree.add_child(parent, out.population, value, Some(out.sample), config.child_initial_visits)?;
        tree.update_archive(child);
        tree.discard_populations();
        tree.backpropagate(child, config.backprop);

        archive_trace.push(tree.archive().value);
        let r = report(&tree, archive_trace.len(), evaluator.count());
        debug_assert!(r.live_populations <= r.census_bound);
        live_trace.push(r.live_populations);
        observer(&r);
    }

    let warning = archive_trace
        .is_empty()
        .then(|| format!("budget of {} evaluations exhausted before the first expansion", config.max_evaluations));
    let population = tree.node(tree.archive().node).population.clone().expect("archive keeps its population");
    Ok(SearchOutcome {
        population,
        evaluations: evaluator.count(),
        iterations: archive_trace.len(),
        branching_factor: k,
        sampled_variables: d_n,
        archive_trace,
        live_trace,
        tree,
        warning,
    })
}
