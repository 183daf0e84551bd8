//! NSGA-II, used both as the inner optimizer of decision-variable sampling and
//! as the full-dimension baseline.

mod crowding;
mod operators;
mod sort;

pub use crowding::{crowded_cmp, crowding_distance};
pub use operators::{polynomial_mutation, sbx_crossover, sbx_pair, sbx_spread};
pub use sort::{fast_nondominated_sort, FrontPartition};

use std::cmp::Ordering;

use rand::Rng;

use crate::error::{Error, Result};
use crate::problem::Evaluator;
use crate::rng::RandomStream;
use crate::solution::{Population, Solution};

/// A candidate inside an optimizer run. `lineage` is an opaque tag the search
/// space may use to reconstruct the full solution (see [`crate::dvso`]).
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genes: Vec<f64>,
    pub objectives: Vec<f64>,
    pub lineage: usize,
}

/// The space an inner optimizer searches: box bounds plus an evaluation that
/// may depend on the candidate's lineage.
pub trait SearchSpace {
    fn lower(&self) -> &[f64];
    fn upper(&self) -> &[f64];
    fn evaluate(&self, genes: &[f64], lineage: usize) -> Vec<f64>;

    fn dim(&self) -> usize {
        self.lower().len()
    }
}

/// The full problem, lineage ignored.
pub struct FullSpace<'a> {
    evaluator: &'a Evaluator,
}

impl<'a> FullSpace<'a> {
    pub fn new(evaluator: &'a Evaluator) -> Self {
        Self { evaluator }
    }
}

impl SearchSpace for FullSpace<'_> {
    fn lower(&self) -> &[f64] {
        self.evaluator.problem().lower()
    }

    fn upper(&self) -> &[f64] {
        self.evaluator.problem().upper()
    }

    fn evaluate(&self, genes: &[f64], _lineage: usize) -> Vec<f64> {
        self.evaluator.evaluate(genes)
    }
}

/// Number of evaluations one optimizer call may spend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptimizerBudget {
    pub evaluations: u64,
}

impl OptimizerBudget {
    pub fn new(evaluations: u64) -> Self {
        Self { evaluations }
    }
}

/// An optimizer that improves an evaluated starting population in place of
/// NSGA-II. Implementations must keep the population size constant and spend
/// at most the given budget.
pub trait InnerOptimizer: Send + Sync {
    fn optimize(
        &self,
        initial: Vec<Individual>,
        space: &dyn SearchSpace,
        budget: OptimizerBudget,
        rng: &mut RandomStream,
    ) -> Result<Vec<Individual>>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nsga2Params {
    pub eta_c: f64,
    pub eta_m: f64,
    pub crossover_rate: f64,
    /// Per-variable mutation probability; `None` means `1 / dim`.
    pub mutation_probability: Option<f64>,
}

impl Default for Nsga2Params {
    fn default() -> Self {
        Self { eta_c: 20.0, eta_m: 20.0, crossover_rate: 1.0, mutation_probability: None }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Nsga2 {
    pub params: Nsga2Params,
}

impl Nsga2 {
    pub fn new(params: Nsga2Params) -> Self {
        Self { params }
    }

    /// Runs generations until the budget is spent. The last generation is
    /// shortened to the remaining budget, so exactly `budget` evaluations are
    /// consumed. `observer` sees the population after every generation along
    /// with the evaluations spent so far in this call.
    pub fn evolve(
        &self,
        mut pop: Vec<Individual>,
        space: &dyn SearchSpace,
        budget: OptimizerBudget,
        rng: &mut RandomStream,
        observer: &mut dyn FnMut(&[Individual], u64),
    ) -> Result<Vec<Individual>> {
        let n = pop.len();
        if n < 2 {
            return Err(Error::InvalidArgument(format!("NSGA-II needs at least 2 individuals, got {n}")));
        }
        if budget.evaluations < n as u64 {
            return Err(Error::BudgetTooSmall { budget: budget.evaluations, population: n });
        }
        let p = self.params;
        let pm = p.mutation_probability.unwrap_or(1.0 / space.dim() as f64);
        let (lower, upper) = (space.lower(), space.upper());
        let (mut rank, mut crowd) = rank_and_crowding(&pop);
        let mut consumed = 0u64;
        while consumed < budget.evaluations {
            let count = (budget.evaluations - consumed).min(n as u64) as usize;
            let mut offspring = Vec::with_capacity(count + 1);
            while offspring.len() < count {
                let a = tournament(&rank, &crowd, rng);
                let b = tournament(&rank, &crowd, rng);
                let (c1, c2) =
                    sbx_crossover(&pop[a].genes, &pop[b].genes, p.eta_c, p.crossover_rate, lower, upper, rng);
                let lineage = pop[a].lineage;
                for genes in [c1, c2] {
                    if offspring.len() < count {
                        let genes = polynomial_mutation(&genes, p.eta_m, pm, lower, upper, rng);
                        offspring.push((genes, lineage));
                    }
                }
            }
            for (genes, lineage) in offspring {
                let objectives = space.evaluate(&genes, lineage);
                pop.push(Individual { genes, objectives, lineage });
            }
            consumed += count as u64;
            pop = environmental_selection(pop, n);
            (rank, crowd) = rank_and_crowding(&pop);
            observer(&pop, consumed);
        }
        Ok(pop)
    }

    /// NSGA-II on the full problem, starting from an evaluated population.
    pub fn run_population(
        &self,
        initial: Population,
        evaluator: &Evaluator,
        budget: OptimizerBudget,
        rng: &mut RandomStream,
    ) -> Result<Population> {
        let pop = population_to_individuals(initial)?;
        let out = self.evolve(pop, &FullSpace::new(evaluator), budget, rng, &mut |_, _| {})?;
        Population::new(out.into_iter().map(|i| Solution::with_objectives(i.genes, i.objectives)).collect())
    }
}

impl InnerOptimizer for Nsga2 {
    fn optimize(
        &self,
        initial: Vec<Individual>,
        space: &dyn SearchSpace,
        budget: OptimizerBudget,
        rng: &mut RandomStream,
    ) -> Result<Vec<Individual>> {
        self.evolve(initial, space, budget, rng, &mut |_, _| {})
    }
}

/// Convenience wrapper: NSGA-II with default parameters on the full problem.
pub fn run_nsga2(
    initial: Population,
    evaluator: &Evaluator,
    budget: OptimizerBudget,
    rng: &mut RandomStream,
) -> Result<Population> {
    Nsga2::default().run_population(initial, evaluator, budget, rng)
}

/// Evaluated population members as optimizer individuals; each member's
/// lineage is its index.
pub fn population_to_individuals(pop: Population) -> Result<Vec<Individual>> {
    pop.into_members()
        .into_iter()
        .enumerate()
        .map(|(i, s)| match s.into_parts() {
            (x, Some(objectives)) => Ok(Individual { genes: x, objectives, lineage: i }),
            (_, None) => Err(Error::InvalidArgument(format!("member {i} of the initial population is not evaluated"))),
        })
        .collect()
}

fn rank_and_crowding(pop: &[Individual]) -> (Vec<usize>, Vec<f64>) {
    let objs: Vec<&[f64]> = pop.iter().map(|i| i.objectives.as_slice()).collect();
    let partition = fast_nondominated_sort(&objs);
    let mut crowd = vec![0.0; pop.len()];
    for front in &partition.fronts {
        let members: Vec<&[f64]> = front.iter().map(|&i| objs[i]).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&members)) {
            crowd[i] = d;
        }
    }
    (partition.ranks(), crowd)
}

/// Binary tournament by crowded comparison; ties go to the lower index.
fn tournament(rank: &[usize], crowd: &[f64], rng: &mut RandomStream) -> usize {
    let n = rank.len();
    let i = rng.gen_range(0..n);
    let j = rng.gen_range(0..n);
    match crowded_cmp(rank[i], crowd[i], rank[j], crowd[j]) {
        Ordering::Less => i,
        Ordering::Greater => j,
        Ordering::Equal => i.min(j),
    }
}

/// Keeps `n` members: whole fronts in rank order, then the least crowded
/// members of the first front that does not fit.
pub fn environmental_selection(pop: Vec<Individual>, n: usize) -> Vec<Individual> {
    let keep = select_indices(&pop.iter().map(|i| i.objectives.as_slice()).collect::<Vec<_>>(), n);
    let mut slots: Vec<Option<Individual>> = pop.into_iter().map(Some).collect();
    keep.into_iter().map(|i| slots[i].take().expect("index selected twice")).collect()
}

/// Indices chosen by rank-then-crowding truncation, in selection order.
pub fn select_indices(objectives: &[&[f64]], n: usize) -> Vec<usize> {
    let partition = fast_nondominated_sort(objectives);
    let mut chosen = Vec::with_capacity(n);
    for front in partition.fronts {
        if chosen.len() + front.len() <= n {
            chosen.extend(front);
            if chosen.len() == n {
                break;
            }
            continue;
        }
        let members: Vec<&[f64]> = front.iter().map(|&i| objectives[i]).collect();
        let dist = crowding_distance(&members);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| dist[b].partial_cmp(&dist[a]).unwrap_or(Ordering::Equal));
        chosen.extend(order.into_iter().take(n - chosen.len()).map(|k| front[k]));
        break;
    }
    chosen
}
