//! Seeded multi-run campaigns.
//!
//! Seeds: run `i` of algorithm `a` on problem `p` uses the stream seeded with
//! `derive_seed(master, [label_of(p), label_of(a), i])`, where `p` is the
//! problem id (`LSMOP1-m3-d1000`) and `a` the algorithm name. In
//! shared-initial-population mode the initial population of every run on `p`
//! is drawn from `derive_seed(master, [label_of(p)])`.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;

use super::config::{AlgorithmKind, AlgorithmSpec, ExperimentConfig, ProblemSpec, SeedPolicy};
use super::output::{
    convergence_file_name, emit_boxplot_data, summarize, write_convergence, write_manifest, write_summary,
    BOXPLOT_FILE, MANIFEST_FILE, RUNS_DIR, SUMMARY_FILE,
};
use crate::error::{Error, Result};
use crate::indicators::{igd, normalized_hv, BatchManifest, RunRecord, RunStatus, TracePoint};
use crate::mcts::run_lmomcts;
use crate::nsga2::{population_to_individuals, FullSpace, Individual, Nsga2, OptimizerBudget};
use crate::problem::{Evaluator, Problem};
use crate::problems::{make_problem, sample_reference_front, ReferenceFront};
use crate::rng::{derive_seed, label_of, RandomStream};
use crate::solution::{Population, Solution};

/// Everything a single run needs besides its indices.
pub struct RunContext {
    pub problem: Problem,
    pub problem_id: String,
    pub reference: ReferenceFront,
    pub shared_initial: Option<Population>,
    pub snapshot_every: u64,
    pub igd_nondominated_only: bool,
}

impl RunContext {
    pub fn new(spec: &ProblemSpec, config: &ExperimentConfig) -> Result<Self> {
        let problem = make_problem(&spec.name, spec.m, spec.dimension())?;
        let reference = sample_reference_front(&spec.name, spec.m, config.experiment.front_size)?;
        let problem_id = spec.id();
        let shared_initial = match config.experiment.seed_policy {
            SeedPolicy::Independent => None,
            SeedPolicy::SharedInitialPopulation => {
                let n = config.algorithm.iter().map(|a| a.population).max().unwrap_or(2);
                let mut rng = RandomStream::new(derive_seed(config.experiment.seed, &[label_of(&problem_id)]));
                Some(Population::random(&Evaluator::new(problem.clone()), n, &mut rng)?)
            }
        };
        Ok(Self {
            problem,
            problem_id,
            reference,
            shared_initial,
            snapshot_every: config.experiment.snapshot_every,
            igd_nondominated_only: config.experiment.igd_nondominated_only,
        })
    }

    /// IGD of a population's objective vectors against the reference front.
    pub fn igd_of(&self, objectives: &[&[f64]]) -> f64 {
        let value = if self.igd_nondominated_only {
            let front: Vec<&[f64]> =
                crate::solution::non_dominated_indices(objectives).into_iter().map(|i| objectives[i]).collect();
            igd(&front, self.reference.points())
        } else {
            igd(objectives, self.reference.points())
        };
        value.unwrap_or(f64::NAN)
    }

    /// Exact HV of the non-dominated front, normalized by the reference
    /// front's bounds, against 1.1 per objective.
    pub fn final_hv(&self, population: &Population, rng: &mut RandomStream) -> Result<f64> {
        let (ideal, nadir) = self.reference.bounds();
        let ideal: Vec<f64> = ideal.iter().map(|v| v.min(0.0)).collect();
        normalized_hv(&population.front_objectives(), &ideal, &nadir, 1_000_000, rng)
    }

    /// The shared initial population cut to `n` members, if any.
    fn initial_for(&self, n: usize) -> Option<Population> {
        self.shared_initial
            .as_ref()
            .map(|p| Population::new(p.members()[..n.min(p.len())].to_vec()).expect("prefix of a valid population"))
    }
}

/// Stream seed of one run.
pub fn run_seed(master: u64, problem_id: &str, algorithm: &str, run: usize) -> u64 {
    derive_seed(master, &[label_of(problem_id), label_of(algorithm), run as u64])
}

/// Records a snapshot whenever the evaluation count reaches the next
/// multiple of the snapshot interval.
struct Snapshots {
    every: u64,
    next: u64,
}

impl Snapshots {
    fn new(every: u64) -> Self {
        Self { every, next: 0 }
    }

    fn due(&mut self, evaluations: u64) -> bool {
        if evaluations >= self.next {
            self.next = (evaluations / self.every + 1) * self.every;
            true
        } else {
            false
        }
    }
}

/// Executes one run and returns its record. Errors become a failed record.
pub fn execute_run(ctx: &RunContext, algorithm: &AlgorithmSpec, run: usize, master_seed: u64) -> RunRecord {
    let seed = run_seed(master_seed, &ctx.problem_id, &algorithm.name, run);
    let mut record = RunRecord {
        problem: ctx.problem_id.clone(),
        algorithm: algorithm.name.clone(),
        run,
        seed,
        evaluations: 0,
        final_igd: f64::NAN,
        final_hv: f64::NAN,
        trace: Vec::new(),
        status: RunStatus::Ok,
    };
    let result = match algorithm.kind {
        AlgorithmKind::Lmomcts => lmomcts_run(ctx, algorithm, seed, &mut record),
        AlgorithmKind::Nsga2 => nsga2_run(ctx, algorithm, seed, &mut record),
    };
    let finish = result.and_then(|(population, evaluations)| {
        let mut hv_rng = RandomStream::new(seed).derive(&[label_of("final-hv")]);
        record.evaluations = evaluations;
        record.final_igd = ctx.igd_of(&population.objectives());
        record.final_hv = ctx.final_hv(&population, &mut hv_rng)?;
        let delta = record.trace.last().map_or(f64::NAN, |t| t.archive_delta);
        record.push_trace(TracePoint { evaluations, igd: record.final_igd, archive_delta: delta });
        Ok(())
    });
    if let Err(e) = finish {
        record.status = RunStatus::Failed(e.to_string());
        record.final_igd = f64::NAN;
        record.final_hv = f64::NAN;
    }
    record
}

fn lmomcts_run(
    ctx: &RunContext,
    algorithm: &AlgorithmSpec,
    seed: u64,
    record: &mut RunRecord,
) -> Result<(Population, u64)> {
    let config = algorithm.search_config();
    let initial = ctx.initial_for(config.population_size);
    let mut snaps = Snapshots::new(ctx.snapshot_every);
    let outcome = run_lmomcts(&ctx.problem, &config, RandomStream::new(seed), initial.as_ref(), &mut |r| {
        if snaps.due(r.evaluations) {
            record.push_trace(TracePoint {
                evaluations: r.evaluations,
                igd: ctx.igd_of(&r.archive_population.objectives()),
                archive_delta: r.archive.value,
            });
        }
    })?;
    if let Some(w) = outcome.warning {
        record.status = RunStatus::Warning(w);
    }
    Ok((outcome.population, outcome.evaluations))
}

fn nsga2_run(
    ctx: &RunContext,
    algorithm: &AlgorithmSpec,
    seed: u64,
    record: &mut RunRecord,
) -> Result<(Population, u64)> {
    let evaluator = Evaluator::new(ctx.problem.clone());
    let mut rng = RandomStream::new(seed);
    let initial = match ctx.initial_for(algorithm.population) {
        Some(p) => Population::new(
            p.iter().map(|s| Solution::with_objectives(s.x().to_vec(), evaluator.evaluate(s.x()))).collect(),
        )?,
        None => Population::random(&evaluator, algorithm.population, &mut rng)?,
    };
    let mut snaps = Snapshots::new(ctx.snapshot_every);
    let objectives = |pop: &[Individual]| -> Vec<Vec<f64>> { pop.iter().map(|i| i.objectives.clone()).collect() };
    let mut snapshot = |pop: &[Individual], evaluations: u64, record: &mut RunRecord| {
        if snaps.due(evaluations) {
            let objs = objectives(pop);
            let refs: Vec<&[f64]> = objs.iter().map(Vec::as_slice).collect();
            record.push_trace(TracePoint { evaluations, igd: ctx.igd_of(&refs), archive_delta: f64::NAN });
        }
    };
    let start = evaluator.count();
    let individuals = population_to_individuals(initial)?;
    snapshot(&individuals, start, record);
    let remaining = algorithm.max_evaluations.saturating_sub(start);
    let out = if remaining >= individuals.len() as u64 {
        Nsga2::default().evolve(
            individuals,
            &FullSpace::new(&evaluator),
            OptimizerBudget::new(remaining),
            &mut rng,
            &mut |pop, used| snapshot(pop, start + used, record),
        )?
    } else {
        individuals
    };
    let population =
        Population::new(out.into_iter().map(|i| Solution::with_objectives(i.genes, i.objectives)).collect())?;
    Ok((population, evaluator.count()))
}

/// Runs every (problem, algorithm, run) combination, writes all outputs into
/// the configured directory and returns the manifest.
pub fn run_batch(config: &ExperimentConfig) -> Result<BatchManifest> {
    config.validate()?;
    let out = &config.experiment.output;
    fs::create_dir_all(out.join(RUNS_DIR))?;
    fs::write(out.join("config.toml"), config.to_toml())?;

    let contexts: Vec<Arc<RunContext>> =
        config.problem.iter().map(|p| RunContext::new(p, config).map(Arc::new)).collect::<Result<_>>()?;
    let runs = config.experiment.runs;
    let jobs: Vec<(usize, usize, usize)> = (0..contexts.len())
        .flat_map(|p| (0..config.algorithm.len()).flat_map(move |a| (0..runs).map(move |r| (p, a, r))))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.experiment.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    let records: Vec<RunRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|&(p, a, r)| {
                let record = execute_run(&contexts[p], &config.algorithm[a], r, config.experiment.seed);
                match &record.status {
                    RunStatus::Failed(e) => log::warn!("{} {} run {r} failed: {e}", record.problem, record.algorithm),
                    RunStatus::Warning(w) => log::warn!("{} {} run {r}: {w}", record.problem, record.algorithm),
                    RunStatus::Ok => {
                        log::debug!("{} {} run {r}: igd {}", record.problem, record.algorithm, record.final_igd)
                    }
                }
                let path = out.join(RUNS_DIR).join(convergence_file_name(&record.problem, &record.algorithm, r));
                write_convergence(&path, &record.trace).map(|_| record)
            })
            .collect::<Result<_>>()
    })?;

    let manifest = BatchManifest::new(records, runs);
    write_outputs(&manifest, out)?;
    Ok(manifest)
}

/// Writes manifest, summary and box-plot files for `manifest` into `dir`.
pub fn write_outputs(manifest: &BatchManifest, dir: &Path) -> Result<()> {
    write_manifest(&dir.join(MANIFEST_FILE), manifest)?;
    write_summary(fs::File::create(dir.join(SUMMARY_FILE))?, &summarize(manifest))?;
    emit_boxplot_data(manifest, &dir.join(BOXPLOT_FILE))
}
