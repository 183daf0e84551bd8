//! Acceptance gate. Runs every criterion, prints one `criterion N: PASS|FAIL`
//! line each and exits nonzero if any failed. Extra arguments select
//! criteria by substring of their names.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use lmomcts::dvso::sample_variables;
use lmomcts::harness::{run_batch, ExperimentConfig, RUNS_DIR};
use lmomcts::indicators::{hv_exact, hv_monte_carlo, BatchManifest, RunRecord, RunStatus};
use lmomcts::mcts::{branching_factor, run_lmomcts, SearchConfig};
use lmomcts::nsga2::fast_nondominated_sort;
use lmomcts::problems::make_problem;
use lmomcts::{dominates, RandomStream};
use rand::Rng;
use rayon::prelude::*;

type Outcome = (bool, String);

// ---------------------------------------------------------------- 1

/// `ln(1 - x)` by its power series, summed smallest term first.
fn ln_one_minus(x: f64) -> f64 {
    let terms: Vec<f64> = (1..=400).map(|j| x.powi(j) / j as f64).collect();
    -terms.iter().rev().sum::<f64>()
}

fn criterion_01_branching_factor() -> Outcome {
    let cases = [(100, 20, 12), (1000, 200, 12), (2, 1, 4), (5000, 1000, 12)];
    let mut ok = true;
    let mut detail = Vec::new();
    for (d, d_n, expected) in cases {
        let ratio = -std::f64::consts::LN_10 / (d_n as f64 * ln_one_minus(1.0 / d as f64));
        // the oracle must not sit on an integer boundary
        assert!((ratio - ratio.round()).abs() > 1e-6, "oracle ratio {ratio} too close to an integer");
        let oracle = ratio.ceil() as usize;
        let k = branching_factor(d, d_n, 0.9).unwrap();
        ok &= k == oracle && oracle == expected;
        detail.push(format!("({d},{d_n}) k={k} oracle={oracle}"));
    }
    (ok, detail.join(", "))
}

// ---------------------------------------------------------------- 2

fn random_front(rng: &mut RandomStream) -> Vec<Vec<f64>> {
    let p = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
    (0..50)
        .map(|_| {
            let u: Vec<f64> = (0..3).map(|_| rng.gen::<f64>() + 1e-9).collect();
            let norm = u.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p);
            u.iter().map(|v| v / norm).collect()
        })
        .collect()
}

fn criterion_02_monte_carlo_hypervolume() -> Outcome {
    let reference = [1.1; 3];
    let within: Vec<(bool, f64)> = (0..100u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = RandomStream::new(7_000 + t);
            let front = random_front(&mut rng);
            let exact = hv_exact(&front, &reference).unwrap();
            let mc = hv_monte_carlo(&front, &reference, 1_000_000, &mut rng).unwrap();
            let rel = (mc - exact).abs() / exact;
            (rel <= 0.02, rel)
        })
        .collect();
    let hits = within.iter().filter(|w| w.0).count();
    let worst = within.iter().map(|w| w.1).fold(0.0, f64::max);
    (hits >= 95, format!("{hits}/100 within 2% relative error, worst {worst:.2e}"))
}

// ---------------------------------------------------------------- 3

fn brute_force_fronts(points: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !left.is_empty() {
        let front: Vec<usize> =
            left.iter().copied().filter(|&i| !left.iter().any(|&j| dominates(&points[j], &points[i]))).collect();
        left.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

fn criterion_03_sort_oracle() -> Outcome {
    let mut rng = RandomStream::new(3);
    let mut mismatches = 0;
    for trial in 0..1000 {
        let n = rng.gen_range(1..=100);
        let m = rng.gen_range(1..=3);
        // every third population uses a coarse grid so ties and duplicates occur
        let coarse = trial % 3 == 0;
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..m).map(|_| if coarse { rng.gen_range(0..4) as f64 } else { rng.gen() }).collect())
            .collect();
        let mut fast = fast_nondominated_sort(&points).fronts;
        fast.iter_mut().for_each(|f| f.sort_unstable());
        if fast != brute_force_fronts(&points) {
            mismatches += 1;
        }
    }
    (mismatches == 0, format!("{mismatches} mismatches in 1000 populations"))
}

// ---------------------------------------------------------------- 4

fn record(algorithm: &str, run: usize, igd: f64, hv: f64) -> RunRecord {
    RunRecord {
        problem: "P".into(),
        algorithm: algorithm.into(),
        run,
        seed: 0,
        evaluations: 0,
        final_igd: igd,
        final_hv: hv,
        trace: Vec::new(),
        status: RunStatus::Ok,
    }
}

fn criterion_04_dispersion_fixtures() -> Outcome {
    let two = BatchManifest::new(
        vec![record("A", 0, 0.2, 0.6), record("A", 1, 0.4, 0.8), record("B", 0, 0.1, 0.9), record("B", 1, 0.3, 0.5)],
        2,
    );
    let igd_a = two.insensitive_igd("P", "A").unwrap();
    let hv_a = two.insensitive_hv("P", "A").unwrap();

    let best = BatchManifest::new(
        vec![record("A", 0, 0.1, 0.9), record("A", 1, 0.1, 0.9), record("B", 0, 0.3, 0.4), record("B", 1, 0.5, 0.2)],
        2,
    );
    let zero_igd = best.insensitive_igd("P", "A").unwrap();
    let zero_hv = best.insensitive_hv("P", "A").unwrap();

    let single = BatchManifest::new(vec![record("A", 0, 0.3, 0.7), record("A", 1, 0.5, 0.5)], 2);
    let self_igd = single.insensitive_igd("P", "A").unwrap();
    let self_hv = single.insensitive_hv("P", "A").unwrap();

    let ok = (igd_a - 0.05).abs() <= 1e-12
        && (hv_a - 0.05).abs() <= 1e-12
        && zero_igd == 0.0
        && zero_hv == 0.0
        && (self_igd - 0.02).abs() <= 1e-12
        && (self_hv - 0.02).abs() <= 1e-12;
    (
        ok,
        format!(
            "igd {igd_a:e}, hv {hv_a:e} (want 0.05), zero cases {zero_igd}/{zero_hv}, self-anchored {self_igd:e}/{self_hv:e} (want 0.02)"
        ),
    )
}

// ---------------------------------------------------------------- 5 to 7

const BENCHMARK: &str = r#"
runs = 10
seed = 20240601
snapshot_every = 1000

[[problem]]
name = "LSMOP1"
m = 3
d = 1000

[[algorithm]]
name = "LMOMCTS"
f = 0.2
E = 100000
n = 300

[[algorithm]]
name = "NSGA-II"
kind = "nsga2"
E = 100000
n = 300
"#;

fn config(dir: &Path, body: &str) -> ExperimentConfig {
    let text = format!("[experiment]\noutput = {:?}\n{body}", dir.display().to_string());
    ExperimentConfig::from_toml(&text, Path::new("acceptance.toml")).unwrap()
}

/// The LSMOP1 batch shared by criteria 5, 6 and 7.
fn benchmark() -> &'static BatchManifest {
    static BATCH: OnceLock<BatchManifest> = OnceLock::new();
    BATCH.get_or_init(|| {
        let tmp = tempfile::tempdir().unwrap();
        run_batch(&config(tmp.path(), BENCHMARK)).unwrap()
    })
}

fn lmomcts_runs(manifest: &BatchManifest) -> Vec<&RunRecord> {
    let mut runs: Vec<&RunRecord> = manifest.records.iter().filter(|r| r.algorithm == "LMOMCTS").collect();
    runs.sort_by_key(|r| r.run);
    runs
}

fn criterion_05_parameter_study_igd() -> Outcome {
    let runs = lmomcts_runs(benchmark());
    let first: Vec<f64> = runs[..5].iter().map(|r| r.final_igd).collect();
    let mean = first.iter().sum::<f64>() / 5.0;
    let (lo, hi) = (0.592 / 2.0, 0.592 * 2.0);
    (
        (lo..=hi).contains(&mean),
        format!("mean final IGD over runs 0-4 = {mean:.4e}, band [{lo:.3e}, {hi:.3e}], runs {first:.3?}"),
    )
}

fn criterion_06_insensitivity() -> Outcome {
    let manifest = benchmark();
    let problem = "LSMOP1-m3-d1000";
    let ours = manifest.insensitive_igd(problem, "LMOMCTS").unwrap();
    let baseline = manifest.insensitive_igd(problem, "NSGA-II").unwrap();
    let means: BTreeMap<&str, f64> = ["LMOMCTS", "NSGA-II"]
        .into_iter()
        .map(|a| (a, manifest.runs(problem, a).map(|r| r.final_igd).sum::<f64>() / 10.0))
        .collect();
    (
        ours <= baseline / 10.0,
        format!(
            "insensitive-IGD LMOMCTS {ours:.4e} vs NSGA-II {baseline:.4e} (need <= {:.4e}); mean IGD {means:.4?}",
            baseline / 10.0
        ),
    )
}

fn criterion_07_archive_monotone() -> Outcome {
    let runs = lmomcts_runs(benchmark());
    let mut violations = 0;
    let mut shortest = usize::MAX;
    for r in &runs {
        let trace = r.archive_trace();
        shortest = shortest.min(trace.len());
        violations += trace.windows(2).filter(|w| w[1] < w[0]).count();
    }
    // one snapshot per iteration: 99 expansions plus the initial report
    (
        violations == 0 && shortest >= 100,
        format!("{} runs, {violations} decreases, shortest trace {shortest}", runs.len()),
    )
}

// ---------------------------------------------------------------- 8

fn criterion_08_memory_census() -> Outcome {
    let problem = make_problem("LSMOP2", 3, 100).unwrap();
    let (n, e) = (20u64, 20u64);
    let mut peaks = Vec::new();
    let mut census_violations = 0;
    for iterations in [100u64, 400, 1600] {
        let config = SearchConfig {
            max_evaluations: n + iterations * e,
            expansion_evaluations: e,
            population_size: n as usize,
            hv_samples: 1000,
            ..SearchConfig::default()
        };
        let mut observer = |r: &lmomcts::mcts::IterationReport| {
            if r.live_populations > r.census_bound {
                census_violations += 1;
            }
        };
        let out = run_lmomcts(&problem, &config, RandomStream::new(iterations), None, &mut observer).unwrap();
        assert_eq!(out.iterations as u64, iterations);
        peaks.push(out.peak_live_populations() as f64);
    }
    // least-squares slope of log(peak) against log(I)
    let xs: Vec<f64> = [100f64, 400.0, 1600.0].iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = peaks.iter().map(|v| v.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 3.0, ys.iter().sum::<f64>() / 3.0);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    (
        census_violations == 0 && slope <= 0.9,
        format!("census violations {census_violations}; peak live populations {peaks:?} for I = 100/400/1600, log-log slope {slope:.3} (need <= 0.9)"),
    )
}

// ---------------------------------------------------------------- 9

fn criterion_09_coverage() -> Outcome {
    let (d, d_n) = (1000, 200);
    let k = branching_factor(d, d_n, 0.9).unwrap();
    let mut rng = RandomStream::new(9);
    let rounds = 10_000;
    let fractions: Vec<f64> = (0..rounds)
        .map(|_| {
            let mut seen = vec![false; d];
            for _ in 0..k {
                for &i in sample_variables(d, d_n, &mut rng).unwrap().indices() {
                    seen[i] = true;
                }
            }
            seen.iter().filter(|&&s| s).count() as f64 / d as f64
        })
        .collect();
    let mean = fractions.iter().sum::<f64>() / rounds as f64;
    let var = fractions.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (rounds - 1) as f64;
    let se = (var / rounds as f64).sqrt();
    (
        mean >= 0.9 - 3.0 * se,
        format!("k = {k}, covered fraction {mean:.5} (se {se:.2e}), need >= {:.5}", 0.9 - 3.0 * se),
    )
}

// ---------------------------------------------------------------- 10

const DETERMINISM: &str = r#"
runs = 3
seed = 77
workers = 2
snapshot_every = 500

[[problem]]
name = "LSMOP3"
m = 3
d = 100

[[problem]]
name = "LSMOP9"
m = 2
d = 100

[[algorithm]]
name = "LMOMCTS"
E = 3000
n = 30
e = 150
hv_samples = 2000

[[algorithm]]
name = "NSGA-II"
kind = "nsga2"
E = 3000
n = 30
"#;

fn files(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    for sub in [dir.to_path_buf(), dir.join(RUNS_DIR)] {
        for entry in fs::read_dir(&sub).unwrap() {
            let path = entry.unwrap().path();
            if path.is_file() {
                out.insert(path.strip_prefix(dir).unwrap().to_path_buf(), fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn criterion_10_determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), DETERMINISM);
    run_batch(&cfg).unwrap();
    let first = files(tmp.path());
    fs::remove_dir_all(tmp.path()).unwrap();
    run_batch(&cfg).unwrap();
    let second = files(tmp.path());
    let differing: Vec<_> = first.keys().filter(|k| first.get(*k) != second.get(*k)).collect();
    (
        first.len() == second.len() && differing.is_empty() && first.len() == 16,
        format!("{} files compared, {} differ", first.len(), differing.len()),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 10] = [
    (1, "criterion_01_branching_factor", criterion_01_branching_factor),
    (2, "criterion_02_monte_carlo_hypervolume", criterion_02_monte_carlo_hypervolume),
    (3, "criterion_03_sort_oracle", criterion_03_sort_oracle),
    (4, "criterion_04_dispersion_fixtures", criterion_04_dispersion_fixtures),
    (5, "criterion_05_parameter_study_igd", criterion_05_parameter_study_igd),
    (6, "criterion_06_insensitivity", criterion_06_insensitivity),
    (7, "criterion_07_archive_monotone", criterion_07_archive_monotone),
    (8, "criterion_08_memory_census", criterion_08_memory_census),
    (9, "criterion_09_coverage", criterion_09_coverage),
    (10, "criterion_10_determinism", criterion_10_determinism),
];

fn main() -> std::process::ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected =
        CRITERIA.iter().filter(|(_, name, _)| filters.is_empty() || filters.iter().any(|f| name.contains(f.as_str())));
    let mut failed = Vec::new();
    for &(n, _, run) in selected {
        let (pass, detail) = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            (false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        println!("criterion {n}: {} | {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
