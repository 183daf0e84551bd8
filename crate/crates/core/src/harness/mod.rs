//! Experiment driver: configuration, seeded batches and CSV outputs.

mod batch;
mod config;
mod output;

pub use batch::{execute_run, run_batch, run_seed, write_outputs, RunContext};
pub use config::{
    parse_config, AlgorithmKind, AlgorithmSpec, ExperimentConfig, ExperimentSection, ProblemSpec, SeedPolicy,
};
pub use output::{
    convergence_file_name, emit_boxplot_data, fmt_real, read_convergence, read_front, read_manifest, summarize,
    write_convergence, write_front, write_manifest, write_summary, SummaryRow, BOXPLOT_FILE, MANIFEST_FILE, RUNS_DIR,
    SUMMARY_FILE,
};
