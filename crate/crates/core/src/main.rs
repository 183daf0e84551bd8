use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lmomcts::harness::{
    parse_config, read_manifest, run_batch, summarize, write_front, write_summary, ExperimentConfig,
};
use lmomcts::problems::sample_reference_front;
use lmomcts::Result;

#[derive(Debug, Parser)]
#[command(name = "lmomcts", version, about = "Large-scale multiobjective optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the master seed of the config.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Number of runs executed in parallel (0 = one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Evaluations between convergence snapshots.
    #[arg(long, global = true)]
    snapshot_every: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Execute every run of a config and write the results.
    Run {
        config: PathBuf,
        /// Override the output directory of the config.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Recompute the summary of a finished batch from its stored files.
    Metrics {
        dir: PathBuf,
        /// Write the summary here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a reference front as CSV.
    Front { problem: String, m: usize, count: usize, out: PathBuf },
    /// Check a config and print it with all defaults filled in.
    Validate { config: PathBuf },
}

impl Cli {
    fn load(&self, path: &Path) -> Result<ExperimentConfig> {
        let mut config = parse_config(path)?;
        if let Some(seed) = self.seed {
            config.experiment.seed = seed;
        }
        if let Some(workers) = self.workers {
            config.experiment.workers = workers;
        }
        if let Some(every) = self.snapshot_every {
            config.experiment.snapshot_every = every;
        }
        config.validate()?;
        Ok(config)
    }
}

fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Run { config, output } => {
            let mut config = cli.load(config)?;
            if let Some(dir) = output {
                config.experiment.output = dir.clone();
            }
            let manifest = run_batch(&config)?;
            let failed = manifest.records.iter().filter(|r| r.status.is_failed()).count();
            log::info!(
                "{} runs written to {} ({failed} failed)",
                manifest.records.len(),
                config.experiment.output.display()
            );
            write_summary(std::io::stdout().lock(), &summarize(&manifest))
        }
        Command::Metrics { dir, out } => {
            let manifest = read_manifest(dir)?;
            let rows = summarize(&manifest);
            match out {
                Some(path) => write_summary(std::fs::File::create(path)?, &rows),
                None => write_summary(std::io::stdout().lock(), &rows),
            }
        }
        Command::Front { problem, m, count, out } => {
            let front = sample_reference_front(problem, *m, *count)?;
            write_front(out, front.points())
        }
        Command::Validate { config } => {
            print!("{}", cli.load(config)?.to_toml());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
