use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gem_core::experiment::{export_results, reproduce_tables, summary_row, DEFAULT_MASTER_SEED, SUMMARY_HEADER};
use gem_core::{list_problems, registry, run_experiment, ExperimentConfig, GemError};

#[derive(Parser)]
#[command(name = "gem", version, about = "Generalized evolutionary metaheuristic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run repeated seeded optimizations of one problem.
    Run(RunArgs),
    /// Print the built-in problems.
    ListProblems,
    /// Print the registered algorithm presets.
    ListPresets,
    /// Run every problem with the standard setting and write the result tables.
    ReproduceTables(TablesArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    problem: String,
    /// Named preset, e.g. DE, PSO, GEM.
    #[arg(long, conflicts_with = "params")]
    preset: Option<String>,
    /// Explicit coefficients, e.g. "a=1,b=0.7,theta=0.97^t".
    #[arg(long)]
    params: Option<String>,
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 10)]
    pop: usize,
    #[arg(long, default_value_t = 1000)]
    iters: usize,
    #[arg(long, env = "GEM_SEED", default_value_t = DEFAULT_MASTER_SEED)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    dim: Option<usize>,
    /// Penalty weight for constrained problems.
    #[arg(long)]
    lambda: Option<f64>,
    /// Number of top agents averaged into the centroid.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, env = "GEM_SEED", default_value_t = DEFAULT_MASTER_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 1000)]
    iters: usize,
    #[arg(long)]
    workers: Option<usize>,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn run(args: RunArgs) -> gem_core::Result<()> {
    let mut config = ExperimentConfig::new(&args.problem);
    config.preset = args.preset;
    config.params = args.params;
    config.runs = args.runs;
    config.n = args.pop;
    config.t_max = args.iters;
    config.master_seed = args.seed;
    config.dimension = args.dim;
    config.penalty_lambda = args.lambda;
    config.m = args.m;
    config.workers = args.workers.unwrap_or_else(default_workers);
    if config.workers == 0 {
        return Err(GemError::config("workers must be >= 1"));
    }
    config.validate()?;

    let report = run_experiment(&config)?;
    let files = export_results(&report, &args.out)?;
    println!("{SUMMARY_HEADER}");
    println!("{}", summary_row(&report.config, &report.stats));
    for f in &report.failures {
        eprintln!("run {} (seed {}) failed: {}", f.run_index, f.seed, f.message);
    }
    eprintln!("wrote {} and {} run files", files.summary.display(), files.runs.len());
    Ok(())
}

fn tables(args: TablesArgs) -> gem_core::Result<()> {
    let workers = args.workers.unwrap_or_else(default_workers);
    if workers == 0 || args.runs == 0 || args.iters == 0 {
        return Err(GemError::config("workers, runs and iters must be >= 1"));
    }
    let report = reproduce_tables(&args.out, args.seed, workers, args.runs, args.iters)?;
    for row in report.functions.iter().chain(&report.case_studies) {
        println!(
            "{:<16} best {:.6e}  worst {:.6e}  mean {:.6e}",
            row.problem, row.stats.best, row.stats.worst, row.stats.mean
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::ReproduceTables(args) => tables(args),
        Command::ListProblems => {
            for (name, dim, kind) in list_problems() {
                println!("{name:<24} D={dim:<3} {kind}");
            }
            Ok(())
        }
        Command::ListPresets => {
            for p in registry() {
                println!("{:<6} {:<44} {:?}", p.name, p.full_name, p.fidelity);
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
