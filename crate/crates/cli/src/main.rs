use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use fano_toric_cli::{parse_problem, run, RunOptions, Task};
use fano_toric_core::Budget;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Fano schemes of k-planes on complete intersections in projective toric
/// varieties.
#[derive(Debug, Parser)]
#[command(name = "fano-toric", version)]
struct Cli {
    /// faces, cayley, smooth, degrees, expected-dim, check, count or analyze
    task: Task,
    /// Problem file (JSON)
    #[arg(long, short)]
    input: PathBuf,
    /// Dimension of the linear subspaces; overrides the problem file
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = Budget::default().max_search_nodes)]
    budget_nodes: usize,
    #[arg(long, default_value_t = Budget::default().max_faces)]
    budget_faces: usize,
    #[arg(long, default_value_t = Budget::default().max_fixed_points)]
    budget_fixed_points: usize,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("global thread pool is configured once");
    }
    let bytes = match std::fs::read(&cli.input) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.input.display());
            return ExitCode::from(1);
        }
    };
    let problem = match parse_problem(&bytes) {
        Ok(p) => p,
        Err(errs) => {
            for e in &errs.0 {
                eprintln!("validation error: {e}");
            }
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions {
        task: Some(cli.task),
        k: cli.k,
        budget: Budget {
            max_faces: cli.budget_faces,
            max_search_nodes: cli.budget_nodes,
            max_fixed_points: cli.budget_fixed_points,
        },
    };
    match run(&problem, &opts) {
        Ok(out) => {
            match cli.format {
                Format::Json => print!("{}", out.report.to_json()),
                Format::Text => print!("{}", out.report.to_text()),
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
