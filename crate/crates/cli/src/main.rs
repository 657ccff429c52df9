//! `corrmax` — reproducible influence experiments from the command line.
//!
//! Subcommands: `eval`, `maximize`, `coupling`, `poc`, `table2`, `gen`.
//! Every run is deterministic given its flags (the master seed defaults
//! to 0) and writes a `config.json` sidecar next to its outputs.
//!
//! Exit codes: 0 success, 1 domain/other errors, 2 argument errors (clap),
//! 3 input parse errors, 4 combinatorial budget refusals.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::*;

#[derive(Parser)]
#[command(name = "corrmax", version, about = "Correlation-robust influence maximization")]
struct Cli {
    /// Cap rayon worker threads; outputs do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate f_corr and a Monte Carlo IC estimate for a seed set.
    Eval(EvalArgs),
    /// Lazy-greedy seed selection under one or both objectives.
    Maximize(MaximizeArgs),
    /// Breakpoint cells, exact expected influence, and edge marginals of
    /// the worst-case coupling.
    Coupling(CouplingArgs),
    /// Price-of-correlations report (exact or greedy-surrogate).
    Poc(PocArgs),
    /// Misspecification table: 2 seed-set kinds x the probability models.
    Table2(Table2Args),
    /// Emit a synthetic instance as a graph CSV.
    Gen(GenArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // ignore failure: the global pool may already be initialized
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(args, cli.threads),
        Command::Maximize(args) => cmd_maximize(args, cli.threads),
        Command::Coupling(args) => cmd_coupling(args, cli.threads),
        Command::Poc(args) => cmd_poc(args, cli.threads),
        Command::Table2(args) => cmd_table2(args, cli.threads),
        Command::Gen(args) => cmd_gen(args, cli.threads),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> ExitCode {
    match err.downcast_ref::<corrmax_core::Error>() {
        Some(corrmax_core::Error::Parse { .. }) => ExitCode::from(3),
        Some(corrmax_core::Error::Budget { .. }) => ExitCode::from(4),
        _ => ExitCode::FAILURE,
    }
}
