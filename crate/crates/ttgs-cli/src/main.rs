//! Command-line front end for ternary tropical pathfinding.
//!
//! Five subcommands share one flag vocabulary: `solve` runs the label
//! recurrence on a ttgn network, `verify` compares its labels against
//! exhaustive walk enumeration, `probe` samples algebraic laws of an
//! operator family, `gen` emits seeded random networks, and `bench` sweeps
//! generated instances while auditing the relaxation accounting.
//!
//! Every command writes one machine-readable report (JSON, except `gen`,
//! which emits the network itself) to `--output` or stdout. Reports are
//! byte-stable: the same flags on the same input produce identical bytes,
//! `bench` timings excepted. Exit codes: 0 success, 1 unusable input or
//! flags, 2 improving cycle under `--fail-on-cycle`, 3 verification
//! failure.

mod commands;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ttgs", about = "Ternary tropical pathfinding toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve single-source labels on a ttgn network.
    Solve(CommonArgs),
    /// Check solver labels against exhaustive walk enumeration.
    Verify(VerifyArgs),
    /// Probe algebraic laws of an operator family.
    Probe(ProbeArgs),
    /// Generate a seeded random ttgn network.
    Gen(GenArgs),
    /// Sweep seeded networks and audit the relaxation accounting.
    Bench(BenchArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input network in ttgn format.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Ternary operator: linear, weighted:A,B,C or riskamp:L.
    #[arg(long, default_value = "linear")]
    gamma: String,

    /// Triple evaluation: sum:WC,WT,WR or riskscaled:MU.
    #[arg(long, default_value = "sum:1,1,1")]
    eval: String,

    /// Relaxation schedule: synchronous or in-place.
    #[arg(long, default_value = "synchronous")]
    schedule: String,

    /// Outer iteration cap; defaults to n - 1.
    #[arg(long)]
    max_iters: Option<usize>,

    /// Record per-iteration labels in the report.
    #[arg(long)]
    trace: bool,

    /// Seed for every randomized command.
    #[arg(long, default_value_t = ttgs_core::DEFAULT_SEED)]
    seed: u64,

    /// Report destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Exit 2 when an improving cycle is detected.
    #[arg(long)]
    fail_on_cycle: bool,

    /// Treat label/oracle equality misses in verify as fatal.
    #[arg(long)]
    strict_lemma: bool,

    /// Lift the small-instance guard on verify.
    #[arg(long)]
    force: bool,

    /// Accept negative triple components.
    #[arg(long)]
    allow_negative: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Walk budget: maximum edges per enumerated walk.
    #[arg(long, default_value_t = 8)]
    budget: usize,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Law to probe: monotonicity, distributivity, associativity or all.
    #[arg(long, default_value = "all")]
    law: String,

    /// Sample count for randomized probes.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,

    /// Sweep the exhaustive small-integer grid instead of sampling.
    #[arg(long)]
    grid: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Vertex count.
    #[arg(long)]
    n: usize,

    /// Probability of each ordered vertex pair carrying an edge.
    #[arg(long)]
    p: f64,

    /// Component range LO,HI shared by cost, time and risk.
    #[arg(long, default_value = "0,100")]
    range: String,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Comma-separated vertex counts for the sweep.
    #[arg(long, default_value = "10,20,50")]
    sizes: String,

    /// Comma-separated edge probabilities for the sweep.
    #[arg(long, default_value = "0.05,0.1")]
    probs: String,

    /// Component range LO,HI shared by cost, time and risk.
    #[arg(long, default_value = "0,100")]
    range: String,
}

fn main() -> ExitCode {
    // Clap's own usage-error exit code is 2, which this tool reserves for
    // improving cycles; route parse failures to 1 instead.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let _ = error.print();
            return ExitCode::from(u8::from(error.use_stderr()));
        }
    };
    let outcome = match &cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Verify(args) => commands::verify(args),
        Command::Probe(args) => commands::probe(args),
        Command::Gen(args) => commands::gen(args),
        Command::Bench(args) => commands::bench(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(1)
        }
    }
}
