//! Command-line runner for the autonomous-computer checks.
//!
//! Every subcommand writes its artifacts (CSV and JSON) into one output
//! directory, prints a one-line verdict per checked bound, and exits with
//! 0 when all checks pass, 1 when a check fails, and 2 when a parameter
//! violates a precondition.

mod angles;
mod commands;
mod context;

use clap::{Parser, Subcommand};

use context::RunContext;

#[derive(Parser)]
#[command(name = "autoqc", version, about = "Sweeps and bound checks for an autonomous quantum computer")]
struct Cli {
    /// JSON file whose fields fill any flag left unset.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<std::path::PathBuf>,

    /// Output directory for artifacts; AUTOQC_OUT overrides the default.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<std::path::PathBuf>,

    /// Seed for every randomized check.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the connected-chain configuration space.
    Configspace(commands::walks::ConfigspaceArgs),
    /// Sweep the chain walk and bound the readout error over a time grid.
    Walk(commands::walks::WalkArgs),
    /// Closed-form infinite-time averages of the region count.
    Timeavg(commands::walks::TimeavgArgs),
    /// First time the expected count clears the readout threshold.
    PassingTime(commands::walks::PassingTimeArgs),
    /// Single-qubit stripe gate against its rotation target.
    Holonomy(commands::gates::HolonomyArgs),
    /// Conditional-phase stripe gate, both control branches.
    TwoQubit(commands::gates::TwoQubitArgs),
    /// Low-band deviation of the full Hamiltonian from the chain model.
    Lemma1(commands::bounds::Lemma1Args),
    /// Propagator deviation between the full and chain evolutions.
    Theorem1(commands::bounds::Theorem1Args),
    /// Self-energy correction scan across the low band.
    SelfEnergy(commands::bounds::SelfEnergyArgs),
    /// Compile a logical circuit onto interaction stripes.
    Layout(commands::layouts::LayoutArgs),
    /// Staggered block tiling for cellular-automaton steps.
    Margolus(commands::layouts::MargolusArgs),
    /// Classical leveling walk on the two-colored board.
    ClassicalWalk(commands::board::ClassicalWalkArgs),
    /// Compile, assemble and cross-check a complete spinful model.
    FullSim(commands::layouts::FullSimArgs),
    /// Fast end-to-end summary across all modules.
    Report(commands::summary::ReportArgs),
}

fn main() {
    let cli = Cli::parse();
    let ctx = match RunContext::new(cli.config.as_deref(), cli.out.as_deref(), cli.seed) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let outcome = match cli.command {
        Command::Configspace(args) => commands::walks::configspace(&ctx, args),
        Command::Walk(args) => commands::walks::walk(&ctx, args),
        Command::Timeavg(args) => commands::walks::timeavg(&ctx, args),
        Command::PassingTime(args) => commands::walks::passing_time(&ctx, args),
        Command::Holonomy(args) => commands::gates::holonomy(&ctx, args),
        Command::TwoQubit(args) => commands::gates::two_qubit(&ctx, args),
        Command::Lemma1(args) => commands::bounds::lemma1(&ctx, args),
        Command::Theorem1(args) => commands::bounds::theorem1(&ctx, args),
        Command::SelfEnergy(args) => commands::bounds::self_energy(&ctx, args),
        Command::Layout(args) => commands::layouts::layout(&ctx, args),
        Command::Margolus(args) => commands::layouts::margolus(&ctx, args),
        Command::ClassicalWalk(args) => commands::board::classical_walk(&ctx, args),
        Command::FullSim(args) => commands::layouts::full_sim(&ctx, args),
        Command::Report(args) => commands::summary::report(&ctx, args),
    };
    match outcome {
        Ok(report) => {
            for verdict in &report.verdicts {
                println!("{}", verdict.line());
            }
            std::process::exit(if report.passed() { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
