//! Classical leveling walk on the two-colored board.

use clap::Args;

use autoqc_core::classical_walk::{ClassicalWalk, NODE_CAP};
use autoqc_core::report::{format_float, RunReport, Verdict};
use autoqc_core::Result;

use crate::context::{csv_document, RunContext};

#[derive(Args)]
pub struct ClassicalWalkArgs {
    /// Number of board rows (even).
    #[arg(long)]
    rows: Option<usize>,
    /// Number of board columns.
    #[arg(long)]
    cols: Option<usize>,
    /// Region half-width for the escape probability.
    #[arg(long)]
    k: Option<usize>,
    /// Evolution time for the diffusion snapshot.
    #[arg(long)]
    t: Option<f64>,
    /// Enumeration ceiling.
    #[arg(long)]
    node_cap: Option<usize>,
}

pub fn classical_walk(ctx: &RunContext, args: ClassicalWalkArgs) -> Result<RunReport> {
    let rows = ctx.resolve(args.rows, "rows", 4)?;
    let cols = ctx.resolve(args.cols, "cols", 12)?;
    let k = ctx.resolve(args.k, "k", 1)?;
    let t = ctx.resolve(args.t, "t", 1.0)?;
    let node_cap = ctx.resolve(args.node_cap, "node_cap", NODE_CAP)?;
    let walk = ClassicalWalk::build(rows, cols, node_cap)?;

    let edge_lines: Vec<String> = walk
        .edges()
        .iter()
        .map(|&(a, b)| format!("{a} {b}"))
        .collect();
    ctx.write_text("classical_edges.txt", &(edge_lines.join("\n") + "\n"))?;

    let stationary = walk.stationary();
    let stationary_rows: Vec<String> = stationary
        .iter()
        .enumerate()
        .map(|(i, &p)| format!("{i},{}", format_float(p)))
        .collect();
    ctx.write_text(
        "classical_stationary.csv",
        &csv_document("node_id,probability", &stationary_rows),
    )?;

    let evolved = walk.evolve(t)?;
    let evolved_rows: Vec<String> = evolved
        .iter()
        .enumerate()
        .map(|(i, &p)| format!("{i},{}", format_float(p)))
        .collect();
    ctx.write_text(
        "classical_evolved.csv",
        &csv_document("node_id,probability", &evolved_rows),
    )?;

    let mut report = RunReport::new(serde_json::json!({
        "rows": rows,
        "cols": cols,
        "k": k,
        "t": t,
    }));
    let conserved = walk.conserved_energy_units();
    let worst_energy = walk
        .nodes()
        .iter()
        .map(|s| (walk.energy_units(s) - conserved).abs())
        .max()
        .unwrap_or(0);
    report.push(Verdict::at_most(
        "interaction energy is conserved across the reachable set",
        worst_energy as f64,
        0.0,
    ));
    report.push(Verdict::new(
        "uniform distribution is the only stationary one",
        walk.kernel_dimension()? == 1,
        walk.kernel_dimension()? as f64,
        1.0,
    ));
    report.push(Verdict::new(
        "point reflection is a graph automorphism",
        walk.reflection_is_automorphism(),
        if walk.reflection_is_automorphism() { 1.0 } else { 0.0 },
        1.0,
    ));
    let mass: f64 = evolved.iter().sum();
    report.push(Verdict::at_most(
        "diffused distribution stays normalized",
        (mass - 1.0).abs(),
        1e-9,
    ));
    let outside = walk.stationary_outside_probability(k);
    let admissible = 2 * k + 2 * rows < cols;
    if admissible {
        report.push(Verdict::at_least(
            "stationary escape probability for the admissible region",
            outside,
            0.5,
        ));
    }
    let summary = serde_json::json!({
        "nodes": walk.node_count(),
        "edges": walk.edge_count(),
        "conserved_energy_units": conserved,
        "outside_probability": outside,
        "region_admissible": admissible,
    });
    ctx.write_report("classical_walk.json", &report, summary)?;
    Ok(report)
}
