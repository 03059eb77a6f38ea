//! Circuit compilation, block tilings, and the assembled spinful model.

use std::fs;

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use autoqc_core::hamiltonian::{build_complete, build_k, Sector, SpinfulBasis};
use autoqc_core::layout::{
    circuit_unitary, compile, layout_unitary, margolus_tiling, random_adjacent_circuit, validate,
    LogicalCircuit, StripeKind,
};
use autoqc_core::linalg::phase_stripped_distance;
use autoqc_core::report::{format_float, RunReport, Verdict};
use autoqc_core::{LatticeSpec, Result};

use crate::context::RunContext;

const ROUND_TRIP_BOUND: f64 = 1e-9;

fn load_or_random_circuit(
    ctx: &RunContext,
    circuit: Option<&std::path::Path>,
    qubits: usize,
    gates: usize,
) -> Result<LogicalCircuit> {
    match circuit {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            Ok(serde_json::from_str(&text)?)
        }
        None => {
            let mut rng = ChaCha12Rng::seed_from_u64(ctx.seed);
            Ok(random_adjacent_circuit(qubits, gates, &mut rng))
        }
    }
}

#[derive(Args)]
pub struct LayoutArgs {
    /// Logical circuit as JSON; omitting it compiles a random circuit.
    #[arg(long, value_name = "FILE")]
    circuit: Option<std::path::PathBuf>,
    /// Lattice side length.
    #[arg(long)]
    n: Option<usize>,
    /// Circuit region half-width.
    #[arg(long)]
    k: Option<usize>,
    /// Schedule steps per stripe.
    #[arg(long)]
    l: Option<usize>,
    /// Qubit count for the random circuit.
    #[arg(long)]
    qubits: Option<usize>,
    /// Gate count for the random circuit.
    #[arg(long)]
    gates: Option<usize>,
    /// Print the text-art stripe map.
    #[arg(long)]
    map: bool,
}

pub fn layout(ctx: &RunContext, args: LayoutArgs) -> Result<RunReport> {
    let n = ctx.resolve(args.n, "n", 12)?;
    let k = ctx.resolve(args.k, "k", n - 1)?;
    let l = ctx.resolve(args.l, "l", 2)?;
    let qubits = ctx.resolve(args.qubits, "qubits", 3)?;
    let gates = ctx.resolve(args.gates, "gates", 4)?;
    let spec = LatticeSpec::new(n, k)?;
    let circuit = load_or_random_circuit(ctx, args.circuit.as_deref(), qubits, gates)?;
    let compiled = compile(&circuit, &spec, l)?;
    ctx.write_text("layout.json", &compiled.to_json()?)?;
    if args.map {
        print!("{}", compiled.stripe_map());
    }
    let mut report = RunReport::new(serde_json::json!({
        "n": n,
        "k": k,
        "l": l,
        "qubits": circuit.qubits,
        "gates": circuit.gates.len(),
        "seed": ctx.seed,
        "circuit_file": args.circuit.as_ref().map(|p| p.display().to_string()),
    }));
    let violations = validate(&compiled);
    report.push(Verdict::at_most(
        "placement rules hold on the compiled layout",
        violations.len() as f64,
        0.0,
    ));
    let distance = phase_stripped_distance(
        &layout_unitary(&compiled)?,
        &circuit_unitary(&circuit)?,
    );
    report.push(Verdict::at_most(
        "stripe targets compose to the logical circuit",
        distance,
        ROUND_TRIP_BOUND,
    ));
    let summary = serde_json::json!({
        "stripes": compiled.stripes.len(),
        "violations": violations,
        "unitary_distance": distance,
    });
    ctx.write_report("layout_report.json", &report, summary)?;
    Ok(report)
}

#[derive(Args)]
pub struct MargolusArgs {
    /// Lattice side length.
    #[arg(long)]
    n: Option<usize>,
    /// Circuit region half-width.
    #[arg(long)]
    k: Option<usize>,
    /// Automaton steps to tile.
    #[arg(long)]
    steps: Option<usize>,
    /// Rows per automaton cell.
    #[arg(long)]
    cell_rows: Option<usize>,
    /// Print the text-art stripe map.
    #[arg(long)]
    map: bool,
}

pub fn margolus(ctx: &RunContext, args: MargolusArgs) -> Result<RunReport> {
    let n = ctx.resolve(args.n, "n", 8)?;
    let k = ctx.resolve(args.k, "k", n - 1)?;
    let steps = ctx.resolve(args.steps, "steps", 2)?;
    let cell_rows = ctx.resolve(args.cell_rows, "cell_rows", 2)?;
    let spec = LatticeSpec::new(n, k)?;
    let tiling = margolus_tiling(&spec, steps, cell_rows)?;
    ctx.write_text("margolus.json", &tiling.to_json()?)?;
    if args.map {
        print!("{}", tiling.stripe_map());
    }
    let mut report = RunReport::new(serde_json::json!({
        "n": n,
        "k": k,
        "steps": steps,
        "cell_rows": cell_rows,
    }));
    let violations = validate(&tiling);
    report.push(Verdict::at_most(
        "placement rules hold on the tiling",
        violations.len() as f64,
        0.0,
    ));
    let first_layer: Vec<&StripeKind> = tiling
        .stripes
        .iter()
        .filter(|s| s.columns.0 == 1)
        .map(|s| &s.kind)
        .collect();
    report.push(Verdict::at_least(
        "first layer carries at least one block",
        first_layer.len() as f64,
        if steps > 0 { 1.0 } else { 0.0 },
    ));
    let summary = serde_json::json!({
        "stripes": tiling.stripes.len(),
        "violations": violations,
    });
    ctx.write_report("margolus_report.json", &report, summary)?;
    Ok(report)
}

#[derive(Args)]
pub struct FullSimArgs {
    /// Logical circuit as JSON; omitting it compiles a random circuit.
    #[arg(long, value_name = "FILE")]
    circuit: Option<std::path::PathBuf>,
    /// Lattice side length.
    #[arg(long)]
    n: Option<usize>,
    /// Schedule steps per stripe.
    #[arg(long)]
    l: Option<usize>,
    /// Qubit count for the random circuit.
    #[arg(long)]
    qubits: Option<usize>,
    /// Gate count for the random circuit.
    #[arg(long)]
    gates: Option<usize>,
}

pub fn full_sim(ctx: &RunContext, args: FullSimArgs) -> Result<RunReport> {
    let n = ctx.resolve(args.n, "n", 3)?;
    let l = ctx.resolve(args.l, "l", 2)?;
    let qubits = ctx.resolve(args.qubits, "qubits", 1)?;
    let gates = ctx.resolve(args.gates, "gates", 1)?;
    let spec = LatticeSpec::new(n, n - 1)?;
    let circuit = load_or_random_circuit(ctx, args.circuit.as_deref(), qubits, gates)?;
    let compiled = compile(&circuit, &spec, l)?;
    ctx.write_text("full_sim_layout.json", &compiled.to_json()?)?;

    let mut report = RunReport::new(serde_json::json!({
        "n": n,
        "l": l,
        "qubits": circuit.qubits,
        "gates": circuit.gates.len(),
        "seed": ctx.seed,
        "circuit_file": args.circuit.as_ref().map(|p| p.display().to_string()),
    }));
    let distance = phase_stripped_distance(
        &layout_unitary(&compiled)?,
        &circuit_unitary(&circuit)?,
    );
    report.push(Verdict::at_most(
        "stripe targets compose to the logical circuit",
        distance,
        ROUND_TRIP_BOUND,
    ));

    let complete = build_complete(&spec, &compiled)?;
    report.push(Verdict::at_most(
        "assembled operator is hermitian",
        complete.hermiticity_error(),
        1e-12,
    ));

    let basis = SpinfulBasis::new(&spec)?;
    let atoms = basis.atoms();
    let hopping = build_k(&spec, Sector::ConnectedChain)?.dense()?;
    let dense = complete.dense()?;
    let mut off_block = 0.0_f64;
    for r in 0..dense.nrows() {
        for c in 0..dense.ncols() {
            let (wr, wc) = (r >> atoms, c >> atoms);
            if wr == wc {
                continue;
            }
            let expected = if r & ((1 << atoms) - 1) == c & ((1 << atoms) - 1) {
                hopping[(wr, wc)]
            } else {
                num_complex::Complex64::new(0.0, 0.0)
            };
            off_block = off_block.max((dense[(r, c)] - expected).norm());
        }
    }
    report.push(Verdict::at_most(
        "spin couplings act within one chain configuration",
        off_block,
        0.0,
    ));

    let triplet_lines: Vec<String> = complete
        .triplets()
        .iter()
        .map(|&(r, c, v)| {
            format!("{} {} {} {}", r, c, format_float(v.re), format_float(v.im))
        })
        .collect();
    ctx.write_text("full_sim_operator.txt", &(triplet_lines.join("\n") + "\n"))?;
    let operator_json = serde_json::json!({
        "dimension": complete.dimension(),
        "basis": complete.basis(),
        "triplets": complete
            .triplets()
            .iter()
            .map(|&(r, c, v)| serde_json::json!([r, c, v.re, v.im]))
            .collect::<Vec<_>>(),
    });
    ctx.write_text(
        "full_sim_operator.json",
        &serde_json::to_string_pretty(&operator_json)?,
    )?;

    let summary = serde_json::json!({
        "dimension": complete.dimension(),
        "stripes": compiled.stripes.len(),
        "unitary_distance": distance,
        "off_block_residual": off_block,
    });
    ctx.write_report("full_sim.json", &report, summary)?;
    Ok(report)
}
