//! One fast pass over every module's headline check.

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use autoqc_core::classical_walk::{ClassicalWalk, NODE_CAP};
use autoqc_core::fermion_walk::{readout_bound, FermionWalk};
use autoqc_core::hamiltonian::{build_hs, effective_hamiltonian, restrict_to_weight_sector};
use autoqc_core::holonomy::{
    one_qubit_gate, two_qubit_gate, universality_witness, Axis, DEFAULT_TAU,
};
use autoqc_core::layout::{circuit_unitary, compile, layout_unitary, random_adjacent_circuit};
use autoqc_core::linalg::phase_stripped_distance;
use autoqc_core::perturbation::{low_band_check, propagator_check};
use autoqc_core::report::{RunReport, Verdict};
use autoqc_core::{Exec, LatticeSpec, Result};

use crate::context::RunContext;

#[derive(Args)]
pub struct ReportArgs {
    /// Random circuits to round-trip through the compiler.
    #[arg(long)]
    circuits: Option<usize>,
}

pub fn report(ctx: &RunContext, args: ReportArgs) -> Result<RunReport> {
    let circuits = ctx.resolve(args.circuits, "circuits", 10)?;
    let mut report = RunReport::new(serde_json::json!({
        "circuits": circuits,
        "seed": ctx.seed,
    }));

    let spec = LatticeSpec::new(3, 2)?;
    let eff = effective_hamiltonian(&spec)?.dense()?;
    let restricted = restrict_to_weight_sector(&build_hs(spec.m())?, spec.m());
    let mut structural = 0.0_f64;
    for r in 0..eff.nrows() {
        for c in 0..eff.ncols() {
            structural = structural.max((eff[(r, c)].re - restricted[(r, c)]).abs());
            structural = structural.max(eff[(r, c)].im.abs());
        }
    }
    report.push(Verdict::at_most(
        "effective model equals the half-filling sector",
        structural,
        1e-12,
    ));

    let walk = FermionWalk::new(16)?;
    let passing = walk.passing_time(4)?;
    report.push(Verdict::at_most(
        "passing time within the linear window",
        passing.t_star,
        8.0 * 4.0,
    ));
    report.push(Verdict::at_most(
        "concentration bound at the passing time",
        passing.cheb_bound,
        12.0 / 4.0,
    ));
    let averages = walk.time_averages(Exec::default());
    report.push(Verdict::at_most(
        "time-averaged count sits at half the chain",
        (averages.expected - 8.0).abs(),
        1e-9,
    ));
    report.push(Verdict::at_most(
        "ergodic readout bound is nontrivial",
        readout_bound(averages.expected, averages.variance, 4),
        1.0,
    ));

    let rotation = one_qubit_gate(Axis::X, (0.25_f64).acos(), 200, DEFAULT_TAU)?;
    report.push(Verdict::at_least(
        "rotation stripe fidelity",
        rotation.fidelity,
        0.999,
    ));
    let conditional = two_qubit_gate(std::f64::consts::FRAC_PI_6, 200, DEFAULT_TAU)?;
    report.push(Verdict::at_least(
        "conditional stripe control-up fidelity",
        conditional.control_up.fidelity,
        0.999,
    ));
    report.push(Verdict::at_most(
        "conditional stripe control-down drift",
        conditional.control_down_distance,
        1e-9,
    ));
    let witness = universality_witness(1600, DEFAULT_TAU)?;
    report.push(Verdict::at_most(
        "controlled-z from stripes with local corrections",
        witness.cz_distance,
        1e-2,
    ));

    let low = low_band_check(&spec, 1e4)?;
    report.push(Verdict::at_most(
        "low-band deviation under its bound",
        low.deviation,
        low.bound,
    ));
    let prop = propagator_check(&spec, 1e4, 10.0, 32)?;
    report.push(Verdict::at_most(
        "propagator deviation under its bound",
        prop.max_margin,
        0.0,
    ));

    let board = ClassicalWalk::build(2, 8, NODE_CAP)?;
    let conserved = board.conserved_energy_units();
    let worst = board
        .nodes()
        .iter()
        .map(|s| (board.energy_units(s) - conserved).abs())
        .max()
        .unwrap_or(0);
    report.push(Verdict::at_most(
        "board walk conserves the interaction energy",
        worst as f64,
        0.0,
    ));
    report.push(Verdict::at_least(
        "board walk escapes the admissible region",
        board.stationary_outside_probability(1),
        0.5,
    ));

    let lattice = LatticeSpec::new(12, 11)?;
    let mut rng = ChaCha12Rng::seed_from_u64(ctx.seed);
    let mut worst_distance = 0.0_f64;
    let mut compiled_ok = 0usize;
    for _ in 0..circuits {
        let circuit = random_adjacent_circuit(3, 4, &mut rng);
        let layout = compile(&circuit, &lattice, 2)?;
        compiled_ok += 1;
        let distance = phase_stripped_distance(
            &layout_unitary(&layout)?,
            &circuit_unitary(&circuit)?,
        );
        worst_distance = worst_distance.max(distance);
    }
    report.push(Verdict::new(
        "random circuits compile onto stripes",
        compiled_ok == circuits,
        compiled_ok as f64,
        circuits as f64,
    ));
    report.push(Verdict::at_most(
        "compiled stripes reproduce the logical circuits",
        worst_distance,
        1e-9,
    ));

    let summary = serde_json::json!({
        "structural_deviation": structural,
        "t_star_m16_k4": passing.t_star,
        "time_average_m16": averages.expected,
        "rotation_fidelity_l200": rotation.fidelity,
        "conditional_fidelity_l200": conditional.control_up.fidelity,
        "cz_distance_l1600": witness.cz_distance,
        "low_band_deviation": low.deviation,
        "propagator_margin": prop.max_margin,
        "board_escape": board.stationary_outside_probability(1),
        "worst_circuit_distance": worst_distance,
    });
    ctx.write_report("report.json", &report, summary)?;
    Ok(report)
}
