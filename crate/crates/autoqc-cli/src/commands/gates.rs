//! Stripe-gate checks: fidelities, leakage, schedule independence.

use clap::Args;

use autoqc_core::holonomy::{
    self, code_projector_control, code_projector_one, one_qubit_family, one_qubit_gate,
    one_qubit_jitter, two_qubit_family, two_qubit_gate, two_qubit_jitter, Axis, GateReport,
};
use autoqc_core::linalg::phase_stripped_distance;
use autoqc_core::report::{format_float, RunReport, Verdict};
use autoqc_core::{Error, Result};

use crate::angles::parse_angle;
use crate::context::{csv_document, RunContext};

const FIDELITY_FLOOR: f64 = 0.999;
const JITTER_SHIFT_BOUND: f64 = 5e-3;
const GAP_DISTANCE_BOUND: f64 = 1e-9;

fn parse_axis(text: &str) -> Result<Axis> {
    match text.to_ascii_lowercase().as_str() {
        "x" => Ok(Axis::X),
        "y" => Ok(Axis::Y),
        other => Err(Error::InvalidParameter(format!(
            "axis '{other}' is neither x nor y"
        ))),
    }
}

fn parse_levels(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| {
                Error::InvalidParameter(format!("schedule list entry '{part}' is not an integer"))
            })
        })
        .collect()
}

fn gate_json(report: &GateReport) -> serde_json::Value {
    serde_json::json!({
        "fidelity": report.fidelity,
        "phase_stripped_distance": report.phase_stripped_distance,
        "leakage_amplitude": report.leakage_amplitude,
        "leakage_population": report.leakage_population,
    })
}

#[derive(Args)]
pub struct HolonomyArgs {
    /// Loop axis, x or y.
    #[arg(long)]
    axis: Option<String>,
    /// Stripe angle parameter; accepts radians or forms like 0.25pi.
    #[arg(long)]
    phi: Option<String>,
    /// Number of schedule steps across the stripe.
    #[arg(long)]
    l: Option<usize>,
    /// Duration of one schedule step.
    #[arg(long)]
    tau: Option<f64>,
    /// Comma-separated step counts for an aggregate sweep.
    #[arg(long)]
    l_sweep: Option<String>,
    /// Number of randomized schedules to try; 0 skips the jitter check.
    #[arg(long)]
    jitter_samples: Option<usize>,
    /// Relative amplitude of the schedule jitter.
    #[arg(long)]
    jitter_amp: Option<f64>,
    /// Mean step duration for the jitter check.
    #[arg(long)]
    jitter_tau: Option<f64>,
}

pub fn holonomy(ctx: &RunContext, args: HolonomyArgs) -> Result<RunReport> {
    let axis_text: String = ctx.resolve(args.axis, "axis", "x".into())?;
    let axis = parse_axis(&axis_text)?;
    let phi_text: String = ctx.resolve(args.phi, "phi", "0.25pi".into())?;
    let phi = parse_angle(&phi_text)?;
    let l = ctx.resolve(args.l, "l", holonomy::DEFAULT_STEPS)?;
    let tau = ctx.resolve(args.tau, "tau", holonomy::DEFAULT_TAU)?;
    let jitter_samples = ctx.resolve(args.jitter_samples, "jitter_samples", 0)?;
    let jitter_amp = ctx.resolve(args.jitter_amp, "jitter_amp", 0.3)?;
    let jitter_tau = ctx.resolve(args.jitter_tau, "jitter_tau", 1.0)?;

    let gate = one_qubit_gate(axis, phi, l, tau)?;
    let mut report = RunReport::new(serde_json::json!({
        "axis": axis_text.to_ascii_lowercase(),
        "phi": phi,
        "l": l,
        "tau": tau,
        "seed": ctx.seed,
        "jitter_samples": jitter_samples,
    }));
    report.push(Verdict::at_least(
        "code-space fidelity against the rotation target",
        gate.fidelity,
        FIDELITY_FLOOR,
    ));

    let family = one_qubit_family(axis, phi, l, tau)?;
    let q = code_projector_one();
    let gapped = q.adjoint() * family.integrate_with_gaps(3.0 * tau) * &q;
    let plain = q.adjoint() * family.integrate() * &q;
    report.push(Verdict::at_most(
        "idle gaps leave the gate unchanged",
        phase_stripped_distance(&gapped, &plain),
        GAP_DISTANCE_BOUND,
    ));

    let mut summary = serde_json::json!({
        "gate": gate_json(&gate),
        "target": "exp(2 pi i cos(phi) sigma)",
        "schedule": { "l": l, "tau": tau, "total_time": l as f64 * tau },
    });

    if let Some(levels) = args.l_sweep.as_deref().map(parse_levels).transpose()? {
        let mut rows = Vec::with_capacity(levels.len());
        let mut fidelities = Vec::with_capacity(levels.len());
        for &steps in &levels {
            let g = one_qubit_gate(axis, phi, steps, tau)?;
            rows.push(format!(
                "{},{},{},{},{}",
                steps,
                format_float(g.fidelity),
                format_float(g.phase_stripped_distance),
                format_float(g.leakage_amplitude),
                format_float(g.leakage_population)
            ));
            fidelities.push(g.fidelity);
        }
        ctx.write_text(
            "holonomy_sweep.csv",
            &csv_document(
                "l,fidelity,phase_stripped_distance,leakage_amplitude,leakage_population",
                &rows,
            ),
        )?;
        let monotone = fidelities.windows(2).all(|w| w[1] >= w[0]);
        report.push(Verdict::new(
            "fidelity improves with finer schedules",
            monotone,
            if monotone { 1.0 } else { 0.0 },
            1.0,
        ));
        summary["l_sweep"] = serde_json::json!(levels);
    }

    if jitter_samples > 0 {
        let jitter = one_qubit_jitter(
            axis,
            phi,
            l,
            jitter_tau,
            jitter_amp,
            jitter_samples,
            ctx.seed,
        )?;
        report.push(Verdict::at_most(
            "randomized schedules shift the fidelity",
            jitter.worst_fidelity_shift,
            JITTER_SHIFT_BOUND,
        ));
        summary["jitter"] = serde_json::to_value(jitter)?;
    }

    ctx.write_report("holonomy.json", &report, summary)?;
    Ok(report)
}

#[derive(Args)]
pub struct TwoQubitArgs {
    /// Stripe angle parameter; accepts radians or forms like 0.25pi.
    #[arg(long)]
    phi: Option<String>,
    /// Number of schedule steps across the stripe.
    #[arg(long)]
    l: Option<usize>,
    /// Duration of one schedule step.
    #[arg(long)]
    tau: Option<f64>,
    /// Comma-separated step counts for an aggregate sweep.
    #[arg(long)]
    l_sweep: Option<String>,
    /// Number of randomized schedules to try; 0 skips the jitter check.
    #[arg(long)]
    jitter_samples: Option<usize>,
    /// Relative amplitude of the schedule jitter.
    #[arg(long)]
    jitter_amp: Option<f64>,
    /// Mean step duration for the jitter check.
    #[arg(long)]
    jitter_tau: Option<f64>,
}

pub fn two_qubit(ctx: &RunContext, args: TwoQubitArgs) -> Result<RunReport> {
    let phi_text: String = ctx.resolve(args.phi, "phi", "0.25pi".into())?;
    let phi = parse_angle(&phi_text)?;
    let l = ctx.resolve(args.l, "l", holonomy::DEFAULT_STEPS)?;
    let tau = ctx.resolve(args.tau, "tau", holonomy::DEFAULT_TAU)?;
    let jitter_samples = ctx.resolve(args.jitter_samples, "jitter_samples", 0)?;
    let jitter_amp = ctx.resolve(args.jitter_amp, "jitter_amp", 0.3)?;
    let jitter_tau = ctx.resolve(args.jitter_tau, "jitter_tau", 1.0)?;

    let gate = two_qubit_gate(phi, l, tau)?;
    let mut report = RunReport::new(serde_json::json!({
        "phi": phi,
        "l": l,
        "tau": tau,
        "seed": ctx.seed,
        "jitter_samples": jitter_samples,
    }));
    report.push(Verdict::at_least(
        "control-up fidelity against the conditional phase",
        gate.control_up.fidelity,
        FIDELITY_FLOOR,
    ));
    report.push(Verdict::at_most(
        "control-down branch stays idle",
        gate.control_down_distance,
        GAP_DISTANCE_BOUND,
    ));

    let family = two_qubit_family(phi, l, tau)?;
    let q = code_projector_control(true);
    let gapped = q.adjoint() * family.integrate_with_gaps(3.0 * tau) * &q;
    let plain = q.adjoint() * family.integrate() * &q;
    report.push(Verdict::at_most(
        "idle gaps leave the gate unchanged",
        phase_stripped_distance(&gapped, &plain),
        GAP_DISTANCE_BOUND,
    ));

    let mut summary = serde_json::json!({
        "control_up": gate_json(&gate.control_up),
        "control_down_distance": gate.control_down_distance,
        "target": "exp(i 2 pi sin(phi) sigma_z) on the control-up branch",
        "schedule": { "l": l, "tau": tau, "total_time": l as f64 * tau },
    });

    if let Some(levels) = args.l_sweep.as_deref().map(parse_levels).transpose()? {
        let mut rows = Vec::with_capacity(levels.len());
        for &steps in &levels {
            let g = two_qubit_gate(phi, steps, tau)?;
            rows.push(format!(
                "{},{},{},{}",
                steps,
                format_float(g.control_up.fidelity),
                format_float(g.control_down_distance),
                format_float(g.control_up.leakage_amplitude)
            ));
        }
        ctx.write_text(
            "two_qubit_sweep.csv",
            &csv_document("l,fidelity,control_down_distance,leakage_amplitude", &rows),
        )?;
        summary["l_sweep"] = serde_json::json!(levels);
    }

    if jitter_samples > 0 {
        let jitter = two_qubit_jitter(phi, l, jitter_tau, jitter_amp, jitter_samples, ctx.seed)?;
        report.push(Verdict::at_most(
            "randomized schedules shift the fidelity",
            jitter.worst_fidelity_shift,
            JITTER_SHIFT_BOUND,
        ));
        summary["jitter"] = serde_json::to_value(jitter)?;
    }

    ctx.write_report("two_qubit.json", &report, summary)?;
    Ok(report)
}
