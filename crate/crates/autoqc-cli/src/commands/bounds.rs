//! Perturbation-bound checks on the full synchronization Hamiltonian.

use clap::Args;

use autoqc_core::perturbation::{
    low_band_check, propagator_check, self_energy_derivative_consistency, self_energy_scan,
};
use autoqc_core::report::{format_float, RunReport, Verdict};
use autoqc_core::{Error, LatticeSpec, Result};

use crate::context::{csv_document, RunContext};

const DERIVATIVE_TOLERANCE: f64 = 0.1;
const SWEEP_SLOPE_CEILING: f64 = -0.4;

fn parse_energies(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<f64>().map_err(|_| {
                Error::InvalidParameter(format!("energy list entry '{part}' is not a number"))
            })
        })
        .collect()
}

/// Least-squares slope of `log lhs` against `log E`.
fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(e, lhs) in points {
        let (x, y) = (e.ln(), lhs.ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[derive(Args)]
pub struct Lemma1Args {
    /// Lattice side length.
    #[arg(long)]
    n: Option<usize>,
    /// Potential strength.
    #[arg(long)]
    e: Option<f64>,
    /// Comma-separated potential strengths for a scaling sweep.
    #[arg(long)]
    e_sweep: Option<String>,
}

pub fn lemma1(ctx: &RunContext, args: Lemma1Args) -> Result<RunReport> {
    let n = ctx.resolve(args.n, "n", 3)?;
    let e = ctx.resolve(args.e, "e", 1e5)?;
    let spec = LatticeSpec::new(n, n - 1)?;
    let energies = match args.e_sweep.as_deref() {
        Some(text) => parse_energies(text)?,
        None => vec![e],
    };
    let mut report = RunReport::new(serde_json::json!({ "n": n, "e": energies }));
    let mut rows = Vec::with_capacity(energies.len());
    let mut fits = Vec::with_capacity(energies.len());
    let mut deviations = Vec::with_capacity(energies.len());
    for &energy in &energies {
        let low = low_band_check(&spec, energy)?;
        report.push(Verdict::at_most(
            &format!("low-band deviation at E = {energy:e}"),
            low.deviation,
            low.bound,
        ));
        rows.push(format!(
            "{},{},{},{},{}",
            n,
            format_float(energy),
            format_float(low.deviation),
            format_float(low.bound),
            format_float(low.deviation - low.bound)
        ));
        fits.push((energy, low.deviation));
        deviations.push(serde_json::json!({
            "e": energy,
            "deviation": low.deviation,
            "bound": low.bound,
        }));
    }
    ctx.write_text("lemma1.csv", &csv_document("n,E,lhs,rhs,margin", &rows))?;
    let mut summary = serde_json::json!({ "n": n, "points": deviations });
    if fits.len() >= 2 {
        let slope = log_log_slope(&fits);
        report.push(Verdict::at_most(
            "deviation decays with the potential strength",
            slope,
            SWEEP_SLOPE_CEILING,
        ));
        summary["slope"] = serde_json::json!(slope);
    }
    ctx.write_report("lemma1.json", &report, summary)?;
    Ok(report)
}

#[derive(Args)]
pub struct Theorem1Args {
    /// Lattice side length.
    #[arg(long)]
    n: Option<usize>,
    /// Potential strength.
    #[arg(long)]
    e: Option<f64>,
    /// Comma-separated potential strengths for a scaling sweep.
    #[arg(long)]
    e_sweep: Option<String>,
    /// End of the checked time window.
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of grid points across the window.
    #[arg(long)]
    points: Option<usize>,
}

pub fn theorem1(ctx: &RunContext, args: Theorem1Args) -> Result<RunReport> {
    let n = ctx.resolve(args.n, "n", 3)?;
    let e = ctx.resolve(args.e, "e", 1e4)?;
    let t_max = ctx.resolve(args.t_max, "t_max", 10.0)?;
    let points = ctx.resolve(args.points, "points", 32)?;
    let spec = LatticeSpec::new(n, n - 1)?;
    let energies = match args.e_sweep.as_deref() {
        Some(text) => parse_energies(text)?,
        None => vec![e],
    };
    let mut report = RunReport::new(serde_json::json!({
        "n": n,
        "e": energies,
        "t_max": t_max,
        "points": points,
    }));
    let mut rows = Vec::with_capacity(energies.len());
    let mut blocks = Vec::with_capacity(energies.len());
    for &energy in &energies {
        let prop = propagator_check(&spec, energy, t_max, points)?;
        report.push(Verdict::at_most(
            &format!("propagator deviation under the bound at E = {energy:e}"),
            prop.max_margin,
            0.0,
        ));
        rows.push(format!(
            "{},{},{},{},{}",
            n,
            format_float(energy),
            format_float(prop.max_lhs),
            format_float(prop.epsilon * t_max + prop.offset),
            format_float(prop.max_margin)
        ));
        blocks.push(serde_json::json!({
            "e": energy,
            "max_lhs": prop.max_lhs,
            "max_margin": prop.max_margin,
            "epsilon": prop.epsilon,
            "offset": prop.offset,
        }));
    }
    ctx.write_text("theorem1.csv", &csv_document("n,E,lhs,rhs,margin", &rows))?;
    let summary = serde_json::json!({ "n": n, "t_max": t_max, "points": blocks });
    ctx.write_report("theorem1.json", &report, summary)?;
    Ok(report)
}

#[derive(Args)]
pub struct SelfEnergyArgs {
    /// Lattice side length.
    #[arg(long)]
    n: Option<usize>,
    /// Potential strength.
    #[arg(long)]
    e: Option<f64>,
}

pub fn self_energy(ctx: &RunContext, args: SelfEnergyArgs) -> Result<RunReport> {
    let n = ctx.resolve(args.n, "n", 3)?;
    let e = ctx.resolve(args.e, "e", 1e5)?;
    let spec = LatticeSpec::new(n, n - 1)?;
    let points = self_energy_scan(&spec, e)?;
    let mut report = RunReport::new(serde_json::json!({ "n": n, "e": e }));
    let worst = points
        .iter()
        .map(|p| p.deviation)
        .fold(f64::NEG_INFINITY, f64::max);
    report.push(Verdict::at_most(
        "self-energy correction across the sampled band",
        worst,
        points[0].bound,
    ));
    let derivative = self_energy_derivative_consistency(&spec, e)?;
    report.push(Verdict::at_most(
        "self-energy derivative is resolution independent",
        derivative,
        DERIVATIVE_TOLERANCE,
    ));
    let rows: Vec<String> = points
        .iter()
        .map(|p| {
            format!(
                "{},{},{},{},{}",
                n,
                format_float(e),
                format_float(p.deviation),
                format_float(p.bound),
                format_float(p.deviation - p.bound)
            )
        })
        .collect();
    ctx.write_text("self_energy.csv", &csv_document("n,E,lhs,rhs,margin", &rows))?;
    let z_points: Vec<serde_json::Value> = points
        .iter()
        .map(|p| {
            serde_json::json!({
                "z": p.z,
                "deviation": p.deviation,
                "series_norm": p.series_norm,
            })
        })
        .collect();
    let summary = serde_json::json!({
        "n": n,
        "e": e,
        "bound": points[0].bound,
        "derivative_consistency": derivative,
        "z_points": z_points,
    });
    ctx.write_report("self_energy.json", &report, summary)?;
    Ok(report)
}
