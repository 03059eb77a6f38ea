//! Configuration-space enumeration and chain-walk sweeps.

use clap::Args;

use autoqc_core::configspace::{binomial, chain_positions_are_valid, ConfigSpace, ExactEvolver};
use autoqc_core::fermion_walk::{default_time_grid, readout_bound, FermionWalk};
use autoqc_core::report::{format_float, RunReport, Verdict};
use autoqc_core::{Exec, Result};

use crate::context::{csv_document, RunContext};

/// Exact escape probabilities stay affordable up to this chain length.
const EXACT_PROB_LIMIT: usize = 6;

#[derive(Args)]
pub struct ConfigspaceArgs {
    /// Lattice side length.
    #[arg(long)]
    n: Option<usize>,
    /// Print one configuration word per line and nothing else.
    #[arg(long)]
    dump: bool,
}

pub fn configspace(ctx: &RunContext, args: ConfigspaceArgs) -> Result<RunReport> {
    let n = ctx.resolve(args.n, "n", 3)?;
    let space = ConfigSpace::for_lattice(n)?;
    if args.dump {
        let mut lines = String::new();
        for word in space.words() {
            lines.push_str(&word.to_string());
            lines.push('\n');
        }
        print!("{lines}");
        return Ok(RunReport::new(serde_json::json!({ "n": n, "dump": true })));
    }
    let m = space.half_length();
    let mut report = RunReport::new(serde_json::json!({ "n": n }));
    let expected = binomial(2 * m as u64, m as u64) as f64;
    report.push(Verdict::new(
        "enumeration count matches the closed form",
        space.dimension() as f64 == expected,
        space.dimension() as f64,
        expected,
    ));
    let invalid = space
        .words()
        .iter()
        .filter(|w| !chain_positions_are_valid(n, &w.decode_x()))
        .count();
    report.push(Verdict::at_most(
        "every word decodes to a connected chain",
        invalid as f64,
        0.0,
    ));
    let reachable = reachable_from_initial(&space);
    report.push(Verdict::new(
        "move graph is connected",
        reachable == space.dimension(),
        reachable as f64,
        space.dimension() as f64,
    ));
    let summary = serde_json::json!({
        "n": n,
        "m": m,
        "dimension": space.dimension(),
        "moves": space.moves().nnz() / 2,
        "initial_index": space.initial_index(),
        "completed_index": space.completed_index(),
    });
    ctx.write_report("configspace.json", &report, summary)?;
    Ok(report)
}

fn reachable_from_initial(space: &ConfigSpace) -> usize {
    let mut seen = vec![false; space.dimension()];
    let mut stack = vec![space.initial_index()];
    seen[space.initial_index()] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in space.moves().neighbors(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w as usize);
            }
        }
    }
    count
}

#[derive(Args)]
pub struct WalkArgs {
    /// Chain half-length (number of moving bonds).
    #[arg(long)]
    m: Option<usize>,
    /// Readout region half-width.
    #[arg(long)]
    k: Option<usize>,
}

pub fn walk(ctx: &RunContext, args: WalkArgs) -> Result<RunReport> {
    let m = ctx.resolve(args.m, "m", 16)?;
    let k = ctx.resolve(args.k, "k", m / 4)?;
    let walk = FermionWalk::new(m)?;
    let passing = walk.passing_time(k)?;
    let grid = default_time_grid(m);
    let points = walk.sweep(&grid, Exec::default());
    let exact = if m <= EXACT_PROB_LIMIT {
        let space = ConfigSpace::new(m)?;
        let evolver = ExactEvolver::new(&space)?;
        let probs: Vec<f64> = grid
            .iter()
            .map(|&t| space.region_escape_probability(&evolver.amplitudes(t), k))
            .collect();
        let at_star = space.region_escape_probability(&evolver.amplitudes(passing.t_star), k);
        Some((probs, at_star))
    } else {
        None
    };
    let rows: Vec<String> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let bound = readout_bound(p.expected, p.variance, k);
            let exact_cell = exact
                .as_ref()
                .map(|(probs, _)| format_float(probs[i]))
                .unwrap_or_default();
            format!(
                "{},{},{},{},{}",
                format_float(p.t),
                format_float(p.expected),
                format_float(p.variance),
                format_float(bound),
                exact_cell
            )
        })
        .collect();
    ctx.write_text(
        "walk.csv",
        &csv_document("t,E,V,cheb_bound,exact_prob", &rows),
    )?;

    let mut report = RunReport::new(serde_json::json!({ "m": m, "k": k }));
    report.push(Verdict::at_most(
        "passing time within the linear window",
        passing.t_star,
        8.0 * k as f64,
    ));
    report.push(Verdict::at_most(
        "concentration bound at the passing time",
        passing.cheb_bound,
        12.0 / k as f64,
    ));
    if let Some((_, at_star)) = exact {
        let floor = (1.0 - 12.0 / k as f64).max(0.0);
        report.push(Verdict::at_least(
            "exact escape probability at the passing time",
            at_star,
            floor,
        ));
    }
    let summary = serde_json::json!({
        "m": m,
        "k": k,
        "t_star": passing.t_star,
        "expected_at_t_star": passing.expected,
        "variance_at_t_star": passing.variance,
        "cheb_bound": passing.cheb_bound,
        "grid_points": grid.len(),
    });
    ctx.write_report("walk.json", &report, summary)?;
    Ok(report)
}

#[derive(Args)]
pub struct TimeavgArgs {
    /// Chain half-length (number of moving bonds).
    #[arg(long)]
    m: Option<usize>,
    /// Readout region half-width.
    #[arg(long)]
    k: Option<usize>,
}

pub fn timeavg(ctx: &RunContext, args: TimeavgArgs) -> Result<RunReport> {
    let m = ctx.resolve(args.m, "m", 16)?;
    let k = ctx.resolve(args.k, "k", m / 4)?;
    let averages = FermionWalk::new(m)?.time_averages(Exec::default());
    let bound = readout_bound(averages.expected, averages.variance, k);
    let mut report = RunReport::new(serde_json::json!({ "m": m, "k": k }));
    report.push(Verdict::at_most(
        "time-averaged count sits at half the chain",
        (averages.expected - m as f64 / 2.0).abs(),
        1e-9,
    ));
    report.push(Verdict::at_least(
        "eigenvalue classes stay separated",
        averages.min_class_gap,
        1e-8,
    ));
    report.push(Verdict::at_most("readout bound is nontrivial", bound, 1.0));
    let summary = serde_json::json!({
        "m": m,
        "k": k,
        "expected": averages.expected,
        "variance": averages.variance,
        "min_class_gap": averages.min_class_gap,
        "classes": averages.classes,
        "readout_bound": bound,
    });
    ctx.write_report("timeavg.json", &report, summary)?;
    Ok(report)
}

#[derive(Args)]
pub struct PassingTimeArgs {
    /// Chain half-length (number of moving bonds).
    #[arg(long)]
    m: Option<usize>,
    /// Readout region half-width.
    #[arg(long)]
    k: Option<usize>,
}

pub fn passing_time(ctx: &RunContext, args: PassingTimeArgs) -> Result<RunReport> {
    let m = ctx.resolve(args.m, "m", 64)?;
    let k = ctx.resolve(args.k, "k", m / 4)?;
    let passing = FermionWalk::new(m)?.passing_time(k)?;
    let mut report = RunReport::new(serde_json::json!({ "m": m, "k": k }));
    report.push(Verdict::at_most(
        "passing time within the linear window",
        passing.t_star,
        8.0 * k as f64,
    ));
    report.push(Verdict::at_most(
        "concentration bound at the passing time",
        passing.cheb_bound,
        12.0 / k as f64,
    ));
    let summary = serde_json::json!({
        "m": m,
        "k": k,
        "t_star": passing.t_star,
        "expected": passing.expected,
        "variance": passing.variance,
        "cheb_bound": passing.cheb_bound,
    });
    ctx.write_report("passing_time.json", &report, summary)?;
    Ok(report)
}
