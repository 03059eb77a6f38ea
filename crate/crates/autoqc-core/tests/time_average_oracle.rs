//! Independent oracles for the infinite-time averages: a long trapezoid
//! window for the expectation and the exact diagonal ensemble of the dense
//! configuration graph for the second moment and readout probability.

use autoqc_core::configspace::ConfigSpace;
use autoqc_core::fermion_walk::{readout_bound, FermionWalk};
use autoqc_core::linalg::{self, RVector};
use autoqc_core::Exec;

#[test]
fn long_window_average_approaches_the_closed_form() {
    let walk = FermionWalk::new(8).unwrap();
    let points = 200_001;
    let t_max = 1e4;
    let ts: Vec<f64> = (0..points)
        .map(|i| t_max * i as f64 / (points - 1) as f64)
        .collect();
    let sweep = walk.sweep(&ts, Exec::default());
    let mut acc = 0.0;
    for pair in sweep.windows(2) {
        acc += 0.5 * (pair[0].expected + pair[1].expected);
    }
    let window_average = acc / (points - 1) as f64;
    let closed = walk.time_averages(Exec::default());
    assert!(
        (window_average - closed.expected).abs() <= 1e-2,
        "window {window_average} vs closed form {}",
        closed.expected
    );
}

/// Diagonal-ensemble averages of diagonal observables on the move graph,
/// with eigenspaces grouped at a fixed gap tolerance.
fn diagonal_ensemble_averages(space: &ConfigSpace, k: usize) -> (f64, f64, f64) {
    let dim = space.dimension();
    let (vals, vecs) = linalg::eigh(&space.moves().to_dense());
    let start = space.initial_index();
    let count: Vec<f64> = space.words().iter().map(|w| w.progress() as f64).collect();
    let below: Vec<f64> = count.iter().map(|&n| if n < k as f64 { 1.0 } else { 0.0 }).collect();
    let mut mean = 0.0;
    let mut second = 0.0;
    let mut readout = 0.0;
    let mut lo = 0;
    while lo < dim {
        let mut hi = lo + 1;
        while hi < dim && vals[hi] - vals[hi - 1] <= 1e-9 {
            hi += 1;
        }
        let mut projected = RVector::zeros(dim);
        for r in lo..hi {
            let coeff = vecs[(start, r)];
            for w in 0..dim {
                projected[w] += coeff * vecs[(w, r)];
            }
        }
        for w in 0..dim {
            let p = projected[w] * projected[w];
            mean += count[w] * p;
            second += count[w] * count[w] * p;
            readout += below[w] * p;
        }
        lo = hi;
    }
    (mean, second, readout)
}

#[test]
fn diagonal_ensemble_reproduces_the_closed_form_moments() {
    let space = ConfigSpace::new(4).unwrap();
    let (mean, second, readout) = diagonal_ensemble_averages(&space, 1);
    let closed = FermionWalk::new(4).unwrap().time_averages(Exec::default());
    assert!((mean - 2.0).abs() <= 1e-9, "diagonal-ensemble mean {mean}");
    assert!((mean - closed.expected).abs() <= 1e-9);
    let closed_second = closed.variance + closed.expected * closed.expected;
    assert!(
        (second - closed_second).abs() <= 1e-8,
        "second moment {second} vs {closed_second}"
    );
    assert!((readout - 0.06766547).abs() <= 1e-6, "readout probability {readout}");
    let bound = readout_bound(closed.expected, closed.variance, 1);
    assert!(readout <= bound, "true probability {readout} above bound {bound}");
}

#[test]
fn class_gaps_stay_clear_of_the_grouping_tolerance() {
    for m in [4usize, 8, 16] {
        let closed = FermionWalk::new(m).unwrap().time_averages(Exec::default());
        assert!(closed.min_class_gap > 1e-8, "m={m} gap {}", closed.min_class_gap);
    }
}
