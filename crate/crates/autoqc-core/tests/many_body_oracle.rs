//! Dense many-body evolution as an independent oracle for the
//! single-particle walk formulas.
//!
//! The oracle never touches the walk module's internals: it exponentiates
//! the full swap Hamiltonian (or the move-graph adjacency) and reads site
//! statistics straight off the evolved state vector.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use autoqc_core::configspace::{ConfigSpace, ExactEvolver};
use autoqc_core::fermion_walk::FermionWalk;
use autoqc_core::hamiltonian::build_hs;
use autoqc_core::linalg::{complexify, expmh};

/// Basis index of the start word, with word bit 0 stored most significant.
fn start_index(m: usize) -> usize {
    (1usize << m) - 1
}

/// Occupation probabilities of every spin configuration at time `t`.
fn swap_chain_probabilities(m: usize, t: f64) -> Vec<f64> {
    let hs = build_hs(m).unwrap();
    let u = expmh(&complexify(&hs), t);
    let dim = 1usize << (2 * m);
    (0..dim).map(|idx| u[(idx, start_index(m))].norm_sqr()).collect()
}

fn site_is_one(idx: usize, m: usize, j: usize) -> bool {
    (idx >> (2 * m - 1 - j)) & 1 == 1
}

#[test]
fn site_and_pair_statistics_match_the_free_particle_formulas() {
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    for m in 1..=3 {
        let walk = FermionWalk::new(m).unwrap();
        let sites = 2 * m;
        for _ in 0..20 {
            let t: f64 = rng.random_range(0.0..20.0);
            let p = swap_chain_probabilities(m, t);
            let moments = walk.projector_moments(t);
            for j in 0..sites {
                let oracle: f64 = p
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| site_is_one(*idx, m, j))
                    .map(|(_, &w)| w)
                    .sum();
                assert!(
                    (oracle - moments.singles[j]).abs() <= 1e-9,
                    "m={m} t={t} site {j}: {oracle} vs {}",
                    moments.singles[j]
                );
            }
            for i in 0..sites {
                for j in 0..sites {
                    if i == j {
                        continue;
                    }
                    let oracle: f64 = p
                        .iter()
                        .enumerate()
                        .filter(|(idx, _)| {
                            site_is_one(*idx, m, i) && site_is_one(*idx, m, j)
                        })
                        .map(|(_, &w)| w)
                        .sum();
                    assert!(
                        (oracle - moments.pairs[(i, j)]).abs() <= 1e-9,
                        "m={m} t={t} pair ({i},{j}): {oracle} vs {}",
                        moments.pairs[(i, j)]
                    );
                }
            }
        }
    }
}

#[test]
fn count_moments_on_the_configuration_graph_match_the_walk() {
    let space = ConfigSpace::new(4).unwrap();
    let evolver = ExactEvolver::new(&space).unwrap();
    let walk = FermionWalk::new(4).unwrap();
    for &t in &[0.3, 1.0, 2.5, 4.0, 7.7] {
        let amps = evolver.amplitudes(t);
        let mut e = 0.0;
        let mut e2 = 0.0;
        for (w, a) in space.words().iter().zip(&amps) {
            let n = w.progress() as f64;
            let p = a.norm_sqr();
            e += n * p;
            e2 += n * n * p;
        }
        let point = walk.observables(t);
        assert!((e - point.expected).abs() <= 1e-9, "t={t}: {e} vs {}", point.expected);
        let variance = e2 - e * e;
        assert!(
            (variance - point.variance).abs() <= 1e-9,
            "t={t}: {variance} vs {}",
            point.variance
        );
    }
}

#[test]
fn polynomial_expansion_agrees_with_dense_diagonalization() {
    let space = ConfigSpace::new(4).unwrap();
    let evolver = ExactEvolver::new(&space).unwrap();
    for &t in &[0.5, 3.0, 9.0] {
        let fast = space.evolve_from_initial(t);
        let exact = evolver.amplitudes(t);
        let worst = fast
            .iter()
            .zip(&exact)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0_f64, f64::max);
        assert!(worst <= 1e-9, "t={t}: worst amplitude gap {worst}");
    }
}

#[test]
fn escape_probability_at_the_passing_time_is_pinned() {
    let space = ConfigSpace::new(4).unwrap();
    let evolver = ExactEvolver::new(&space).unwrap();
    let walk = FermionWalk::new(4).unwrap();
    let passing = walk.passing_time(1).unwrap();
    let amps = evolver.amplitudes(passing.t_star);
    let p = space.region_escape_probability(&amps, 1);
    assert!((p - 0.9893830335).abs() <= 1e-6, "escape probability {p}");
    assert!(p >= 0.5);
}
