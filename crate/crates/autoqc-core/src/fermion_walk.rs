//! Free-fermion solution of the chain walk.
//!
//! Adjacent transpositions on balanced words are the hopping moves of `m`
//! hard-core particles on a path of `2m` sites, so every progress observable
//! of the chain reduces to the single-particle spectrum of the path graph.
//! This module computes the propagator, the expectation and variance of the
//! number of particles that crossed into the front half, Chebyshev-style
//! readout bounds, passing times, and infinite-time averages.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, RMatrix, RVector};
use crate::parallel::{self, Exec};

/// Eigenvalue tolerance below which two level sums count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Single-particle spectrum of the path graph on `2m` sites, eigenvalues
/// sorted in descending order.
#[derive(Debug, Clone)]
pub struct PathSpectrum {
    m: usize,
    vals: RVector,
    vecs: RMatrix,
}

impl PathSpectrum {
    pub fn new(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter(
                "chain half-length must be at least 1".into(),
            ));
        }
        let sites = 2 * m;
        let mut adj = RMatrix::zeros(sites, sites);
        for j in 0..sites - 1 {
            adj[(j, j + 1)] = 1.0;
            adj[(j + 1, j)] = 1.0;
        }
        let (vals_asc, vecs_asc) = linalg::eigh(&adj);
        let mut vals = RVector::zeros(sites);
        let mut vecs = RMatrix::zeros(sites, sites);
        for c in 0..sites {
            vals[c] = vals_asc[sites - 1 - c];
            vecs.set_column(c, &vecs_asc.column(sites - 1 - c));
        }
        Ok(PathSpectrum { m, vals, vecs })
    }

    pub fn half_sites(&self) -> usize {
        self.m
    }

    pub fn sites(&self) -> usize {
        2 * self.m
    }

    pub fn eigenvalues(&self) -> &RVector {
        &self.vals
    }

    pub fn eigenvectors(&self) -> &RMatrix {
        &self.vecs
    }

    /// Closed-form level `2 cos(r pi / (2m + 1))` for `r = 1..=2m`.
    pub fn analytic_eigenvalue(m: usize, r: usize) -> f64 {
        2.0 * (r as f64 * std::f64::consts::PI / (2 * m + 1) as f64).cos()
    }

    /// Full single-particle propagator `exp(-i A t)`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        linalg::expmh_from_eigh(&self.vals, &self.vecs, t)
    }
}

/// Upper bound on the many-body spectral radius of the move graph: the sum
/// of the `m` largest path levels, padded for roundoff.
pub fn spectral_radius_bound(m: usize) -> f64 {
    let sum: f64 = (1..=m)
        .map(|r| PathSpectrum::analytic_eigenvalue(m, r))
        .sum();
    1.0001 * sum + 1e-9
}

/// Expectation and variance of the front-half particle count at one time.
#[derive(Debug, Clone, Copy)]
pub struct WalkPoint {
    pub t: f64,
    pub expected: f64,
    pub variance: f64,
}

/// Occupation expectations of every site and every site pair.
#[derive(Debug, Clone)]
pub struct ProjectorMoments {
    /// `<P_j>` for each of the `2m` sites.
    pub singles: Vec<f64>,
    /// `<P_i P_j>`; the diagonal repeats `singles`.
    pub pairs: RMatrix,
}

/// Passing time of the front-half count through a threshold, with the
/// Chebyshev readout bound evaluated there.
#[derive(Debug, Clone, Copy)]
pub struct PassingTime {
    pub t_star: f64,
    pub expected: f64,
    pub variance: f64,
    pub cheb_bound: f64,
}

/// Infinite-time averages of the front-half count.
#[derive(Debug, Clone, Copy)]
pub struct TimeAverage {
    pub expected: f64,
    pub variance: f64,
    pub min_class_gap: f64,
    pub classes: usize,
}

/// Chebyshev bound on the probability that the count sits below `k`.
pub fn readout_bound(expected: f64, variance: f64, k: usize) -> f64 {
    let gap = expected - k as f64;
    if gap <= 0.0 {
        f64::INFINITY
    } else {
        variance / (gap * gap)
    }
}

/// Default observation grid: a geometric ramp through the transient followed
/// by a linear sweep out to `t = 8 m`.
pub fn default_time_grid(m: usize) -> Vec<f64> {
    let tmax = 8.0 * m as f64;
    let mut pts = Vec::with_capacity(512);
    pts.push(0.0);
    let a = 0.01;
    let b = 0.1 * tmax;
    for i in 0..255 {
        pts.push(a * (b / a).powf(i as f64 / 254.0));
    }
    for i in 0..256 {
        pts.push(0.1 * tmax + 0.9 * tmax * (i + 1) as f64 / 256.0);
    }
    pts
}

/// The chain walk in its free-fermion form.
#[derive(Debug, Clone)]
pub struct FermionWalk {
    spectrum: PathSpectrum,
}

impl FermionWalk {
    pub fn new(m: usize) -> Result<Self> {
        Ok(FermionWalk { spectrum: PathSpectrum::new(m)? })
    }

    pub fn half_length(&self) -> usize {
        self.spectrum.m
    }

    pub fn spectrum(&self) -> &PathSpectrum {
        &self.spectrum
    }

    /// Rows `0..rows` of the propagator block onto the initially occupied
    /// back-half modes.
    fn occupied_block(&self, t: f64, rows: usize) -> CMatrix {
        let m = self.spectrum.m;
        let sites = 2 * m;
        let vecs = &self.spectrum.vecs;
        let phases: Vec<Complex64> = (0..sites)
            .map(|r| Complex64::from_polar(1.0, -self.spectrum.vals[r] * t))
            .collect();
        let mut c = CMatrix::zeros(rows, m);
        for j in 0..rows {
            for l in 0..m {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..sites {
                    acc += phases[r] * (vecs[(j, r)] * vecs[(l, r)]);
                }
                c[(j, l)] = acc;
            }
        }
        c
    }

    /// Expected front-half count alone; the cheap path for bisection.
    pub fn expected_progress(&self, t: f64) -> f64 {
        let m = self.spectrum.m;
        let c = self.occupied_block(t, m);
        let mut stay = 0.0;
        for j in 0..m {
            for l in 0..m {
                stay += c[(j, l)].norm_sqr();
            }
        }
        m as f64 - stay
    }

    /// Expectation and variance of the front-half count.
    pub fn observables(&self, t: f64) -> WalkPoint {
        let m = self.spectrum.m;
        let c = self.occupied_block(t, m);
        let mut g = CMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in 0..m {
                    acc += c[(i, l)] * c[(j, l)].conj();
                }
                g[(i, j)] = acc;
            }
        }
        let mut expected = 0.0;
        let mut sum_sq = 0.0;
        let mut frob = 0.0;
        let mut diag_sq = 0.0;
        for i in 0..m {
            let a = 1.0 - g[(i, i)].re;
            expected += a;
            sum_sq += a * a;
            diag_sq += g[(i, i)].re * g[(i, i)].re;
            for j in 0..m {
                frob += g[(i, j)].norm_sqr();
            }
        }
        let variance = expected - sum_sq - (frob - diag_sq);
        WalkPoint { t, expected, variance }
    }

    /// Site and pair occupation expectations over all `2m` sites.
    pub fn projector_moments(&self, t: f64) -> ProjectorMoments {
        let m = self.spectrum.m;
        let sites = 2 * m;
        let c = self.occupied_block(t, sites);
        let mut g = CMatrix::zeros(sites, sites);
        for i in 0..sites {
            for j in 0..sites {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in 0..m {
                    acc += c[(i, l)] * c[(j, l)].conj();
                }
                g[(i, j)] = acc;
            }
        }
        let singles: Vec<f64> = (0..sites).map(|j| 1.0 - g[(j, j)].re).collect();
        let pairs = RMatrix::from_fn(sites, sites, |i, j| {
            if i == j {
                singles[i]
            } else {
                singles[i] * singles[j] - g[(i, j)].norm_sqr()
            }
        });
        ProjectorMoments { singles, pairs }
    }

    /// Observables over a whole grid, optionally in parallel.
    pub fn sweep(&self, ts: &[f64], exec: Exec) -> Vec<WalkPoint> {
        parallel::map_slice(exec, ts, |&t| self.observables(t))
    }

    /// First time the expected count reaches `4k/3`, refined by bisection.
    pub fn passing_time(&self, k: usize) -> Result<PassingTime> {
        let m = self.spectrum.m;
        if k < 1 {
            return Err(Error::InvalidParameter(
                "readout threshold must be at least 1".into(),
            ));
        }
        let target = 4.0 * k as f64 / 3.0;
        if target >= m as f64 {
            return Err(Error::InvalidParameter(format!(
                "threshold {k} needs expectation {target:.3} which a chain of half-length {m} cannot reach"
            )));
        }
        let grid = default_time_grid(m);
        let mut prev_t = 0.0;
        let mut hit = None;
        for &t in &grid {
            if self.expected_progress(t) >= target {
                hit = Some((prev_t, t));
                break;
            }
            prev_t = t;
        }
        let (mut lo, mut hi) = hit.ok_or(Error::GridTooShort {
            target,
            t_max: 8.0 * m as f64,
        })?;
        for _ in 0..200 {
            if hi - lo < 1e-12 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.expected_progress(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let point = self.observables(hi);
        Ok(PassingTime {
            t_star: hi,
            expected: point.expected,
            variance: point.variance,
            cheb_bound: readout_bound(point.expected, point.variance, k),
        })
    }

    /// Infinite-time average and variance of the front-half count in the
    /// diagonal ensemble of the initial state.
    pub fn time_averages(&self, exec: Exec) -> TimeAverage {
        let m = self.spectrum.m;
        let sites = 2 * m;
        let vecs = &self.spectrum.vecs;
        let vals = &self.spectrum.vals;

        // Overlap matrices of the front and back halves of the path.
        let mut d = RMatrix::zeros(sites, sites);
        for r in 0..sites {
            for p in 0..sites {
                let mut acc = 0.0;
                for i in 0..m {
                    acc += vecs[(i, r)] * vecs[(i, p)];
                }
                d[(r, p)] = acc;
            }
        }
        let b = RMatrix::from_fn(sites, sites, |r, p| {
            (if r == p { 1.0 } else { 0.0 }) - d[(r, p)]
        });

        let mut e_avg = 0.0;
        for r in 0..sites {
            e_avg += d[(r, r)] * b[(r, r)];
        }

        // Group ordered level pairs into equal-sum classes.
        let mut pairs: Vec<(f64, u32, u32)> = Vec::with_capacity(sites * sites);
        for r in 0..sites {
            for p in 0..sites {
                pairs.push((vals[r] + vals[p], r as u32, p as u32));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut classes: Vec<Vec<(u32, u32)>> = Vec::new();
        let mut min_gap = f64::INFINITY;
        for (idx, &(sum, r, p)) in pairs.iter().enumerate() {
            let gap = if idx == 0 {
                f64::INFINITY
            } else {
                sum - pairs[idx - 1].0
            };
            if idx == 0 || gap > DEGENERACY_TOL {
                if idx > 0 {
                    min_gap = min_gap.min(gap);
                }
                classes.push(Vec::new());
            }
            classes.last_mut().unwrap().push((r, p));
        }

        let partials = parallel::map_slice(exec, &classes, |members| {
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            let mut diag_a = 0.0;
            let mut diag_c = 0.0;
            for &(ra, pa) in members {
                let (ra, pa) = (ra as usize, pa as usize);
                for &(rb, pb) in members {
                    let (rb, pb) = (rb as usize, pb as usize);
                    s1 += b[(ra, rb)] * b[(pa, pb)] * d[(ra, rb)] * d[(pa, pb)];
                    s2 += d[(ra, rb)] * d[(pb, pa)] * d[(ra, pb)] * d[(rb, pa)];
                    for i in 0..m {
                        diag_a += vecs[(i, ra)]
                            * vecs[(i, pa)]
                            * b[(ra, rb)]
                            * b[(pa, pb)]
                            * vecs[(i, rb)]
                            * vecs[(i, pb)];
                        diag_c += vecs[(i, ra)]
                            * d[(ra, rb)]
                            * vecs[(i, rb)]
                            * vecs[(i, pb)]
                            * d[(pb, pa)]
                            * vecs[(i, pa)];
                    }
                }
            }
            (s1, s2, diag_a, diag_c)
        });
        let mut s1 = 0.0;
        let mut s2 = 0.0;
        let mut diag_a = 0.0;
        let mut diag_c = 0.0;
        for (a, b2, c, d2) in partials {
            s1 += a;
            s2 += b2;
            diag_a += c;
            diag_c += d2;
        }
        let avg_sq = (s1 - diag_a) - (s2 - diag_c) + e_avg;
        TimeAverage {
            expected: e_avg,
            variance: avg_sq - e_avg * e_avg,
            min_class_gap: min_gap,
            classes: classes.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_descend_and_match_the_closed_form() {
        for m in 1..=8 {
            let spectrum = PathSpectrum::new(m).unwrap();
            let vals = spectrum.eigenvalues();
            for r in 1..=2 * m {
                let exact = PathSpectrum::analytic_eigenvalue(m, r);
                assert!((vals[r - 1] - exact).abs() <= 1e-10);
                if r > 1 {
                    assert!(vals[r - 1] < vals[r - 2]);
                }
            }
        }
    }

    #[test]
    fn two_site_transfer_amplitude_is_a_sine() {
        let spectrum = PathSpectrum::new(1).unwrap();
        for &t in &[0.0, 0.3, 1.1, 2.5] {
            let u = spectrum.propagator(t);
            assert!((u[(0, 1)].norm() - t.sin().abs()).abs() <= 1e-12);
        }
    }

    #[test]
    fn propagator_is_unitary_and_symmetric() {
        let spectrum = PathSpectrum::new(4).unwrap();
        for &t in &[0.4, 1.7] {
            let u = spectrum.propagator(t);
            let gram = &u * u.adjoint();
            for i in 0..8 {
                for j in 0..8 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((gram[(i, j)] - Complex64::new(expect, 0.0)).norm() <= 1e-10);
                    assert!((u[(i, j)] - u[(j, i)]).norm() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn propagators_compose_over_time() {
        let spectrum = PathSpectrum::new(8).unwrap();
        let u1 = spectrum.propagator(0.7);
        let u2 = spectrum.propagator(1.3);
        let u12 = spectrum.propagator(2.0);
        let prod = &u1 * &u2;
        for i in 0..16 {
            for j in 0..16 {
                assert!((prod[(i, j)] - u12[(i, j)]).norm() <= 1e-9);
            }
        }
    }

    #[test]
    fn particle_number_is_conserved() {
        let walk = FermionWalk::new(4).unwrap();
        for &t in &[0.5, 3.0, 11.0] {
            let moments = walk.projector_moments(t);
            let total: f64 = moments.singles.iter().sum();
            assert!((total - 4.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn pair_expectations_never_exceed_the_product() {
        let walk = FermionWalk::new(4).unwrap();
        let moments = walk.projector_moments(2.3);
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    let product = moments.singles[i] * moments.singles[j];
                    assert!(moments.pairs[(i, j)] <= product + 1e-12);
                }
            }
        }
    }

    #[test]
    fn count_statistics_start_at_zero_and_stay_bounded() {
        let walk = FermionWalk::new(8).unwrap();
        let zero = walk.observables(0.0);
        assert!(zero.expected.abs() <= 1e-12);
        assert!(zero.variance.abs() <= 1e-12);
        for &t in &[0.5, 2.0, 9.0, 40.0] {
            let p = walk.observables(t);
            assert!(p.variance <= p.expected + 1e-9);
            assert!(p.expected >= -1e-12 && p.expected <= 8.0 + 1e-12);
        }
    }

    #[test]
    fn sweep_matches_pointwise_evaluation() {
        let walk = FermionWalk::new(4).unwrap();
        let ts = [0.0, 0.8, 2.2, 5.5];
        let swept = walk.sweep(&ts, Exec::Sequential);
        for (point, &t) in swept.iter().zip(&ts) {
            let direct = walk.observables(t);
            assert_eq!(point.expected, direct.expected);
            assert_eq!(point.variance, direct.variance);
        }
    }

    #[test]
    fn smallest_chain_averages_one_half() {
        let walk = FermionWalk::new(1).unwrap();
        let avg = walk.time_averages(Exec::Sequential);
        assert!((avg.expected - 0.5).abs() <= 1e-12);
        assert!(avg.min_class_gap > 1.0);
    }

    #[test]
    fn average_count_is_half_the_particles() {
        for m in [2usize, 4, 8] {
            let walk = FermionWalk::new(m).unwrap();
            let avg = walk.time_averages(Exec::Sequential);
            assert!((avg.expected - m as f64 / 2.0).abs() <= 1e-9);
            assert!(avg.variance > 0.0);
        }
    }

    #[test]
    fn threshold_too_large_is_rejected() {
        let walk = FermionWalk::new(4).unwrap();
        assert!(walk.passing_time(3).is_err());
        assert!(walk.passing_time(0).is_err());
    }
}
