//! Perturbative reduction of the full row-sector Hamiltonian to the chain.
//!
//! With binding energy `E` large, the spectrum of `K + H_pot` splits into a
//! low band of connected-chain states and a high band of torn chains.  This
//! module verifies the split, aligns the low band with the chain sector to
//! bound the deviation from the effective hopping Hamiltonian, evaluates the
//! self-energy of the chain block, and checks the resulting propagator
//! estimate state by state.

use num_complex::Complex64;

use crate::configspace::{ConfigSpace, LatticeSpec};
use crate::error::{Error, Result};
use crate::hamiltonian::{self, RowSectorBasis, Sector};
use crate::linalg::{self, RMatrix, RVector};

/// Low band of `K + H_pot`, separated at `E / 2`.
#[derive(Debug, Clone)]
pub struct SpectralSplit {
    pub low_values: RVector,
    pub low_vectors: RMatrix,
    pub cutoff: f64,
}

fn full_hamiltonian(spec: &LatticeSpec, e: f64) -> Result<RMatrix> {
    let k = hamiltonian::build_k(spec, Sector::OneAtomPerRow)?
        .dense()?
        .map(|v| v.re);
    let hpot = hamiltonian::build_hpot(spec, e, Sector::OneAtomPerRow)?
        .dense()?
        .map(|v| v.re);
    Ok(k + hpot)
}

/// Diagonalizes `K + H_pot` and keeps the band below `E / 2`, failing if its
/// dimension differs from the chain sector.
pub fn spectral_split(spec: &LatticeSpec, e: f64) -> Result<SpectralSplit> {
    let h = full_hamiltonian(spec, e)?;
    let (vals, vecs) = linalg::eigh(&h);
    let cutoff = e / 2.0;
    let low_count = vals.iter().filter(|&&v| v < cutoff).count();
    let chain_dim = ConfigSpace::for_lattice(spec.n)?.dimension();
    if low_count != chain_dim {
        let lambda_star = vals
            .iter()
            .copied()
            .min_by(|a, b| (a - cutoff).abs().total_cmp(&(b - cutoff).abs()))
            .unwrap_or(f64::NAN);
        return Err(Error::SpectralGapAbsent {
            lambda_star,
            detail: format!(
                "found {low_count} states below {cutoff}, expected {chain_dim}"
            ),
        });
    }
    let dim = h.nrows();
    let mut low_values = RVector::zeros(low_count);
    let mut low_vectors = RMatrix::zeros(dim, low_count);
    for c in 0..low_count {
        low_values[c] = vals[c];
        low_vectors.set_column(c, &vecs.column(c));
    }
    Ok(SpectralSplit { low_values, low_vectors, cutoff })
}

/// Embedding of the chain words into the row sector, one unit column per
/// word in word order.
pub fn chain_embedding(spec: &LatticeSpec) -> Result<RMatrix> {
    let basis = RowSectorBasis::new(spec.n)?;
    let space = ConfigSpace::for_lattice(spec.n)?;
    let mut emb = RMatrix::zeros(basis.dimension(), space.dimension());
    for w in 0..space.dimension() {
        emb[(basis.embed_word(&space.word(w)), w)] = 1.0;
    }
    Ok(emb)
}

/// How far the aligned low band sits from the effective hopping Hamiltonian,
/// against the `9 n^3 / sqrt(E)` bound.
#[derive(Debug, Clone, Copy)]
pub struct LowBandReport {
    pub n: usize,
    pub e: f64,
    pub deviation: f64,
    pub bound: f64,
}

pub fn low_band_check(spec: &LatticeSpec, e: f64) -> Result<LowBandReport> {
    if e < 1e3 {
        return Err(Error::Precondition(format!(
            "band separation needs a binding energy of at least 1e3, got {e}"
        )));
    }
    let split = spectral_split(spec, e)?;
    let emb = chain_embedding(spec)?;
    let h_eff = hamiltonian::effective_hamiltonian(spec)?
        .dense()?
        .map(|v| v.re);
    let x = split.low_vectors.transpose() * &emb;
    let om = linalg::polar_orthogonal(&x);
    let d = split.low_values.len();
    let lambda = RMatrix::from_fn(d, d, |i, j| if i == j { split.low_values[i] } else { 0.0 });
    let aligned = om.transpose() * lambda * &om;
    let deviation = linalg::op_norm_r(&(aligned - h_eff));
    let n = spec.n as f64;
    Ok(LowBandReport {
        n: spec.n,
        e,
        deviation,
        bound: 9.0 * n.powi(3) / e.sqrt(),
    })
}

/// Self-energy of the chain block at real energy `z`.
#[derive(Debug, Clone)]
pub struct SelfEnergy {
    pub sigma: RMatrix,
    /// Norm of `K_pp G_p`, the expansion parameter of the resolvent series.
    pub series_norm: f64,
    /// Norm of the high-band resolvent `G_p` itself.
    pub resolvent_norm: f64,
}

struct SectorIndices {
    minus: Vec<usize>,
    plus: Vec<usize>,
}

fn sector_indices(spec: &LatticeSpec) -> Result<SectorIndices> {
    let basis = RowSectorBasis::new(spec.n)?;
    let space = ConfigSpace::for_lattice(spec.n)?;
    let minus: Vec<usize> = (0..space.dimension())
        .map(|w| basis.embed_word(&space.word(w)))
        .collect();
    let plus: Vec<usize> = (0..basis.dimension())
        .filter(|i| !minus.contains(i))
        .collect();
    Ok(SectorIndices { minus, plus })
}

pub fn self_energy(spec: &LatticeSpec, e: f64, z: f64) -> Result<SelfEnergy> {
    let k = hamiltonian::build_k(spec, Sector::OneAtomPerRow)?
        .dense()?
        .map(|v| v.re);
    let hpot = hamiltonian::build_hpot(spec, e, Sector::OneAtomPerRow)?
        .dense()?
        .map(|v| v.re);
    let idx = sector_indices(spec)?;
    let nm = idx.minus.len();
    let np = idx.plus.len();
    let pick = |rows: &[usize], cols: &[usize]| {
        RMatrix::from_fn(rows.len(), cols.len(), |r, c| k[(rows[r], cols[c])])
    };
    let k_mm = pick(&idx.minus, &idx.minus);
    let k_mp = pick(&idx.minus, &idx.plus);
    let k_pm = pick(&idx.plus, &idx.minus);
    let k_pp = pick(&idx.plus, &idx.plus);
    let g_diag: Vec<f64> = idx
        .plus
        .iter()
        .map(|&i| 1.0 / (z - hpot[(i, i)]))
        .collect();
    let resolvent_norm = g_diag.iter().fold(0.0_f64, |m, &g| m.max(g.abs()));
    let mut kg = k_pp;
    for c in 0..np {
        for r in 0..np {
            kg[(r, c)] *= g_diag[c];
        }
    }
    let series_norm = linalg::op_norm_r(&kg);
    if series_norm >= 1.0 {
        return Err(Error::ResolventSeriesDiverges {
            z: Complex64::new(z, 0.0),
            norm: series_norm,
        });
    }
    let lhs = RMatrix::identity(np, np) - &kg;
    let solved = lhs.clone().lu().solve(&k_pm).ok_or_else(|| {
        let svals = lhs.svd(false, false).singular_values;
        Error::SingularResolvent {
            z: Complex64::new(z, 0.0),
            condition: svals.max() / svals.min(),
        }
    })?;
    let mut gp_solved = solved;
    for r in 0..np {
        for c in 0..nm {
            gp_solved[(r, c)] *= g_diag[r];
        }
    }
    let sigma = &k_mm + k_mp * gp_solved;
    Ok(SelfEnergy { sigma, series_norm, resolvent_norm })
}

/// Deviation of the self-energy from the bare chain block at one `z`.
#[derive(Debug, Clone, Copy)]
pub struct SelfEnergyPoint {
    pub z: f64,
    pub deviation: f64,
    pub bound: f64,
    pub series_norm: f64,
}

/// Scans `z = -0.9 sqrt(E) .. 0.9 sqrt(E)` in ten steps and compares the
/// self-energy correction against `4 n^4 / E`.
pub fn self_energy_scan(spec: &LatticeSpec, e: f64) -> Result<Vec<SelfEnergyPoint>> {
    let idx = sector_indices(spec)?;
    let k = hamiltonian::build_k(spec, Sector::OneAtomPerRow)?
        .dense()?
        .map(|v| v.re);
    let k_mm = RMatrix::from_fn(idx.minus.len(), idx.minus.len(), |r, c| {
        k[(idx.minus[r], idx.minus[c])]
    });
    let n = spec.n as f64;
    let bound = 4.0 * n.powi(4) / e;
    let mut out = Vec::with_capacity(10);
    for i in 0..10 {
        let z = (-0.9 + 0.2 * i as f64) * e.sqrt();
        let se = self_energy(spec, e, z)?;
        out.push(SelfEnergyPoint {
            z,
            deviation: linalg::op_norm_r(&(&se.sigma - &k_mm)),
            bound,
            series_norm: se.series_norm,
        });
    }
    Ok(out)
}

/// Relative disagreement of two central-difference derivatives of the
/// self-energy at `z = 0`; small values witness smoothness in `z`.
pub fn self_energy_derivative_consistency(spec: &LatticeSpec, e: f64) -> Result<f64> {
    let h = 1e-3 * e.sqrt();
    let d_at = |step: f64| -> Result<RMatrix> {
        let plus = self_energy(spec, e, step)?.sigma;
        let minus = self_energy(spec, e, -step)?.sigma;
        Ok((plus - minus) / (2.0 * step))
    };
    let coarse = d_at(h)?;
    let fine = d_at(h / 2.0)?;
    let denom = linalg::op_norm_r(&fine).max(1e-300);
    Ok(linalg::op_norm_r(&(coarse - fine)) / denom)
}

/// Worst slack in the propagator comparison over a time grid and all chain
/// basis states.
#[derive(Debug, Clone, Copy)]
pub struct PropagatorReport {
    pub n: usize,
    pub e: f64,
    pub epsilon: f64,
    pub offset: f64,
    pub max_lhs: f64,
    pub max_margin: f64,
}

/// Compares evolution under the full Hamiltonian, started in an embedded
/// chain state, against embedded evolution under the effective Hamiltonian:
/// the distance must stay below `epsilon t + 2 n sqrt(2 / E)`.
pub fn propagator_check(
    spec: &LatticeSpec,
    e: f64,
    t_max: f64,
    points: usize,
) -> Result<PropagatorReport> {
    if points < 2 {
        return Err(Error::InvalidParameter(
            "the time grid needs at least two points".into(),
        ));
    }
    let h = full_hamiltonian(spec, e)?;
    let (vals, vecs) = linalg::eigh(&h);
    let emb = chain_embedding(spec)?;
    let h_eff = hamiltonian::effective_hamiltonian(spec)?
        .dense()?
        .map(|v| v.re);
    let (eff_vals, eff_vecs) = linalg::eigh(&h_eff);
    let dim = h.nrows();
    let chain_dim = h_eff.nrows();
    let n = spec.n as f64;
    let epsilon = 9.0 * n.powi(3) / e.sqrt();
    let offset = 2.0 * n * (2.0 / e).sqrt();
    let mut max_lhs = 0.0_f64;
    let mut max_margin = f64::NEG_INFINITY;
    for b in 0..chain_dim {
        let full_coeffs = vecs.transpose() * emb.column(b);
        let eff_coeffs = eff_vecs.row(b).transpose();
        for i in 0..points {
            let t = t_max * i as f64 / (points - 1) as f64;
            let mut full_state = vec![Complex64::new(0.0, 0.0); dim];
            for r in 0..dim {
                let phase = Complex64::from_polar(full_coeffs[r], -vals[r] * t);
                for (row, out) in full_state.iter_mut().enumerate() {
                    *out += vecs[(row, r)] * phase;
                }
            }
            let mut eff_state = vec![Complex64::new(0.0, 0.0); chain_dim];
            for r in 0..chain_dim {
                let phase = Complex64::from_polar(eff_coeffs[r], -eff_vals[r] * t);
                for (row, out) in eff_state.iter_mut().enumerate() {
                    *out += eff_vecs[(row, r)] * phase;
                }
            }
            let mut diff_sq = 0.0;
            for row in 0..dim {
                let mut emb_val = Complex64::new(0.0, 0.0);
                for c in 0..chain_dim {
                    emb_val += emb[(row, c)] * eff_state[c];
                }
                diff_sq += (full_state[row] - emb_val).norm_sqr();
            }
            let lhs = diff_sq.sqrt();
            let margin = lhs - (epsilon * t + offset);
            max_lhs = max_lhs.max(lhs);
            max_margin = max_margin.max(margin);
        }
    }
    Ok(PropagatorReport {
        n: spec.n,
        e,
        epsilon,
        offset,
        max_lhs,
        max_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize) -> LatticeSpec {
        LatticeSpec::new(n, 1).unwrap()
    }

    #[test]
    fn split_finds_exactly_the_chain_band() {
        let split = spectral_split(&spec(3), 1e4).unwrap();
        assert_eq!(split.low_values.len(), 6);
        assert!(split.low_values.iter().all(|&v| v.abs() < 10.0));
    }

    #[test]
    fn low_band_deviation_obeys_the_bound_even_at_small_sizes() {
        let report = low_band_check(&spec(2), 1e3).unwrap();
        assert!(report.deviation <= report.bound);
        assert!(low_band_check(&spec(2), 10.0).is_err());
    }

    #[test]
    fn chain_block_of_the_hopping_matrix_is_the_effective_hamiltonian() {
        for n in [2usize, 3] {
            let s = spec(n);
            let idx = sector_indices(&s).unwrap();
            let k = hamiltonian::build_k(&s, Sector::OneAtomPerRow)
                .unwrap()
                .dense()
                .unwrap()
                .map(|v| v.re);
            let h_eff = hamiltonian::effective_hamiltonian(&s)
                .unwrap()
                .dense()
                .unwrap()
                .map(|v| v.re);
            for (a, &ia) in idx.minus.iter().enumerate() {
                for (b, &ib) in idx.minus.iter().enumerate() {
                    assert_eq!(k[(ia, ib)], h_eff[(a, b)]);
                }
            }
        }
    }

    #[test]
    fn correction_vanishes_as_the_band_separates() {
        let s = spec(3);
        let coarse = self_energy(&s, 1e4, 0.0).unwrap();
        let fine = self_energy(&s, 1e8, 0.0).unwrap();
        let k_mm_dev = |se: &SelfEnergy| {
            let idx = sector_indices(&s).unwrap();
            let k = hamiltonian::build_k(&s, Sector::OneAtomPerRow)
                .unwrap()
                .dense()
                .unwrap()
                .map(|v| v.re);
            let k_mm = RMatrix::from_fn(idx.minus.len(), idx.minus.len(), |r, c| {
                k[(idx.minus[r], idx.minus[c])]
            });
            linalg::op_norm_r(&(&se.sigma - &k_mm))
        };
        let ratio = k_mm_dev(&fine) / k_mm_dev(&coarse);
        assert!(ratio < 1e-3);
    }

    #[test]
    fn resolvent_norm_obeys_the_half_band_bound() {
        let s = spec(3);
        let e = 1e4;
        for &z in &[-0.5 * e, -0.1 * e, 0.0, 0.3 * e, 0.5 * e] {
            let se = self_energy(&s, e, z).unwrap();
            assert!(se.resolvent_norm <= 2.0 / e + 1e-18);
        }
    }

    #[test]
    fn derivative_estimates_agree() {
        let rel = self_energy_derivative_consistency(&spec(3), 1e4).unwrap();
        assert!(rel <= 0.1);
    }
}
