//! Dense and sparse linear-algebra helpers shared across the crate.
//!
//! Thin layer over nalgebra specialised to the two matrix flavours the
//! simulator uses: real symmetric matrices (graph adjacencies, chain
//! generators) and complex Hermitian matrices (propagators, holonomy step
//! Hamiltonians).  Also hosts the sparse Chebyshev propagator used for
//! many-body evolution beyond the dense size limit.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

/// Dense matrices are kept below this dimension; larger operators switch to
/// coordinate-list storage.
pub const DENSE_LIMIT: usize = 4096;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Eigendecomposition of a real symmetric matrix with eigenvalues sorted
/// ascending. Columns of the returned matrix are the matching eigenvectors.
pub fn eigh(m: &RMatrix) -> (RVector, RMatrix) {
    let se = m.clone().symmetric_eigen();
    sort_eigenpairs(se.eigenvalues, se.eigenvectors)
}

/// Eigendecomposition of a complex Hermitian matrix, eigenvalues ascending.
pub fn eigh_c(m: &CMatrix) -> (RVector, CMatrix) {
    let se = m.clone().symmetric_eigen();
    sort_eigenpairs(se.eigenvalues, se.eigenvectors)
}

fn sort_eigenpairs<T: nalgebra::Scalar + Copy>(
    vals: RVector,
    vecs: DMatrix<T>,
) -> (RVector, DMatrix<T>) {
    let n = vals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let sorted_vals = RVector::from_iterator(n, order.iter().map(|&i| vals[i]));
    let mut sorted_vecs = vecs.clone();
    for (dst, &src) in order.iter().enumerate() {
        sorted_vecs.set_column(dst, &vecs.column(src));
    }
    (sorted_vals, sorted_vecs)
}

/// `exp(-i H t)` for a Hermitian matrix `H`.
pub fn expmh(h: &CMatrix, t: f64) -> CMatrix {
    let (vals, vecs) = eigh_c(h);
    let mut phased = vecs.clone();
    for (c, &lambda) in vals.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -lambda * t);
        for r in 0..phased.nrows() {
            phased[(r, c)] *= phase;
        }
    }
    phased * vecs.adjoint()
}

/// `exp(-i H t)` from a precomputed real symmetric eigendecomposition of `H`.
pub fn expmh_from_eigh(vals: &RVector, vecs: &RMatrix, t: f64) -> CMatrix {
    let n = vals.len();
    let mut cos_scaled = vecs.clone();
    let mut sin_scaled = vecs.clone();
    for c in 0..n {
        let (s, co) = (vals[c] * t).sin_cos();
        for r in 0..n {
            cos_scaled[(r, c)] *= co;
            sin_scaled[(r, c)] *= s;
        }
    }
    let re = cos_scaled * vecs.transpose();
    let im = sin_scaled * vecs.transpose();
    CMatrix::from_fn(n, n, |r, c| Complex64::new(re[(r, c)], -im[(r, c)]))
}

/// Spectral norm (largest singular value).
pub fn op_norm(m: &CMatrix) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0, |a, &s| a.max(s))
}

/// Spectral norm of a real matrix.
pub fn op_norm_r(m: &RMatrix) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0, |a, &s| a.max(s))
}

/// Largest absolute deviation from Hermiticity, `max |A - A^dagger|`.
pub fn hermiticity_error(m: &CMatrix) -> f64 {
    let mut worst = 0.0_f64;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Gate fidelity `|tr(T^dagger A)| / d`, insensitive to a global phase.
pub fn fidelity(a: &CMatrix, target: &CMatrix) -> f64 {
    let d = a.nrows();
    let mut tr = Complex64::new(0.0, 0.0);
    for r in 0..d {
        for c in 0..d {
            tr += target[(c, r)].conj() * a[(c, r)];
        }
    }
    tr.norm() / d as f64
}

/// Spectral-norm distance `min_gamma ||A - e^{i gamma} B||`, with the phase
/// taken from `tr(B^dagger A)`.
pub fn phase_stripped_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let mut tr = Complex64::new(0.0, 0.0);
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            tr += b[(c, r)].conj() * a[(c, r)];
        }
    }
    let phase = if tr.norm() > 0.0 { tr / tr.norm() } else { ONE };
    op_norm(&(a - b.map(|x| x * phase)))
}

/// Orthogonal polar factor `U V^T` from the SVD of a real matrix.
pub fn polar_orthogonal(m: &RMatrix) -> RMatrix {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("svd requested u");
    let v_t = svd.v_t.expect("svd requested v_t");
    u * v_t
}

/// Complex matrix lifted from a real one.
pub fn complexify(m: &RMatrix) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Unweighted symmetric adjacency in compressed sparse row form.
///
/// Every stored edge has weight one; both triangles are stored so that a
/// matrix-vector product is a plain gather.
#[derive(Debug, Clone)]
pub struct SparseSym {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
}

impl SparseSym {
    /// Builds from an undirected edge list; duplicates are merged.
    pub fn from_edges(dim: usize, edges: &[(u32, u32)]) -> Self {
        let mut neighbors: Vec<Vec<u32>> = vec![Vec::new(); dim];
        for &(a, b) in edges {
            neighbors[a as usize].push(b);
            neighbors[b as usize].push(a);
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        row_ptr.push(0);
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
            cols.extend_from_slice(list);
            row_ptr.push(cols.len());
        }
        SparseSym { dim, row_ptr, cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored (directed) entries.
    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]]
    }

    /// `y = A x` over complex vectors.
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (i, out) in y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &c in &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]] {
                acc += x[c as usize];
            }
            *out = acc;
        }
    }

    /// `A x` over real vectors.
    pub fn matvec_real(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| {
                self.cols[self.row_ptr[i]..self.row_ptr[i + 1]]
                    .iter()
                    .map(|&c| x[c as usize])
                    .sum()
            })
            .collect()
    }

    /// Dense copy, guarded by [`DENSE_LIMIT`].
    pub fn to_dense(&self) -> RMatrix {
        assert!(self.dim <= DENSE_LIMIT, "dense copy above size limit");
        let mut m = RMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for &c in self.neighbors(i) {
                m[(i, c as usize)] = 1.0;
            }
        }
        m
    }
}

/// `J_0(x) ... J_{n_max}(x)` by Miller's backward recurrence.
pub fn bessel_j_sequence(n_max: usize, x: f64) -> Vec<f64> {
    assert!(x >= 0.0, "nonnegative argument expected");
    let mut out = vec![0.0_f64; n_max + 1];
    if x < 1e-6 {
        // Leading series terms; everything beyond J_1 is below 1e-12 here.
        out[0] = 1.0 - 0.25 * x * x;
        if n_max >= 1 {
            out[1] = 0.5 * x;
        }
        return out;
    }
    let start = n_max + 16 + (40.0 * (n_max as f64 + x)).sqrt() as usize;
    let mut above = 0.0_f64; // J_{k+1}
    let mut cur = 1e-300_f64; // J_k, arbitrary seed
    let mut norm = 0.0_f64; // accumulates J_0 + 2 sum_{even k >= 2} J_k
    for k in (1..=start).rev() {
        let below = (2.0 * k as f64 / x) * cur - above;
        above = cur;
        cur = below;
        let idx = k - 1;
        if idx <= n_max {
            out[idx] = cur;
        }
        if idx > 0 && idx % 2 == 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            let s = 1e-250;
            cur *= s;
            above *= s;
            norm *= s;
            for v in out.iter_mut() {
                *v *= s;
            }
        }
    }
    norm += cur; // J_0
    let scale = 1.0 / norm;
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

/// `exp(-i H t) psi` for the sparse symmetric `H` via a Chebyshev expansion.
///
/// `radius` must bound the spectral radius of `H`.  The expansion order grows
/// linearly with `radius * t`, so the cost is one sparse matvec per order.
pub fn chebyshev_evolve(h: &SparseSym, radius: f64, t: f64, psi: &[Complex64]) -> Vec<Complex64> {
    assert!(t >= 0.0, "forward evolution expected");
    assert!(radius > 0.0, "positive spectral radius bound expected");
    let x = radius * t;
    if x == 0.0 {
        return psi.to_vec();
    }
    let k_max = (x + 40.0 + 10.0 * (1.0 + x).ln()).ceil() as usize;
    let bessel = bessel_j_sequence(k_max, x);
    let inv_r = 1.0 / radius;
    let n = psi.len();

    let mut t_prev = psi.to_vec();
    let mut t_cur = vec![Complex64::new(0.0, 0.0); n];
    h.matvec(&t_prev, &mut t_cur);
    for v in t_cur.iter_mut() {
        *v *= inv_r;
    }

    let minus_i_pow = [ONE, -I, -ONE, I];
    let mut out: Vec<Complex64> = t_prev.iter().map(|&v| v * bessel[0]).collect();
    let c1 = 2.0 * bessel[1] * minus_i_pow[1];
    for (o, &v) in out.iter_mut().zip(t_cur.iter()) {
        *o += v * c1;
    }

    let mut scratch = vec![Complex64::new(0.0, 0.0); n];
    for k in 2..=k_max {
        h.matvec(&t_cur, &mut scratch);
        for i in 0..n {
            scratch[i] = scratch[i] * (2.0 * inv_r) - t_prev[i];
        }
        let ck = 2.0 * bessel[k] * minus_i_pow[k % 4];
        for (o, &v) in out.iter_mut().zip(scratch.iter()) {
            *o += v * ck;
        }
        std::mem::swap(&mut t_prev, &mut t_cur);
        std::mem::swap(&mut t_cur, &mut scratch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expmh_matches_closed_form_for_pauli_x() {
        let h = CMatrix::from_row_slice(2, 2, &[
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        for &t in &[0.0, 0.3, 1.7, -2.2] {
            let u = expmh(&h, t);
            let expect = CMatrix::from_row_slice(2, 2, &[
                Complex64::new(t.cos(), 0.0),
                Complex64::new(0.0, -t.sin()),
                Complex64::new(0.0, -t.sin()),
                Complex64::new(t.cos(), 0.0),
            ]);
            assert!(op_norm(&(u - expect)) < 1e-12);
        }
    }

    #[test]
    fn bessel_sequence_matches_reference_values() {
        // J_0(1), J_1(1), J_5(1) and J_0(10), J_10(10) to published precision.
        let j1 = bessel_j_sequence(5, 1.0);
        assert!((j1[0] - 0.7651976865579666).abs() < 1e-12);
        assert!((j1[1] - 0.4400505857449335).abs() < 1e-12);
        assert!((j1[5] - 0.0002497577302112).abs() < 1e-14);
        let j10 = bessel_j_sequence(10, 10.0);
        assert!((j10[0] + 0.2459357644513483).abs() < 1e-12);
        assert!((j10[10] - 0.2074861066333589).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_matches_dense_exponential_on_a_path() {
        let dim = 7;
        let edges: Vec<(u32, u32)> = (0..dim as u32 - 1).map(|i| (i, i + 1)).collect();
        let sp = SparseSym::from_edges(dim, &edges);
        let dense = complexify(&sp.to_dense());
        let mut psi = vec![Complex64::new(0.0, 0.0); dim];
        psi[3] = ONE;
        for &t in &[0.5, 3.0, 12.0] {
            let via_cheb = chebyshev_evolve(&sp, 2.0, t, &psi);
            let u = expmh(&dense, t);
            for i in 0..dim {
                assert!((via_cheb[i] - u[(i, 3)]).norm() < 1e-10);
            }
            let norm: f64 = via_cheb.iter().map(|v| v.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn polar_factor_is_orthogonal() {
        let m = RMatrix::from_row_slice(3, 3, &[2.0, 0.1, 0.0, -0.3, 1.5, 0.2, 0.0, 0.4, 0.9]);
        let q = polar_orthogonal(&m);
        let gram = &q * q.transpose();
        assert!(op_norm_r(&(gram - RMatrix::identity(3, 3))) < 1e-12);
    }
}
