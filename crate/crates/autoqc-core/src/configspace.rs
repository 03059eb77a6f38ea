//! Configuration space of the connected chain on the diagonal lattice.
//!
//! An `n x n` lattice is traversed by a chain of `2n - 1` atoms, one per
//! diagonal row `r = 1..=2n-1`.  Rows `1` and `2n-1` hold a single fixed
//! site; every interior atom sits one lattice step to the left or right of
//! its predecessor.  A configuration is therefore a word of `2m = 2(n-1)`
//! bits with exactly `m` ones, bit `j` recording whether atom `j+2` sits in
//! front of atom `j+1`.  Single moves swap adjacent `01`/`10` pairs, which
//! makes the move graph the hopping graph of `m` free fermions on a path.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, RMatrix, RVector, SparseSym, DENSE_LIMIT};

/// Largest word count for which exact amplitudes are computed.
pub const EXACT_WORD_CAP: usize = 12870;

/// Lattice side `n` together with the circuit-region half-width `k`.
///
/// The circuit region is the square `i <= k, j <= k` in the coordinates of
/// [`diagonal_coords`]; a readout requires the chain to clear it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub n: usize,
    pub k: usize,
}

impl LatticeSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(
                "lattice side must be at least 2".into(),
            ));
        }
        if k < 1 || k >= n {
            return Err(Error::InvalidParameter(format!(
                "region half-width must lie in 1..{}",
                n
            )));
        }
        Ok(LatticeSpec { n, k })
    }

    /// Half-length of the chain word on this lattice.
    pub fn m(&self) -> usize {
        self.n - 1
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// One chain configuration, stored as a balanced bit word.
///
/// The first character of the displayed word is bit `0`; a set bit means the
/// next atom sits one step in front (larger `x`) of the previous one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainWord {
    bits: u32,
    half: u8,
}

impl ChainWord {
    pub fn new(bits: u32, m: usize) -> Self {
        assert!(m >= 1 && 2 * m <= 32, "word length out of range");
        assert!(bits >> (2 * m) == 0, "stray bits beyond word length");
        ChainWord { bits, half: m as u8 }
    }

    /// Word with all ones in the back half: every atom starts leftmost.
    pub fn initial(m: usize) -> Self {
        ChainWord::new((1 << m) - 1, m)
    }

    /// Word with all ones in the front half: every atom has passed through.
    pub fn completed(m: usize) -> Self {
        let m32 = m as u32;
        ChainWord::new(((1u32 << m32) - 1) << m32, m)
    }

    pub fn half_length(&self) -> usize {
        self.half as usize
    }

    pub fn len(&self) -> usize {
        2 * self.half as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn bit(&self, j: usize) -> bool {
        (self.bits >> (self.len() - 1 - j)) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Number of ones among the first `m` bits; counts how far the middle of
    /// the chain has advanced.
    pub fn progress(&self) -> usize {
        (self.bits >> self.half).count_ones() as usize
    }

    /// Word with bits `p` and `p+1` exchanged.
    pub fn swapped(&self, p: usize) -> ChainWord {
        let hi = self.len() - 1 - p;
        let lo = hi - 1;
        let a = (self.bits >> hi) & 1;
        let b = (self.bits >> lo) & 1;
        let bits = if a == b {
            self.bits
        } else {
            self.bits ^ ((1 << hi) | (1 << lo))
        };
        ChainWord { bits, half: self.half }
    }

    /// Lattice `x` coordinate of each atom, rows `1..=2n-1`.
    pub fn decode_x(&self) -> Vec<i64> {
        let n = self.half_length() + 1;
        let mut xs = Vec::with_capacity(2 * n - 1);
        xs.push(n as i64 + 1);
        for j in 0..self.len() {
            let step = if self.bit(j) { 1 } else { -1 };
            xs.push(xs[j] + step);
        }
        xs
    }
}

impl fmt::Display for ChainWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len() {
            f.write_str(if self.bit(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Half-width of the sites available in diagonal row `r` of an `n x n`
/// lattice: `x` ranges over `2 + |y| ..= 2n - |y|` in steps of two, with
/// `y = n - r`.
pub fn site_bounds(n: usize, row: usize) -> (i64, i64) {
    let y = n as i64 - row as i64;
    (2 + y.abs(), 2 * n as i64 - y.abs())
}

/// Maps a row/`x` pair to the underlying square-lattice coordinates.
pub fn diagonal_coords(n: usize, row: usize, x: i64) -> (i64, i64) {
    let y = n as i64 - row as i64;
    ((x - y) / 2, (x + y) / 2)
}

/// Checks anchors, per-row bounds and parity, and unit steps between rows.
pub fn chain_positions_are_valid(n: usize, xs: &[i64]) -> bool {
    if xs.len() != 2 * n - 1 {
        return false;
    }
    if xs[0] != n as i64 + 1 || xs[2 * n - 2] != n as i64 + 1 {
        return false;
    }
    for (idx, &x) in xs.iter().enumerate() {
        let row = idx + 1;
        let (lo, hi) = site_bounds(n, row);
        if x < lo || x > hi || (x - lo) % 2 != 0 {
            return false;
        }
    }
    xs.windows(2).all(|w| (w[1] - w[0]).abs() == 1)
}

/// True when every atom lies outside the square region `i <= k, j <= k`.
pub fn positions_outside_region(n: usize, xs: &[i64], k: usize) -> bool {
    xs.iter().enumerate().all(|(idx, &x)| {
        let (i, j) = diagonal_coords(n, idx + 1, x);
        i > k as i64 || j > k as i64
    })
}

/// All balanced words for one lattice size, together with the move graph.
#[derive(Debug, Clone)]
pub struct ConfigSpace {
    m: usize,
    words: Vec<ChainWord>,
    index: HashMap<u32, usize>,
    moves: SparseSym,
}

impl ConfigSpace {
    /// Enumerates every weight-`m` word of length `2m` in lexicographic
    /// order and connects words that differ by one adjacent transposition.
    pub fn new(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter(
                "chain half-length must be at least 1".into(),
            ));
        }
        let dim = binomial(2 * m as u64, m as u64);
        if dim > EXACT_WORD_CAP as u128 {
            return Err(Error::SizeCapExceeded {
                what: "chain words",
                needed: dim as usize,
                cap: EXACT_WORD_CAP,
            });
        }
        let dim = dim as usize;
        let mut words = Vec::with_capacity(dim);
        let mut index = HashMap::with_capacity(dim);
        for bits in 0u32..1 << (2 * m) {
            if bits.count_ones() == m as u32 {
                index.insert(bits, words.len());
                words.push(ChainWord::new(bits, m));
            }
        }
        let mut edges = Vec::new();
        for (a, word) in words.iter().enumerate() {
            for p in 0..2 * m - 1 {
                let other = word.swapped(p);
                if other.bits != word.bits {
                    let b = index[&other.bits];
                    if a < b {
                        edges.push((a as u32, b as u32));
                    }
                }
            }
        }
        let moves = SparseSym::from_edges(dim, &edges);
        Ok(ConfigSpace { m, words, index, moves })
    }

    pub fn for_lattice(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(
                "lattice side must be at least 2".into(),
            ));
        }
        ConfigSpace::new(n - 1)
    }

    pub fn half_length(&self) -> usize {
        self.m
    }

    pub fn lattice_side(&self) -> usize {
        self.m + 1
    }

    pub fn dimension(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, idx: usize) -> ChainWord {
        self.words[idx]
    }

    pub fn words(&self) -> &[ChainWord] {
        &self.words
    }

    pub fn index_of(&self, word: &ChainWord) -> Option<usize> {
        self.index.get(&word.bits).copied()
    }

    pub fn moves(&self) -> &SparseSym {
        &self.moves
    }

    pub fn initial_index(&self) -> usize {
        self.index[&ChainWord::initial(self.m).bits]
    }

    pub fn completed_index(&self) -> usize {
        self.index[&ChainWord::completed(self.m).bits]
    }

    /// Amplitudes of `exp(-i K t)` applied to the initial word, where `K` is
    /// the move adjacency.
    pub fn evolve_from_initial(&self, t: f64) -> Vec<Complex64> {
        let mut psi = vec![Complex64::new(0.0, 0.0); self.dimension()];
        psi[self.initial_index()] = Complex64::new(1.0, 0.0);
        let radius = crate::fermion_walk::spectral_radius_bound(self.m);
        linalg::chebyshev_evolve(&self.moves, radius, t, &psi)
    }

    /// Probability that the whole chain lies outside the region `i, j <= k`.
    pub fn region_escape_probability(&self, amps: &[Complex64], k: usize) -> f64 {
        assert!(k >= 1 && k <= self.m, "region size out of range");
        self.words
            .iter()
            .zip(amps)
            .filter(|(w, _)| w.progress() >= k)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Dense eigendecomposition of the move graph for repeated exact evolution.
pub struct ExactEvolver {
    vals: RVector,
    vecs: RMatrix,
    init_coeffs: RVector,
}

impl ExactEvolver {
    pub fn new(space: &ConfigSpace) -> Result<Self> {
        let dim = space.dimension();
        if dim > DENSE_LIMIT {
            return Err(Error::SizeCapExceeded {
                what: "dense move-graph eigendecomposition",
                needed: dim,
                cap: DENSE_LIMIT,
            });
        }
        let (vals, vecs) = linalg::eigh(&space.moves().to_dense());
        let init_coeffs = vecs.row(space.initial_index()).transpose();
        Ok(ExactEvolver { vals, vecs, init_coeffs })
    }

    /// Amplitudes at time `t` starting from the initial word.
    pub fn amplitudes(&self, t: f64) -> Vec<Complex64> {
        let n = self.vals.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for r in 0..n {
            let phase = Complex64::from_polar(self.init_coeffs[r], -self.vals[r] * t);
            for (w, o) in out.iter_mut().enumerate() {
                *o += self.vecs[(w, r)] * phase;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_lattice_has_two_words() {
        let space = ConfigSpace::for_lattice(2).unwrap();
        assert_eq!(space.dimension(), 2);
        assert_eq!(space.word(0).to_string(), "01");
        assert_eq!(space.word(1).to_string(), "10");
        assert_eq!(space.initial_index(), 0);
        assert_eq!(space.completed_index(), 1);
        assert_eq!(space.moves().nnz(), 2);
    }

    #[test]
    fn every_word_decodes_to_a_valid_chain() {
        for m in 1..=5 {
            let space = ConfigSpace::new(m).unwrap();
            assert_eq!(space.dimension() as u128, binomial(2 * m as u64, m as u64));
            for idx in 0..space.dimension() {
                let xs = space.word(idx).decode_x();
                assert!(chain_positions_are_valid(m + 1, &xs));
            }
        }
    }

    #[test]
    fn progress_counts_match_the_geometric_region_check() {
        let space = ConfigSpace::new(4).unwrap();
        let n = space.lattice_side();
        for idx in 0..space.dimension() {
            let word = space.word(idx);
            let xs = word.decode_x();
            for k in 1..=space.half_length() {
                let by_bits = word.progress() >= k;
                assert_eq!(by_bits, positions_outside_region(n, &xs, k));
            }
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        assert!(ConfigSpace::new(8).is_ok());
        match ConfigSpace::new(9) {
            Err(Error::SizeCapExceeded { needed, cap, .. }) => {
                assert_eq!(needed, 48620);
                assert_eq!(cap, 12870);
            }
            other => panic!("expected size cap error, got {other:?}"),
        }
    }
}
