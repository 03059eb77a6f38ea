//! Builders for the lattice Hamiltonians.
//!
//! Three sector bases appear: the one-atom-per-row sector (atoms hop freely
//! inside their rows), the connected-chain sector spanned by the balanced
//! words of [`crate::configspace`], and the spinful sector that attaches one
//! spin-1/2 to every chain atom.  The hopping generator `K`, the binding
//! potential, the projected effective Hamiltonian and the spin-chain form
//! all live here, together with the complete position-plus-spin Hamiltonian
//! for compiled stripe layouts at small lattice sizes.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::configspace::{diagonal_coords, ChainWord, ConfigSpace, LatticeSpec};
use crate::error::{Error, Result};
use crate::layout::{CircuitLayout, StripeKind};
use crate::linalg::{complexify, CMatrix, RMatrix, DENSE_LIMIT};

/// Hard cap on any basis enumerated by this module.
pub const SECTOR_STATE_CAP: usize = 200_000;

/// Which basis a builder should target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    OneAtomPerRow,
    ConnectedChain,
    Spinful,
}

/// Complex Hermitian matrix with printable basis labels.
///
/// Dense storage below [`DENSE_LIMIT`]; coordinate triplets above it.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    basis: Vec<String>,
    storage: Storage,
}

#[derive(Debug, Clone)]
enum Storage {
    Dense(CMatrix),
    Sparse {
        dim: usize,
        triplets: Vec<(u32, u32, Complex64)>,
    },
}

impl HermitianOperator {
    pub fn from_dense(basis: Vec<String>, m: CMatrix) -> Self {
        assert_eq!(basis.len(), m.nrows());
        HermitianOperator { basis, storage: Storage::Dense(m) }
    }

    pub fn from_real(basis: Vec<String>, m: &RMatrix) -> Self {
        HermitianOperator::from_dense(basis, complexify(m))
    }

    pub fn from_triplets(basis: Vec<String>, triplets: Vec<(u32, u32, Complex64)>) -> Self {
        let dim = basis.len();
        HermitianOperator { basis, storage: Storage::Sparse { dim, triplets } }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    /// Dense view; fails above the dense size limit.
    pub fn dense(&self) -> Result<CMatrix> {
        match &self.storage {
            Storage::Dense(m) => Ok(m.clone()),
            Storage::Sparse { dim, triplets } => {
                if *dim > DENSE_LIMIT {
                    return Err(Error::SizeCapExceeded {
                        what: "dense operator view",
                        needed: *dim,
                        cap: DENSE_LIMIT,
                    });
                }
                let mut m = CMatrix::zeros(*dim, *dim);
                for &(r, c, v) in triplets {
                    m[(r as usize, c as usize)] += v;
                }
                Ok(m)
            }
        }
    }

    /// Nonzero entries as (row, col, value), row-major, duplicates merged.
    pub fn triplets(&self) -> Vec<(u32, u32, Complex64)> {
        match &self.storage {
            Storage::Dense(m) => {
                let mut out = Vec::new();
                for r in 0..m.nrows() {
                    for c in 0..m.ncols() {
                        let v = m[(r, c)];
                        if v.norm() > 0.0 {
                            out.push((r as u32, c as u32, v));
                        }
                    }
                }
                out
            }
            Storage::Sparse { triplets, .. } => {
                let mut merged: HashMap<(u32, u32), Complex64> = HashMap::new();
                for &(r, c, v) in triplets {
                    *merged.entry((r, c)).or_insert(Complex64::new(0.0, 0.0)) += v;
                }
                let mut out: Vec<(u32, u32, Complex64)> = merged
                    .into_iter()
                    .filter(|(_, v)| v.norm() > 0.0)
                    .map(|((r, c), v)| (r, c, v))
                    .collect();
                out.sort_by_key(|&(r, c, _)| (r, c));
                out
            }
        }
    }

    /// Largest absolute deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        match &self.storage {
            Storage::Dense(m) => crate::linalg::hermiticity_error(m),
            Storage::Sparse { .. } => {
                let trip = self.triplets();
                let lookup: HashMap<(u32, u32), Complex64> =
                    trip.iter().map(|&(r, c, v)| ((r, c), v)).collect();
                let mut worst = 0.0_f64;
                for &(r, c, v) in &trip {
                    let mirror = lookup
                        .get(&(c, r))
                        .copied()
                        .unwrap_or(Complex64::new(0.0, 0.0));
                    worst = worst.max((v - mirror.conj()).norm());
                }
                worst
            }
        }
    }
}

/// One-atom-per-row basis: every atom anywhere in its own row.
///
/// States enumerate in odometer order with the last row varying fastest.
#[derive(Debug, Clone)]
pub struct RowSectorBasis {
    n: usize,
    row_sites: Vec<Vec<i64>>,
    states: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl RowSectorBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(
                "lattice side must be at least 2".into(),
            ));
        }
        let row_sites: Vec<Vec<i64>> = (1..2 * n)
            .map(|r| {
                let (lo, hi) = crate::configspace::site_bounds(n, r);
                (lo..=hi).step_by(2).collect()
            })
            .collect();
        let dim: usize = row_sites.iter().map(|s| s.len()).product();
        if dim > SECTOR_STATE_CAP {
            return Err(Error::SizeCapExceeded {
                what: "one-atom-per-row states",
                needed: dim,
                cap: SECTOR_STATE_CAP,
            });
        }
        let rows = row_sites.len();
        let mut states = Vec::with_capacity(dim);
        let mut cur = vec![0u8; rows];
        loop {
            states.push(cur.clone());
            let mut r = rows;
            loop {
                if r == 0 {
                    break;
                }
                r -= 1;
                cur[r] += 1;
                if (cur[r] as usize) < row_sites[r].len() {
                    break;
                }
                cur[r] = 0;
                if r == 0 {
                    r = usize::MAX;
                    break;
                }
            }
            if r == usize::MAX {
                break;
            }
        }
        debug_assert_eq!(states.len(), dim);
        let index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(RowSectorBasis { n, row_sites, states, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    pub fn row_sites(&self) -> &[Vec<i64>] {
        &self.row_sites
    }

    /// Lattice `x` coordinate per row for one basis state.
    pub fn positions(&self, idx: usize) -> Vec<i64> {
        self.states[idx]
            .iter()
            .enumerate()
            .map(|(r, &s)| self.row_sites[r][s as usize])
            .collect()
    }

    pub fn index_of_positions(&self, xs: &[i64]) -> Option<usize> {
        let mut key = Vec::with_capacity(xs.len());
        for (r, &x) in xs.iter().enumerate() {
            let s = self.row_sites[r].iter().position(|&site| site == x)?;
            key.push(s as u8);
        }
        self.index.get(&key).copied()
    }

    /// Count of diagonal contacts between adjacent rows.
    pub fn bonds(&self, idx: usize) -> usize {
        let xs = self.positions(idx);
        xs.windows(2).filter(|w| (w[1] - w[0]).abs() == 1).count()
    }

    pub fn label(&self, idx: usize) -> String {
        self.positions(idx)
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Index of the state a chain word decodes to.
    pub fn embed_word(&self, word: &ChainWord) -> usize {
        self.index_of_positions(&word.decode_x())
            .expect("chain words decode to in-bounds positions")
    }
}

fn row_hop_edges(basis: &RowSectorBasis) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for i in 0..basis.dimension() {
        let state = &basis.states[i];
        for (r, sites) in basis.row_sites.iter().enumerate() {
            let s = state[r] as usize;
            if s + 1 < sites.len() {
                let mut next = state.clone();
                next[r] += 1;
                let j = basis.index[&next];
                edges.push((i as u32, j as u32));
            }
        }
    }
    edges
}

/// Hopping generator: each atom steps to the adjacent site in its row.
pub fn build_k(spec: &LatticeSpec, sector: Sector) -> Result<HermitianOperator> {
    match sector {
        Sector::Spinful => Err(Error::SectorMismatch(
            "spinful hopping is built by build_complete".into(),
        )),
        Sector::OneAtomPerRow => {
            let basis = RowSectorBasis::new(spec.n)?;
            let dim = basis.dimension();
            let labels = (0..dim).map(|i| basis.label(i)).collect();
            if dim <= DENSE_LIMIT {
                let mut m = RMatrix::zeros(dim, dim);
                for (a, b) in row_hop_edges(&basis) {
                    m[(a as usize, b as usize)] = 1.0;
                    m[(b as usize, a as usize)] = 1.0;
                }
                Ok(HermitianOperator::from_real(labels, &m))
            } else {
                let mut trip = Vec::new();
                for (a, b) in row_hop_edges(&basis) {
                    trip.push((a, b, Complex64::new(1.0, 0.0)));
                    trip.push((b, a, Complex64::new(1.0, 0.0)));
                }
                Ok(HermitianOperator::from_triplets(labels, trip))
            }
        }
        Sector::ConnectedChain => {
            let space = ConfigSpace::for_lattice(spec.n)?;
            let dim = space.dimension();
            let mut m = RMatrix::zeros(dim, dim);
            let moves = space.moves();
            for i in 0..dim {
                for &j in moves.neighbors(i) {
                    m[(i, j as usize)] = 1.0;
                }
            }
            let labels = space.words().iter().map(|w| w.to_string()).collect();
            Ok(HermitianOperator::from_real(labels, &m))
        }
    }
}

/// Binding potential: diagonal `E * (2m - bonds)`, zero on every connected
/// chain and at least `E` on every torn configuration.
pub fn build_hpot(spec: &LatticeSpec, e: f64, sector: Sector) -> Result<HermitianOperator> {
    if e <= 0.0 {
        return Err(Error::InvalidParameter(
            "binding energy must be positive".into(),
        ));
    }
    let full_bonds = 2 * spec.m();
    match sector {
        Sector::Spinful => Err(Error::SectorMismatch(
            "spinful potential is built by build_complete".into(),
        )),
        Sector::OneAtomPerRow => {
            let basis = RowSectorBasis::new(spec.n)?;
            let dim = basis.dimension();
            let labels = (0..dim).map(|i| basis.label(i)).collect();
            let mut m = RMatrix::zeros(dim, dim);
            for i in 0..dim {
                m[(i, i)] = e * (full_bonds - basis.bonds(i)) as f64;
            }
            Ok(HermitianOperator::from_real(labels, &m))
        }
        Sector::ConnectedChain => {
            let space = ConfigSpace::for_lattice(spec.n)?;
            let dim = space.dimension();
            let labels = space.words().iter().map(|w| w.to_string()).collect();
            Ok(HermitianOperator::from_real(labels, &RMatrix::zeros(dim, dim)))
        }
    }
}

/// Ground-sector projection of the hopping generator, computed honestly as
/// `P K P` on the one-atom-per-row sector and cross-checked against the
/// move-graph adjacency before returning.
pub fn effective_hamiltonian(spec: &LatticeSpec) -> Result<HermitianOperator> {
    let basis = RowSectorBasis::new(spec.n)?;
    let space = ConfigSpace::for_lattice(spec.n)?;
    let k = build_k(spec, Sector::OneAtomPerRow)?.dense()?;
    let dim = space.dimension();
    let embed: Vec<usize> = (0..dim)
        .map(|i| basis.embed_word(&space.word(i)))
        .collect();
    let mut projected = RMatrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            projected[(a, b)] = k[(embed[a], embed[b])].re;
        }
    }
    let moves = space.moves();
    for a in 0..dim {
        for b in 0..dim {
            let adj = if moves.neighbors(a).contains(&(b as u32)) {
                1.0
            } else {
                0.0
            };
            assert!(
                (projected[(a, b)] - adj).abs() <= 1e-12,
                "projected hopping disagrees with the move graph at ({a},{b})"
            );
        }
    }
    let labels = space.words().iter().map(|w| w.to_string()).collect();
    Ok(HermitianOperator::from_real(labels, &projected))
}

/// Spin-chain Hamiltonian on all `2^(2m)` words: adjacent `01`/`10` swaps.
pub fn build_hs(m: usize) -> Result<RMatrix> {
    if m < 1 {
        return Err(Error::InvalidParameter(
            "chain half-length must be at least 1".into(),
        ));
    }
    let len = 2 * m;
    let dim = 1usize << len;
    if dim > DENSE_LIMIT {
        return Err(Error::SizeCapExceeded {
            what: "spin-chain space",
            needed: dim,
            cap: DENSE_LIMIT,
        });
    }
    let mut h = RMatrix::zeros(dim, dim);
    for b in 0..dim as u32 {
        for p in 0..len - 1 {
            let hi = len - 1 - p;
            let lo = hi - 1;
            let b1 = (b >> hi) & 1;
            let b2 = (b >> lo) & 1;
            if b1 != b2 {
                let other = b ^ ((1 << hi) | (1 << lo));
                h[(other as usize, b as usize)] = 1.0;
            }
        }
    }
    Ok(h)
}

/// Rows/columns of `h` with word weight exactly `m`, in word order.
pub fn restrict_to_weight_sector(h: &RMatrix, m: usize) -> RMatrix {
    let len = 2 * m;
    let keep: Vec<usize> = (0..1u32 << len)
        .filter(|b| b.count_ones() == m as u32)
        .map(|b| b as usize)
        .collect();
    let d = keep.len();
    RMatrix::from_fn(d, d, |a, b| h[(keep[a], keep[b])])
}

/// Basis for the chain-position times spin space.
#[derive(Debug, Clone)]
pub struct SpinfulBasis {
    space: ConfigSpace,
    atoms: usize,
}

impl SpinfulBasis {
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        let space = ConfigSpace::for_lattice(spec.n)?;
        let atoms = 2 * spec.n - 1;
        let dim = (space.dimension() as u128) << atoms;
        if dim > DENSE_LIMIT as u128 {
            return Err(Error::SizeCapExceeded {
                what: "spinful states",
                needed: dim.min(usize::MAX as u128) as usize,
                cap: DENSE_LIMIT,
            });
        }
        Ok(SpinfulBasis { space, atoms })
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension() << self.atoms
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn config_space(&self) -> &ConfigSpace {
        &self.space
    }

    pub fn flat_index(&self, word_idx: usize, spins: u32) -> usize {
        (word_idx << self.atoms) | spins as usize
    }

    /// Label `word|spins` with `u` for up and `d` for down, rows top-first.
    pub fn label(&self, idx: usize) -> String {
        let spins = idx & ((1 << self.atoms) - 1);
        let word = self.space.word(idx >> self.atoms);
        let mut s = word.to_string();
        s.push('|');
        for r in 0..self.atoms {
            let bit = (spins >> (self.atoms - 1 - r)) & 1;
            s.push(if bit == 1 { 'd' } else { 'u' });
        }
        s
    }
}

fn spin_bit_shift(atoms: usize, row: usize) -> usize {
    atoms - row
}

/// Embeds a small operator acting on the spins of `rows` (top-first order)
/// into the full spin register, accumulating into `add` as triplets scaled
/// relative to one chain-word diagonal block.
fn embed_spin_operator(
    atoms: usize,
    rows: &[usize],
    small: &CMatrix,
    add: &mut Vec<(u32, u32, Complex64)>,
) {
    let spin_dim = 1usize << atoms;
    let k = rows.len();
    let small_dim = 1usize << k;
    assert_eq!(small.nrows(), small_dim);
    for s in 0..spin_dim {
        let mut local = 0usize;
        for &r in rows {
            local = (local << 1) | ((s >> spin_bit_shift(atoms, r)) & 1);
        }
        for target in 0..small_dim {
            let v = small[(target, local)];
            if v.norm() == 0.0 {
                continue;
            }
            let mut s2 = s;
            for (pos, &r) in rows.iter().enumerate() {
                let bit = (target >> (k - 1 - pos)) & 1;
                let shift = spin_bit_shift(atoms, r);
                s2 = (s2 & !(1usize << shift)) | (bit << shift);
            }
            add.push((s2 as u32, s as u32, v));
        }
    }
}

/// Complete Hamiltonian on the spinful sector: spin-conserving chain hopping
/// plus the stripe interactions, active only on configurations whose member
/// atoms sit in the stripe's columns.
pub fn build_complete(
    spec: &LatticeSpec,
    layout: &CircuitLayout,
) -> Result<HermitianOperator> {
    let basis = SpinfulBasis::new(spec)?;
    let space = basis.config_space();
    let atoms = basis.atoms();
    let spin_dim = 1usize << atoms;
    let dim = basis.dimension();
    let mut h = CMatrix::zeros(dim, dim);

    let moves = space.moves();
    for w in 0..space.dimension() {
        for &w2 in moves.neighbors(w) {
            for s in 0..spin_dim {
                h[(basis.flat_index(w2 as usize, s as u32), basis.flat_index(w, s as u32))] +=
                    Complex64::new(1.0, 0.0);
            }
        }
    }

    for stripe in &layout.stripes {
        let role_rows: Vec<usize> = match (&stripe.kind, stripe.role_rows()) {
            (StripeKind::TwoQubit, Some((outer, middle, trigger))) => {
                vec![outer, middle, trigger]
            }
            _ => stripe.rows.clone(),
        };
        let physical_rows: Vec<usize> =
            role_rows.iter().map(|&r| r + layout.band_offset).collect();
        for step in 0..stripe.l {
            let column = (stripe.columns.0 + step) as i64;
            let theta = if stripe.l == 1 {
                0.0
            } else {
                2.0 * std::f64::consts::PI * (stripe.l - 1 - step) as f64
                    / (stripe.l - 1) as f64
            };
            let coupling = stripe_coupling(&stripe.kind, stripe.phi, theta)?;
            let mut spin_triplets = Vec::new();
            embed_spin_operator(atoms, &physical_rows, &coupling, &mut spin_triplets);
            for w in 0..space.dimension() {
                let xs = space.word(w).decode_x();
                let aligned = physical_rows.iter().all(|&r| {
                    let (_, j) = diagonal_coords(spec.n, r, xs[r - 1]);
                    j == column
                });
                if !aligned {
                    continue;
                }
                for &(s2, s, v) in &spin_triplets {
                    h[(basis.flat_index(w, s2), basis.flat_index(w, s))] += v;
                }
            }
        }
    }

    let labels = (0..dim).map(|i| basis.label(i)).collect();
    Ok(HermitianOperator::from_dense(labels, h))
}

/// Spin coupling of one stripe column: the loop-family Hamiltonian at the
/// schedule angle reached when the chain occupies that column.
fn stripe_coupling(kind: &StripeKind, phi: f64, theta: f64) -> Result<CMatrix> {
    use crate::holonomy::{identity2, proj_up, rotated_axis, sigma_z};
    use crate::linalg::expmh;
    match kind {
        StripeKind::OneQubit { axis } => {
            let g0 = sigma_z().kronecker(&identity2()) + identity2().kronecker(&sigma_z());
            let x = crate::holonomy::axis_generator(*axis, phi);
            let r = expmh(&-&x, theta);
            Ok(&r * g0 * r.adjoint())
        }
        StripeKind::TwoQubit => {
            // Rows are (outer logical, middle logical, trigger); the middle
            // spin's rotating term is switched by the trigger being up.
            let i2 = identity2();
            let outer = sigma_z()
                .kronecker(&i2)
                .kronecker(&i2);
            let xt = rotated_axis(phi);
            let x = i2.kronecker(&xt).kronecker(&proj_up());
            let middle = i2.kronecker(&sigma_z()).kronecker(&i2);
            let r = expmh(&-&x, theta);
            Ok(outer + &r * middle * r.adjoint())
        }
        StripeKind::Block { name } => Err(Error::InvalidParameter(format!(
            "block stripe '{name}' has no spin realization"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configspace::binomial;
    use crate::linalg::op_norm_r;

    #[test]
    fn smallest_lattice_hopping_is_a_single_swap() {
        let spec = LatticeSpec::new(2, 1).unwrap();
        let k = build_k(&spec, Sector::ConnectedChain).unwrap();
        let m = k.dense().unwrap();
        assert_eq!(m.nrows(), 2);
        assert_eq!(m[(0, 1)].re, 1.0);
        assert_eq!(m[(1, 0)].re, 1.0);
        assert_eq!(m[(0, 0)].norm(), 0.0);
    }

    #[test]
    fn row_sector_dimensions_are_products_of_row_sizes() {
        let b3 = RowSectorBasis::new(3).unwrap();
        assert_eq!(b3.dimension(), 12);
        let b4 = RowSectorBasis::new(4).unwrap();
        assert_eq!(b4.dimension(), 144);
    }

    #[test]
    fn potential_vanishes_exactly_on_chains_and_jumps_off_them() {
        for n in [3usize, 4] {
            let spec = LatticeSpec::new(n, 1).unwrap();
            let basis = RowSectorBasis::new(n).unwrap();
            let space = ConfigSpace::for_lattice(n).unwrap();
            let hpot = build_hpot(&spec, 7.5, Sector::OneAtomPerRow)
                .unwrap()
                .dense()
                .unwrap();
            let chain_indices: Vec<usize> = (0..space.dimension())
                .map(|i| basis.embed_word(&space.word(i)))
                .collect();
            for i in 0..basis.dimension() {
                let d = hpot[(i, i)].re;
                if chain_indices.contains(&i) {
                    assert_eq!(d, 0.0);
                } else {
                    assert!(d >= 7.5);
                }
            }
        }
    }

    #[test]
    fn hopping_norm_stays_below_n_squared() {
        for n in [2usize, 3, 4] {
            let spec = LatticeSpec::new(n, 1).unwrap();
            let k = build_k(&spec, Sector::OneAtomPerRow).unwrap();
            let m = k.dense().unwrap().map(|v| v.re);
            assert!(op_norm_r(&m) <= (n * n) as f64 + 1e-9);
        }
    }

    #[test]
    fn spin_chain_commutes_with_weight() {
        let h = build_hs(2).unwrap();
        for b in 0..16u32 {
            for b2 in 0..16u32 {
                if h[(b2 as usize, b as usize)] != 0.0 {
                    assert_eq!(b.count_ones(), b2.count_ones());
                }
            }
        }
    }

    #[test]
    fn weight_sector_restriction_matches_move_graph() {
        for n in [2usize, 3, 4] {
            let m = n - 1;
            let hs = build_hs(m).unwrap();
            let sector = restrict_to_weight_sector(&hs, m);
            let space = ConfigSpace::new(m).unwrap();
            assert_eq!(sector.nrows(), space.dimension());
            for a in 0..sector.nrows() {
                for b in 0..sector.ncols() {
                    let adj = if space.moves().neighbors(a).contains(&(b as u32)) {
                        1.0
                    } else {
                        0.0
                    };
                    assert!((sector[(a, b)] - adj).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn sector_sizes_follow_binomials() {
        for m in 1..=4u64 {
            let space = ConfigSpace::new(m as usize).unwrap();
            assert_eq!(space.dimension() as u128, binomial(2 * m, m));
        }
    }
}
