//! Classical stochastic counterpart of the chain walk.
//!
//! One atom per row moves on a two-colored board, stepping one column at a
//! time.  An atom leaving a white site needs its neighbors level with it
//! before the step; an atom leaving a black site needs them level with the
//! site it lands on.  These rules conserve a three-part interaction energy,
//! keep adjacent atoms within one column of each other, and make the
//! reachable set an undirected graph whose uniform distribution is
//! stationary under the continuous-time walk.

use std::collections::{HashMap, VecDeque};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, RMatrix, SparseSym, DENSE_LIMIT};

/// Default ceiling on the reachable-state enumeration.
pub const NODE_CAP: usize = 200_000;

/// Black squares satisfy `(row + col) % 2 == 0` with rows and columns
/// counted from one.
pub fn is_black(row: usize, col: usize) -> bool {
    (row + col) % 2 == 0
}

/// The reachable configuration graph of a board.
#[derive(Debug, Clone)]
pub struct ClassicalWalk {
    rows: usize,
    cols: usize,
    nodes: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
    adjacency: SparseSym,
}

impl ClassicalWalk {
    /// Enumerates every configuration reachable from the all-in-column-one
    /// start by breadth-first search, then canonicalizes the node order.
    pub fn build(rows: usize, cols: usize, node_cap: usize) -> Result<Self> {
        if rows < 2 || rows % 2 != 0 {
            return Err(Error::InvalidParameter(
                "the board needs a positive even number of rows".into(),
            ));
        }
        if cols < 2 {
            return Err(Error::InvalidParameter(
                "the board needs at least two columns".into(),
            ));
        }
        let start = Self::initial_state(rows);
        let mut seen: HashMap<Vec<u16>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone(), ());
        queue.push_back(start);
        let mut raw_edges: Vec<(Vec<u16>, Vec<u16>)> = Vec::new();
        while let Some(state) = queue.pop_front() {
            for next in allowed_steps(rows, cols, &state) {
                raw_edges.push((state.clone(), next.clone()));
                if !seen.contains_key(&next) {
                    if seen.len() >= node_cap {
                        return Err(Error::NodeCapExceeded { cap: node_cap });
                    }
                    seen.insert(next.clone(), ());
                    queue.push_back(next);
                }
            }
        }
        let mut nodes: Vec<Vec<u16>> = seen.into_keys().collect();
        nodes.sort();
        let index: HashMap<Vec<u16>, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut edges: Vec<(u32, u32)> = raw_edges
            .into_iter()
            .map(|(a, b)| {
                let (ia, ib) = (index[&a] as u32, index[&b] as u32);
                (ia.min(ib), ia.max(ib))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let adjacency = SparseSym::from_edges(nodes.len(), &edges);
        Ok(ClassicalWalk { rows, cols, nodes, index, adjacency })
    }

    pub fn initial_state(rows: usize) -> Vec<u16> {
        vec![1; rows]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.nnz() / 2
    }

    pub fn nodes(&self) -> &[Vec<u16>] {
        &self.nodes
    }

    pub fn adjacency(&self) -> &SparseSym {
        &self.adjacency
    }

    pub fn index_of(&self, state: &[u16]) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// Undirected edges as pairs of node indices, each listed once.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.node_count() {
            for &b in self.adjacency.neighbors(a) {
                if (a as u32) < b {
                    out.push((a, b as usize));
                }
            }
        }
        out
    }

    /// Interaction energy in units of the coupling: black sites bind twice,
    /// level neighbors bind once, and black boundary rows pay a penalty.
    pub fn energy_units(&self, state: &[u16]) -> i64 {
        energy_units(self.rows, state)
    }

    /// Energy shared by every reachable configuration.
    pub fn conserved_energy_units(&self) -> i64 {
        -2 * (self.rows as i64 - 1)
    }

    /// Point reflection: rows reversed and columns mirrored.
    pub fn point_reflection(&self, state: &[u16]) -> Vec<u16> {
        let mut out = vec![0u16; self.rows];
        for (r, &c) in state.iter().enumerate() {
            out[self.rows - 1 - r] = (self.cols as u16) + 1 - c;
        }
        out
    }

    /// Whether the point reflection permutes the nodes and preserves edges.
    pub fn reflection_is_automorphism(&self) -> bool {
        let mapped: Vec<Option<usize>> = self
            .nodes
            .iter()
            .map(|s| self.index_of(&self.point_reflection(s)))
            .collect();
        if mapped.iter().any(|m| m.is_none()) {
            return false;
        }
        for (a, b) in self.edges() {
            let (ma, mb) = (mapped[a].unwrap(), mapped[b].unwrap());
            if !self
                .adjacency
                .neighbors(ma)
                .contains(&(mb as u32))
            {
                return false;
            }
        }
        true
    }

    /// Uniform distribution over the reachable set.
    pub fn stationary(&self) -> Vec<f64> {
        vec![1.0 / self.node_count() as f64; self.node_count()]
    }

    /// Distribution after time `t` under the Laplacian heat semigroup,
    /// started from the all-in-column-one state.
    pub fn evolve(&self, t: f64) -> Result<Vec<f64>> {
        if t < 0.0 {
            return Err(Error::InvalidParameter(
                "evolution time must be nonnegative".into(),
            ));
        }
        let dim = self.node_count();
        if dim > DENSE_LIMIT {
            return Err(Error::SizeCapExceeded {
                what: "dense heat-kernel evolution",
                needed: dim,
                cap: DENSE_LIMIT,
            });
        }
        let (vals, vecs) = linalg::eigh(&self.laplacian());
        let start = self.index[&Self::initial_state(self.rows)];
        let mut p = vec![0.0; dim];
        for r in 0..dim {
            let weight = vecs[(start, r)] * (-vals[r] * t).exp();
            for (node, out) in p.iter_mut().enumerate() {
                *out += vecs[(node, r)] * weight;
            }
        }
        Ok(p)
    }

    /// Graph Laplacian `D - A` of the move graph.
    pub fn laplacian(&self) -> RMatrix {
        let dim = self.node_count();
        assert!(dim <= DENSE_LIMIT, "dense Laplacian over the size cap");
        let mut l = RMatrix::zeros(dim, dim);
        for a in 0..dim {
            l[(a, a)] = self.adjacency.degree(a) as f64;
            for &b in self.adjacency.neighbors(a) {
                l[(a, b as usize)] = -1.0;
            }
        }
        l
    }

    /// Multiplicity of the Laplacian zero eigenvalue.
    pub fn kernel_dimension(&self) -> Result<usize> {
        let dim = self.node_count();
        if dim > DENSE_LIMIT {
            return Err(Error::SizeCapExceeded {
                what: "dense Laplacian spectrum",
                needed: dim,
                cap: DENSE_LIMIT,
            });
        }
        let (vals, _) = linalg::eigh(&self.laplacian());
        Ok(vals.iter().filter(|&&v| v.abs() <= 1e-9).count())
    }

    /// Probability mass on configurations with every atom past column `k`.
    pub fn outside_probability(&self, p: &[f64], k: usize) -> f64 {
        self.nodes
            .iter()
            .zip(p)
            .filter(|(s, _)| s.iter().all(|&c| c as usize > k))
            .map(|(_, &w)| w)
            .sum()
    }

    pub fn stationary_outside_probability(&self, k: usize) -> f64 {
        self.outside_probability(&self.stationary(), k)
    }

    /// All single-atom column steps out of a state that the rules forbid.
    pub fn forbidden_steps(&self, state: &[u16]) -> Vec<Vec<u16>> {
        let allowed = allowed_steps(self.rows, self.cols, state);
        let mut out = Vec::new();
        for r in 0..self.rows {
            for dc in [-1i32, 1] {
                let target = state[r] as i32 + dc;
                if target < 1 || target > self.cols as i32 {
                    continue;
                }
                let mut next = state.to_vec();
                next[r] = target as u16;
                if !allowed.contains(&next) {
                    out.push(next);
                }
            }
        }
        out
    }
}

fn energy_units(rows: usize, state: &[u16]) -> i64 {
    let mut black = 0i64;
    let mut level = 0i64;
    let mut boundary = 0i64;
    for (r, &c) in state.iter().enumerate() {
        if is_black(r + 1, c as usize) {
            black += 1;
            if r == 0 || r == rows - 1 {
                boundary += 1;
            }
        }
    }
    for pair in state.windows(2) {
        if pair[0] == pair[1] {
            level += 1;
        }
    }
    -2 * black - level + boundary
}

/// Moves available to one configuration under the leveling rules.
fn allowed_steps(rows: usize, cols: usize, state: &[u16]) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for r in 0..rows {
        let c = state[r] as i32;
        for dc in [-1i32, 1] {
            let target = c + dc;
            if target < 1 || target > cols as i32 {
                continue;
            }
            let reference = if is_black(r + 1, c as usize) {
                target
            } else {
                c
            };
            let mut level = true;
            if r > 0 && state[r - 1] as i32 != reference {
                level = false;
            }
            if r + 1 < rows && state[r + 1] as i32 != reference {
                level = false;
            }
            if level {
                let mut next = state.to_vec();
                next[r] = target as u16;
                out.push(next);
            }
        }
    }
    out
}

/// Heat-kernel sweep used for relaxation plots.
pub fn relaxation_profile(walk: &ClassicalWalk, ts: &[f64]) -> Result<Vec<(f64, f64)>> {
    let uniform = walk.stationary();
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        let p = walk.evolve(t)?;
        let dist: f64 = p
            .iter()
            .zip(&uniform)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            / 2.0;
        out.push((t, dist));
    }
    Ok(out)
}

/// Quantum walk on the same graph, for side-by-side comparison.
pub fn coherent_escape_probability(walk: &ClassicalWalk, t: f64, k: usize) -> Result<f64> {
    let dim = walk.node_count();
    if dim > DENSE_LIMIT {
        return Err(Error::SizeCapExceeded {
            what: "dense coherent evolution",
            needed: dim,
            cap: DENSE_LIMIT,
        });
    }
    let (vals, vecs) = linalg::eigh(&walk.adjacency().to_dense());
    let start = walk.index_of(&ClassicalWalk::initial_state(walk.rows())).unwrap();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for r in 0..dim {
        let phase = Complex64::from_polar(vecs[(start, r)], -vals[r] * t);
        for (node, out) in amps.iter_mut().enumerate() {
            *out += vecs[(node, r)] * phase;
        }
    }
    Ok(walk
        .nodes()
        .iter()
        .zip(&amps)
        .filter(|(s, _)| s.iter().all(|&c| c as usize > k))
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_board_graph_matches_hand_enumeration() {
        let walk = ClassicalWalk::build(2, 2, NODE_CAP).unwrap();
        assert_eq!(walk.node_count(), 3);
        assert_eq!(walk.edge_count(), 2);
    }

    #[test]
    fn known_boards_have_the_expected_graphs() {
        let wide = ClassicalWalk::build(2, 8, NODE_CAP).unwrap();
        assert_eq!(wide.node_count(), 15);
        assert_eq!(wide.edge_count(), 14);
        let tall = ClassicalWalk::build(4, 12, NODE_CAP).unwrap();
        assert_eq!(tall.node_count(), 127);
        assert_eq!(tall.edge_count(), 208);
    }

    #[test]
    fn adjacent_atoms_stay_within_one_column() {
        let walk = ClassicalWalk::build(4, 12, NODE_CAP).unwrap();
        for node in walk.nodes() {
            for pair in node.windows(2) {
                assert!((pair[0] as i32 - pair[1] as i32).abs() <= 1);
            }
        }
    }

    #[test]
    fn white_occupied_rows_are_level_with_their_neighbors() {
        let walk = ClassicalWalk::build(4, 12, NODE_CAP).unwrap();
        for node in walk.nodes() {
            for (r, &c) in node.iter().enumerate() {
                if !is_black(r + 1, c as usize) {
                    if r > 0 {
                        assert_eq!(node[r - 1], c);
                    }
                    if r + 1 < node.len() {
                        assert_eq!(node[r + 1], c);
                    }
                }
            }
        }
    }

    #[test]
    fn reachable_states_share_one_energy_and_forbidden_steps_leave_it() {
        for (rows, cols) in [(2usize, 8usize), (4, 12)] {
            let walk = ClassicalWalk::build(rows, cols, NODE_CAP).unwrap();
            let conserved = walk.conserved_energy_units();
            for node in walk.nodes() {
                assert_eq!(walk.energy_units(node), conserved);
                for bad in walk.forbidden_steps(node) {
                    assert!(walk.energy_units(&bad) > conserved);
                }
            }
        }
    }

    #[test]
    fn reflection_is_a_graph_automorphism() {
        for (rows, cols) in [(2usize, 8usize), (4, 12)] {
            let walk = ClassicalWalk::build(rows, cols, NODE_CAP).unwrap();
            assert!(walk.reflection_is_automorphism());
        }
    }

    #[test]
    fn heat_kernel_relaxes_to_uniform() {
        let walk = ClassicalWalk::build(2, 8, NODE_CAP).unwrap();
        let p = walk.evolve(0.7).unwrap();
        assert!(p.iter().all(|&v| v >= -1e-12));
        assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
        let late = walk.evolve(1e4).unwrap();
        for (a, b) in late.iter().zip(walk.stationary()) {
            assert!((a - b).abs() <= 1e-8);
        }
        assert_eq!(walk.kernel_dimension().unwrap(), 1);
    }

    #[test]
    fn region_zero_is_always_escaped() {
        let walk = ClassicalWalk::build(2, 8, NODE_CAP).unwrap();
        assert!((walk.stationary_outside_probability(0) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn stationary_escape_matches_the_counting_fractions() {
        let wide = ClassicalWalk::build(2, 8, NODE_CAP).unwrap();
        assert!((wide.stationary_outside_probability(1) - 13.0 / 15.0).abs() <= 1e-12);
        let tall = ClassicalWalk::build(4, 12, NODE_CAP).unwrap();
        assert!((tall.stationary_outside_probability(1) - 115.0 / 127.0).abs() <= 1e-12);
    }

    #[test]
    fn node_cap_is_respected() {
        match ClassicalWalk::build(4, 12, 50) {
            Err(Error::NodeCapExceeded { cap }) => assert_eq!(cap, 50),
            other => panic!("expected the node cap to trip, got {other:?}"),
        }
    }
}
