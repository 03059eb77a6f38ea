//! Compiles logical circuits into interaction stripes on the lattice.
//!
//! Logical qubit `i` lives on band rows `2i-1` and `2i`, a band that is
//! centred on the widest rows of the lattice.  Rotations become two-row
//! stripes, conditional phases become three-row stripes whose trigger row
//! borrows one spin of the neighbouring qubit, and stripes are packed left
//! to right so that atoms sweep them in gate order.  Everything here stays
//! inside the circuit region `columns <= k`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::configspace::LatticeSpec;
use crate::error::{Error, Result};
use crate::holonomy::{self, Axis};
use crate::linalg::CMatrix;

/// One logical gate.  Conditional phases act between adjacent qubits; the
/// realized unitary conditions on the higher qubit and rotates the lower
/// one, whichever order the operands are written in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "kebab-case")]
pub enum Gate {
    RotX { qubit: usize, theta: f64 },
    RotY { qubit: usize, theta: f64 },
    CPhase { a: usize, b: usize, theta: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogicalCircuit {
    pub qubits: usize,
    pub gates: Vec<Gate>,
}

/// What a stripe does to the spins it covers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum StripeKind {
    OneQubit { axis: Axis },
    TwoQubit,
    Block { name: String },
}

/// One interaction stripe: consecutive band rows, a column span, the loop
/// parameter `phi` and the schedule length `l`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StripeSpec {
    pub kind: StripeKind,
    pub rows: Vec<usize>,
    pub columns: (usize, usize),
    pub phi: f64,
    pub l: usize,
}

impl StripeSpec {
    /// Rows of a three-row stripe in the order (outer logical, middle
    /// logical, trigger).  The trigger is the row left over once the stripe
    /// is aligned with the qubit pairing of odd/even band rows.
    pub fn role_rows(&self) -> Option<(usize, usize, usize)> {
        if self.rows.len() != 3 {
            return None;
        }
        let a = self.rows[0];
        if a % 2 == 1 {
            Some((a, a + 1, a + 2))
        } else {
            Some((a + 2, a + 1, a))
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitLayout {
    pub lattice: LatticeSpec,
    /// Band rows map to physical chain rows by adding this offset.
    pub band_offset: usize,
    /// Band row pair of each logical qubit, in qubit order.
    pub qubit_map: Vec<(usize, usize)>,
    pub stripes: Vec<StripeSpec>,
}

/// A rule broken by one stripe of a layout.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub stripe: usize,
    pub rule: String,
}

/// Wraps an angle into `(-pi, pi]`.
pub fn reduce_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut t = theta % two_pi;
    if t <= -std::f64::consts::PI {
        t += two_pi;
    } else if t > std::f64::consts::PI {
        t -= two_pi;
    }
    t
}

/// Loop parameter realizing `exp(i theta sigma)` on a rotation stripe.
pub fn rotation_phi(theta: f64) -> f64 {
    (reduce_angle(theta) / (2.0 * std::f64::consts::PI)).acos()
}

/// Loop parameter realizing a conditional `exp(i theta sigma_z)`.
pub fn conditional_phi(theta: f64) -> f64 {
    (reduce_angle(theta) / (2.0 * std::f64::consts::PI)).asin()
}

/// Columns of the physical row `p` that exist on an `n x n` lattice, before
/// the circuit-region clamp.
fn usable_columns(n: usize, p: usize) -> (usize, usize) {
    let lo = if p <= n { 1 + n - p } else { 1 };
    let hi = if p <= n { n } else { 2 * n - p };
    (lo, hi)
}

impl CircuitLayout {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Text map of the stripe placement, rows down, columns across.
    pub fn stripe_map(&self) -> String {
        const LABELS: &[u8] = b"123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
        let k = self.lattice.k;
        let max_row = self
            .stripes
            .iter()
            .flat_map(|s| s.rows.iter().copied())
            .max()
            .unwrap_or(0)
            .max(self.qubit_map.last().map(|&(_, b)| b).unwrap_or(0));
        let mut out = String::new();
        out.push_str("      ");
        for col in 1..=k {
            out.push(char::from_digit((col % 10) as u32, 10).unwrap());
        }
        out.push('\n');
        for row in 1..=max_row {
            out.push_str(&format!("row {row:>2} "));
            for col in 1..=k {
                let mut ch = '.';
                for (idx, stripe) in self.stripes.iter().enumerate() {
                    if stripe.rows.contains(&row)
                        && col >= stripe.columns.0
                        && col <= stripe.columns.1
                    {
                        ch = LABELS[idx % LABELS.len()] as char;
                    }
                }
                out.push(ch);
            }
            out.push('\n');
        }
        out
    }
}

/// Packs the gates of a circuit into stripes, left to right.
pub fn compile(
    circuit: &LogicalCircuit,
    spec: &LatticeSpec,
    l: usize,
) -> Result<CircuitLayout> {
    let n = spec.n;
    let q = circuit.qubits;
    if q < 1 {
        return Err(Error::InvalidParameter(
            "a circuit needs at least one qubit".into(),
        ));
    }
    if q > n - 1 {
        return Err(Error::InvalidParameter(format!(
            "{q} qubits need a lattice of side at least {}",
            q + 1
        )));
    }
    if l < 2 {
        return Err(Error::InvalidParameter(
            "stripe schedules need at least two steps".into(),
        ));
    }
    let band_offset = n - q;
    let band_rows = 2 * q;
    let mut next_free = vec![1usize; band_rows + 1];
    let mut stripes = Vec::with_capacity(circuit.gates.len());
    for gate in &circuit.gates {
        let (rows, kind, phi) = match *gate {
            Gate::RotX { qubit, theta } => {
                check_qubit(qubit, q)?;
                (
                    vec![2 * qubit - 1, 2 * qubit],
                    StripeKind::OneQubit { axis: Axis::X },
                    rotation_phi(theta),
                )
            }
            Gate::RotY { qubit, theta } => {
                check_qubit(qubit, q)?;
                (
                    vec![2 * qubit - 1, 2 * qubit],
                    StripeKind::OneQubit { axis: Axis::Y },
                    rotation_phi(theta),
                )
            }
            Gate::CPhase { a, b, theta } => {
                check_qubit(a, q)?;
                check_qubit(b, q)?;
                if a.abs_diff(b) != 1 {
                    return Err(Error::InvalidParameter(format!(
                        "conditional phase needs adjacent qubits, got {a} and {b}"
                    )));
                }
                let lo = a.min(b);
                let hi = a.max(b);
                (
                    vec![2 * lo - 1, 2 * lo, 2 * hi - 1],
                    StripeKind::TwoQubit,
                    conditional_phi(theta),
                )
            }
        };
        let mut start = 1;
        let mut geom_hi = usize::MAX;
        for &row in &rows {
            let (lo, hi) = usable_columns(n, row + band_offset);
            start = start.max(next_free[row]).max(lo);
            geom_hi = geom_hi.min(hi);
        }
        let end = start + l - 1;
        if end > geom_hi {
            return Err(Error::InvalidParameter(format!(
                "stripe of length {l} starting at column {start} runs past the lattice rows"
            )));
        }
        if end > spec.k {
            return Err(Error::RegionOverflow { needed_k: end, k: spec.k });
        }
        for &row in &rows {
            next_free[row] = end + 1;
        }
        stripes.push(StripeSpec { kind, rows, columns: (start, end), phi, l });
    }
    Ok(CircuitLayout {
        lattice: *spec,
        band_offset,
        qubit_map: (1..=q).map(|i| (2 * i - 1, 2 * i)).collect(),
        stripes,
    })
}

fn check_qubit(qubit: usize, q: usize) -> Result<()> {
    if qubit < 1 || qubit > q {
        Err(Error::InvalidParameter(format!(
            "qubit {qubit} outside 1..={q}"
        )))
    } else {
        Ok(())
    }
}

/// Checks one layout against the placement rules; an empty list is a pass.
pub fn validate(layout: &CircuitLayout) -> Vec<Violation> {
    let n = layout.lattice.n;
    let k = layout.lattice.k;
    let mut violations = Vec::new();
    let mut push = |stripe: usize, rule: String| violations.push(Violation { stripe, rule });
    for (idx, stripe) in layout.stripes.iter().enumerate() {
        let expected_rows = match stripe.kind {
            StripeKind::OneQubit { .. } => Some(2),
            StripeKind::TwoQubit => Some(3),
            StripeKind::Block { .. } => None,
        };
        if let Some(count) = expected_rows {
            if stripe.rows.len() != count {
                push(idx, format!("needs {count} rows, has {}", stripe.rows.len()));
            }
        }
        if stripe.rows.is_empty() {
            push(idx, "covers no rows".into());
            continue;
        }
        if !stripe.rows.windows(2).all(|w| w[1] == w[0] + 1) {
            push(idx, "rows are not consecutive".into());
        }
        let (c0, c1) = stripe.columns;
        if c0 < 1 || c1 < c0 {
            push(idx, "column span is empty or starts before column 1".into());
        }
        if c1 > k {
            push(idx, format!("columns reach {c1}, past the region bound {k}"));
        }
        if stripe.l != c1 - c0 + 1 {
            push(idx, "schedule length disagrees with the column span".into());
        }
        if !stripe.phi.is_finite() {
            push(idx, "loop parameter is not finite".into());
        }
        let pinned_rows_allowed = matches!(stripe.kind, StripeKind::Block { .. });
        for &row in &stripe.rows {
            let p = row + layout.band_offset;
            if p < 1 || p > 2 * n - 1 || (!pinned_rows_allowed && (p < 2 || p > 2 * n - 2)) {
                push(idx, format!("row {row} maps outside the movable rows"));
                continue;
            }
            let (lo, hi) = usable_columns(n, p);
            if c0 < lo || c1 > hi {
                push(idx, format!("columns leave the usable span of row {row}"));
            }
        }
        for (jdx, other) in layout.stripes.iter().enumerate().skip(idx + 1) {
            let shared: Vec<usize> = stripe
                .rows
                .iter()
                .copied()
                .filter(|r| other.rows.contains(r))
                .collect();
            if shared.is_empty() {
                continue;
            }
            let (d0, d1) = other.columns;
            if c1 >= d0 && d1 >= c0 {
                push(idx, format!("overlaps stripe {jdx} on row {}", shared[0]));
            } else if d1 < c0 {
                push(
                    idx,
                    format!("comes before stripe {jdx} on row {} but sits at later columns", shared[0]),
                );
            }
        }
    }
    violations
}

/// Staggered block tiling that iterates a two-layer cellular automaton:
/// `U` blocks pair cells (1,2), (3,4), ... on odd column groups, `V` blocks
/// pair cells (2,3), (4,5), ... on even ones, each block one column wide.
pub fn margolus_tiling(
    spec: &LatticeSpec,
    ca_steps: usize,
    cell_rows: usize,
) -> Result<CircuitLayout> {
    let n = spec.n;
    if cell_rows < 1 {
        return Err(Error::InvalidParameter(
            "cells need at least one row".into(),
        ));
    }
    let num_cells = n / cell_rows;
    if ca_steps > 0 && num_cells < 2 {
        return Err(Error::InvalidParameter(format!(
            "cells of {cell_rows} rows leave fewer than two cells on side {n}"
        )));
    }
    if 2 * ca_steps > spec.k {
        return Err(Error::RegionOverflow { needed_k: 2 * ca_steps, k: spec.k });
    }
    let mut stripes = Vec::new();
    for s in 1..=ca_steps {
        for (name, column, first_cell) in [("U", 2 * s - 1, 1), ("V", 2 * s, 2)] {
            let base = n + 1 - column;
            let mut cell = first_cell;
            while cell + 1 <= num_cells {
                let start = base + (cell - 1) * cell_rows;
                let rows: Vec<usize> = (start..start + 2 * cell_rows).collect();
                stripes.push(StripeSpec {
                    kind: StripeKind::Block { name: name.into() },
                    rows,
                    columns: (column, column),
                    phi: 0.0,
                    l: 1,
                });
                cell += 2;
            }
        }
    }
    Ok(CircuitLayout {
        lattice: *spec,
        band_offset: 0,
        qubit_map: Vec::new(),
        stripes,
    })
}

fn embed_one_qubit(q: usize, qubit: usize, g: &CMatrix) -> CMatrix {
    let dim = 1usize << q;
    let shift = q - qubit;
    CMatrix::from_fn(dim, dim, |r, c| {
        if (r & !(1 << shift)) != (c & !(1 << shift)) {
            return num_complex::Complex64::new(0.0, 0.0);
        }
        g[((r >> shift) & 1, (c >> shift) & 1)]
    })
}

fn embed_conditional(q: usize, cond: usize, cond_value: usize, rot: usize, g: &CMatrix) -> CMatrix {
    let dim = 1usize << q;
    let cond_shift = q - cond;
    let rot_shift = q - rot;
    CMatrix::from_fn(dim, dim, |r, c| {
        let zero = num_complex::Complex64::new(0.0, 0.0);
        let one = num_complex::Complex64::new(1.0, 0.0);
        if (r & !(1 << rot_shift)) != (c & !(1 << rot_shift)) {
            return zero;
        }
        if (c >> cond_shift) & 1 == cond_value {
            g[((r >> rot_shift) & 1, (c >> rot_shift) & 1)]
        } else if r == c {
            one
        } else {
            zero
        }
    })
}

impl Gate {
    /// Unitary this gate realizes on the full register, qubit 1 most
    /// significant.
    pub fn realized_unitary(&self, qubits: usize) -> CMatrix {
        match *self {
            Gate::RotX { qubit, theta } => {
                embed_one_qubit(qubits, qubit, &holonomy::rotation_unitary(Axis::X, theta))
            }
            Gate::RotY { qubit, theta } => {
                embed_one_qubit(qubits, qubit, &holonomy::rotation_unitary(Axis::Y, theta))
            }
            Gate::CPhase { a, b, theta } => {
                let lo = a.min(b);
                let hi = a.max(b);
                let phase = linalg_rotation_z(theta);
                embed_conditional(qubits, hi, 1, lo, &phase)
            }
        }
    }
}

fn linalg_rotation_z(theta: f64) -> CMatrix {
    crate::linalg::expmh(&holonomy::sigma_z(), -theta)
}

/// Product of the realized gate unitaries in circuit order.
pub fn circuit_unitary(circuit: &LogicalCircuit) -> Result<CMatrix> {
    if circuit.qubits > 12 {
        return Err(Error::SizeCapExceeded {
            what: "dense circuit unitary",
            needed: 1usize << circuit.qubits,
            cap: 1 << 12,
        });
    }
    let dim = 1usize << circuit.qubits;
    let mut u = CMatrix::identity(dim, dim);
    for gate in &circuit.gates {
        u = gate.realized_unitary(circuit.qubits) * u;
    }
    Ok(u)
}

/// Adiabatic target of one stripe on the logical register.
pub fn stripe_target_unitary(stripe: &StripeSpec, qubits: usize) -> Result<CMatrix> {
    match &stripe.kind {
        StripeKind::OneQubit { axis } => {
            let qubit = (stripe.rows[0] + 1) / 2;
            let theta = 2.0 * std::f64::consts::PI * stripe.phi.cos();
            Ok(embed_one_qubit(
                qubits,
                qubit,
                &holonomy::rotation_unitary(*axis, theta),
            ))
        }
        StripeKind::TwoQubit => {
            let (_, middle, trigger) = stripe.role_rows().ok_or_else(|| {
                Error::InvalidParameter("two-qubit stripe needs three rows".into())
            })?;
            let theta = 2.0 * std::f64::consts::PI * stripe.phi.sin();
            let cond_qubit = (trigger + 1) / 2;
            let rot_qubit = (middle + 1) / 2;
            if trigger > middle {
                // The trigger is the upper spin of the higher qubit, which
                // points up exactly on that qubit's logical-one state.
                Ok(embed_conditional(
                    qubits,
                    cond_qubit,
                    1,
                    rot_qubit,
                    &linalg_rotation_z(theta),
                ))
            } else {
                // The trigger is the lower spin of the lower qubit, which
                // points up on logical zero, and the rotated pair reads its
                // code reversed.
                Ok(embed_conditional(
                    qubits,
                    cond_qubit,
                    0,
                    rot_qubit,
                    &linalg_rotation_z(-theta),
                ))
            }
        }
        StripeKind::Block { name } => Err(Error::InvalidParameter(format!(
            "block stripe '{name}' has no logical target"
        ))),
    }
}

/// Product of the stripe targets in placement order.
pub fn layout_unitary(layout: &CircuitLayout) -> Result<CMatrix> {
    let qubits = layout.qubit_map.len();
    if qubits == 0 {
        return Err(Error::InvalidParameter(
            "layout carries no qubit map".into(),
        ));
    }
    let dim = 1usize << qubits;
    let mut u = CMatrix::identity(dim, dim);
    for stripe in &layout.stripes {
        u = stripe_target_unitary(stripe, qubits)? * u;
    }
    Ok(u)
}

/// Random circuit whose conditional phases only touch adjacent qubits.
pub fn random_adjacent_circuit<R: Rng + ?Sized>(
    qubits: usize,
    gates: usize,
    rng: &mut R,
) -> LogicalCircuit {
    let pi = std::f64::consts::PI;
    let mut out = Vec::with_capacity(gates);
    for _ in 0..gates {
        let kind = if qubits < 2 {
            rng.random_range(0..2)
        } else {
            rng.random_range(0..3)
        };
        let theta = rng.random_range(-pi..pi);
        out.push(match kind {
            0 => Gate::RotX { qubit: rng.random_range(1..=qubits), theta },
            1 => Gate::RotY { qubit: rng.random_range(1..=qubits), theta },
            _ => {
                let lo = rng.random_range(1..qubits);
                Gate::CPhase { a: lo, b: lo + 1, theta }
            }
        });
    }
    LogicalCircuit { qubits, gates: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_rotation_compiles_to_the_leading_columns() {
        let spec = LatticeSpec::new(8, 7).unwrap();
        let circuit = LogicalCircuit {
            qubits: 1,
            gates: vec![Gate::RotX { qubit: 1, theta: std::f64::consts::FRAC_PI_2 }],
        };
        let layout = compile(&circuit, &spec, 7).unwrap();
        assert_eq!(layout.stripes.len(), 1);
        let stripe = &layout.stripes[0];
        assert_eq!(stripe.rows, vec![1, 2]);
        assert_eq!(stripe.columns, (1, 7));
        assert!((stripe.phi - (0.25_f64).acos()).abs() <= 1e-12);
        assert!(validate(&layout).is_empty());
    }

    #[test]
    fn conditional_phase_uses_three_rows_and_the_sine_parameter() {
        let spec = LatticeSpec::new(8, 7).unwrap();
        let circuit = LogicalCircuit {
            qubits: 2,
            gates: vec![Gate::CPhase { a: 1, b: 2, theta: std::f64::consts::PI }],
        };
        let layout = compile(&circuit, &spec, 4).unwrap();
        let stripe = &layout.stripes[0];
        assert_eq!(stripe.rows, vec![1, 2, 3]);
        assert!((stripe.phi - std::f64::consts::FRAC_PI_6).abs() <= 1e-12);
        assert!(validate(&layout).is_empty());
    }

    #[test]
    fn gates_on_shared_rows_pack_left_to_right() {
        let spec = LatticeSpec::new(12, 11).unwrap();
        let circuit = LogicalCircuit {
            qubits: 2,
            gates: vec![
                Gate::RotX { qubit: 1, theta: 0.3 },
                Gate::CPhase { a: 1, b: 2, theta: 0.9 },
                Gate::RotY { qubit: 2, theta: -1.2 },
            ],
        };
        let layout = compile(&circuit, &spec, 3).unwrap();
        assert!(validate(&layout).is_empty());
        let cols: Vec<(usize, usize)> = layout.stripes.iter().map(|s| s.columns).collect();
        assert!(cols[0].1 < cols[1].0);
        assert!(cols[1].1 < cols[2].0);
    }

    #[test]
    fn overflowing_the_region_names_the_needed_width() {
        let spec = LatticeSpec::new(8, 3).unwrap();
        let circuit = LogicalCircuit {
            qubits: 1,
            gates: vec![Gate::RotX { qubit: 1, theta: 1.0 }],
        };
        match compile(&circuit, &spec, 7) {
            Err(Error::RegionOverflow { needed_k, k }) => {
                assert_eq!(needed_k, 7);
                assert_eq!(k, 3);
            }
            other => panic!("expected a region overflow, got {other:?}"),
        }
    }

    #[test]
    fn nonadjacent_conditional_phases_are_rejected() {
        let spec = LatticeSpec::new(8, 7).unwrap();
        let circuit = LogicalCircuit {
            qubits: 3,
            gates: vec![Gate::CPhase { a: 1, b: 3, theta: 0.5 }],
        };
        assert!(compile(&circuit, &spec, 4).is_err());
    }

    #[test]
    fn angle_reduction_lands_in_the_principal_branch() {
        assert!((reduce_angle(3.0 * std::f64::consts::PI) - std::f64::consts::PI).abs() <= 1e-12);
        assert!((reduce_angle(-std::f64::consts::PI) - std::f64::consts::PI).abs() <= 1e-12);
        assert!(reduce_angle(0.4).abs() - 0.4 <= 1e-12);
        let reduced = reduce_angle(-7.0);
        assert!(reduced > -std::f64::consts::PI && reduced <= std::f64::consts::PI);
    }

    #[test]
    fn validate_flags_region_and_overlap_breaks() {
        let spec = LatticeSpec::new(8, 4).unwrap();
        let layout = CircuitLayout {
            lattice: spec,
            band_offset: 7,
            qubit_map: vec![(1, 2)],
            stripes: vec![
                StripeSpec {
                    kind: StripeKind::OneQubit { axis: Axis::X },
                    rows: vec![1, 2],
                    columns: (1, 6),
                    phi: 1.0,
                    l: 6,
                },
                StripeSpec {
                    kind: StripeKind::OneQubit { axis: Axis::Y },
                    rows: vec![1, 2],
                    columns: (2, 3),
                    phi: 1.0,
                    l: 2,
                },
            ],
        };
        let violations = validate(&layout);
        assert!(violations.iter().any(|v| v.rule.contains("region")));
        assert!(violations.iter().any(|v| v.rule.contains("overlaps")));
    }

    #[test]
    fn tiling_alternates_block_layers_periodically() {
        let spec = LatticeSpec::new(8, 4).unwrap();
        let layout = margolus_tiling(&spec, 2, 2).unwrap();
        assert!(validate(&layout).is_empty());
        let u_blocks: Vec<&StripeSpec> = layout
            .stripes
            .iter()
            .filter(|s| s.kind == StripeKind::Block { name: "U".into() })
            .collect();
        let v_blocks: Vec<&StripeSpec> = layout
            .stripes
            .iter()
            .filter(|s| s.kind == StripeKind::Block { name: "V".into() })
            .collect();
        assert_eq!(u_blocks.len(), 4);
        assert_eq!(v_blocks.len(), 2);
        for pair in u_blocks.chunks(2) {
            if pair.len() == 2 && pair[0].columns == pair[1].columns {
                assert_eq!(pair[1].rows[0] - pair[0].rows[0], 4);
            }
        }
        assert!(margolus_tiling(&spec, 0, 2).unwrap().stripes.is_empty());
        assert!(matches!(
            margolus_tiling(&spec, 3, 2),
            Err(Error::RegionOverflow { needed_k: 6, k: 4 })
        ));
    }

    #[test]
    fn layout_json_round_trips() {
        let spec = LatticeSpec::new(8, 7).unwrap();
        let circuit = LogicalCircuit {
            qubits: 2,
            gates: vec![
                Gate::RotY { qubit: 2, theta: 0.7 },
                Gate::CPhase { a: 2, b: 1, theta: -0.4 },
            ],
        };
        let layout = compile(&circuit, &spec, 3).unwrap();
        let text = layout.to_json().unwrap();
        let back = CircuitLayout::from_json(&text).unwrap();
        assert_eq!(back.stripes.len(), layout.stripes.len());
        assert_eq!(back.band_offset, layout.band_offset);
        assert_eq!(back.stripes[1].rows, layout.stripes[1].rows);
        assert_eq!(back.stripes[1].columns, layout.stripes[1].columns);
    }
}
