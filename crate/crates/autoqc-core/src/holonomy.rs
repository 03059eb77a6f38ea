//! Holonomy integration of interaction-stripe schedules.
//!
//! A stripe drags a one-parameter family of spin couplings `H(theta) =
//! R(theta) G0 R(theta)^dag` across the chain, with `theta` running from
//! `2 pi` down to `0` as the atoms traverse the stripe columns.  Integrating
//! the resulting piecewise evolution and projecting onto the degenerate code
//! space of `G0` yields the implemented logical gate; this module computes
//! those gates, their targets, leakage out of the code space, robustness
//! against step-duration jitter, and a small universality witness.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Default number of schedule steps per stripe.
pub const DEFAULT_STEPS: usize = 400;
/// Default dwell time per schedule step.
pub const DEFAULT_TAU: f64 = 5.0;

/// Which logical axis a single-qubit stripe rotates about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity2() -> CMatrix {
    CMatrix::identity(2, 2)
}

pub fn sigma_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn sigma_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

pub fn sigma_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

/// The `y`-like generator seen on the code space, `[[0, i], [-i, 0]]`.
pub fn logical_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0)])
}

pub fn proj_up() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
}

/// In-plane axis `cos(phi) sx + sin(phi) sz` rotated by the stripe angle.
pub fn rotated_axis(phi: f64) -> CMatrix {
    sigma_x().scale(phi.cos()) + sigma_z().scale(phi.sin())
}

/// Loop generator of a single-qubit stripe on two spins.
pub fn axis_generator(axis: Axis, phi: f64) -> CMatrix {
    let outer = match axis {
        Axis::X => sigma_x(),
        Axis::Y => sigma_y(),
    };
    outer.kronecker(&rotated_axis(phi))
}

/// Logical rotation `exp(i theta sigma)` about the stripe axis.
pub fn rotation_unitary(axis: Axis, theta: f64) -> CMatrix {
    let sigma = match axis {
        Axis::X => sigma_x(),
        Axis::Y => logical_y(),
    };
    linalg::expmh(&sigma, -theta)
}

/// Adiabatic target of a single-qubit stripe: `exp(2 pi i cos(phi) sigma)`.
pub fn one_qubit_target(axis: Axis, phi: f64) -> CMatrix {
    rotation_unitary(axis, 2.0 * std::f64::consts::PI * phi.cos())
}

/// Control-up branch target of a two-qubit stripe:
/// `exp(2 pi i sin(phi) sigma_z)`.
pub fn controlled_target(phi: f64) -> CMatrix {
    linalg::expmh(&sigma_z(), -2.0 * std::f64::consts::PI * phi.sin())
}

/// Code space of the two-spin coupling: `|du>` is logical 0, `|ud>` logical 1.
pub fn code_projector_one() -> CMatrix {
    let mut q = CMatrix::zeros(4, 2);
    q[(2, 0)] = c(1.0, 0.0);
    q[(1, 1)] = c(1.0, 0.0);
    q
}

/// Code space of the three-spin stripe with the trigger spin held up or down.
pub fn code_projector_control(trigger_up: bool) -> CMatrix {
    let mut q = CMatrix::zeros(8, 2);
    if trigger_up {
        q[(4, 0)] = c(1.0, 0.0);
        q[(2, 1)] = c(1.0, 0.0);
    } else {
        q[(5, 0)] = c(1.0, 0.0);
        q[(3, 1)] = c(1.0, 0.0);
    }
    q
}

/// One closed loop of couplings `R(theta) G0 R(theta)^dag` traversed over
/// `l` equal steps of duration `tau`.
#[derive(Debug, Clone)]
pub struct LoopFamily {
    g0: CMatrix,
    x: CMatrix,
    l: usize,
    tau: f64,
}

impl LoopFamily {
    pub fn new(g0: CMatrix, x: CMatrix, l: usize, tau: f64) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidParameter(
                "a schedule needs at least two steps".into(),
            ));
        }
        if tau <= 0.0 {
            return Err(Error::InvalidParameter(
                "step duration must be positive".into(),
            ));
        }
        if g0.nrows() != g0.ncols() || g0.shape() != x.shape() {
            return Err(Error::InvalidParameter(
                "coupling and generator shapes disagree".into(),
            ));
        }
        Ok(LoopFamily { g0, x, l, tau })
    }

    pub fn steps(&self) -> usize {
        self.l
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn total_time(&self) -> f64 {
        self.l as f64 * self.tau
    }

    pub fn dim(&self) -> usize {
        self.g0.nrows()
    }

    /// Schedule angles, descending from `2 pi` to `0`.
    pub fn thetas(&self) -> Vec<f64> {
        let denom = (self.l - 1) as f64;
        (0..self.l)
            .map(|i| 2.0 * std::f64::consts::PI * (self.l - 1 - i) as f64 / denom)
            .collect()
    }

    /// Coupling at one schedule angle.
    pub fn step_hamiltonian(&self, theta: f64) -> CMatrix {
        let r = linalg::expmh(&(-&self.x), theta);
        &r * &self.g0 * r.adjoint()
    }

    /// How far the couplings at both ends of the schedule disagree.
    pub fn closure_error(&self) -> f64 {
        let first = self.step_hamiltonian(2.0 * std::f64::consts::PI);
        let last = self.step_hamiltonian(0.0);
        linalg::op_norm(&(first - last))
    }

    pub fn integrate(&self) -> CMatrix {
        self.integrate_with_taus(&vec![self.tau; self.l])
    }

    /// Evolution with a per-step duration schedule.
    pub fn integrate_with_taus(&self, taus: &[f64]) -> CMatrix {
        assert_eq!(taus.len(), self.l, "one duration per schedule step");
        let mut u = CMatrix::identity(self.dim(), self.dim());
        for (theta, &tau) in self.thetas().iter().zip(taus) {
            let h = self.step_hamiltonian(*theta);
            u = linalg::expmh(&h, tau) * u;
        }
        u
    }

    /// Evolution with an idle interval of the given length after every step,
    /// during which the coupling is switched off entirely.
    pub fn integrate_with_gaps(&self, gap: f64) -> CMatrix {
        let dim = self.dim();
        let zero = CMatrix::zeros(dim, dim);
        let mut u = CMatrix::identity(dim, dim);
        for theta in self.thetas() {
            let h = self.step_hamiltonian(theta);
            u = linalg::expmh(&zero, gap) * linalg::expmh(&h, self.tau) * u;
        }
        u
    }
}

pub fn one_qubit_family(axis: Axis, phi: f64, l: usize, tau: f64) -> Result<LoopFamily> {
    let g0 = sigma_z().kronecker(&identity2()) + identity2().kronecker(&sigma_z());
    LoopFamily::new(g0, axis_generator(axis, phi), l, tau)
}

pub fn two_qubit_family(phi: f64, l: usize, tau: f64) -> Result<LoopFamily> {
    let i2 = identity2();
    let g0 = sigma_z().kronecker(&i2).kronecker(&i2) + i2.kronecker(&sigma_z()).kronecker(&i2);
    let x = i2.kronecker(&rotated_axis(phi)).kronecker(&proj_up());
    LoopFamily::new(g0, x, l, tau)
}

/// Implemented gate of one stripe, compared against its adiabatic target.
#[derive(Debug, Clone)]
pub struct GateReport {
    pub code_action: CMatrix,
    pub target: CMatrix,
    pub fidelity: f64,
    pub phase_stripped_distance: f64,
    pub leakage_amplitude: f64,
    pub leakage_population: f64,
}

fn project_gate(u: &CMatrix, q: &CMatrix, target: CMatrix) -> GateReport {
    let code_action = q.adjoint() * u * q;
    let dim = u.nrows();
    let leak = (CMatrix::identity(dim, dim) - q * q.adjoint()) * u * q;
    let leakage_amplitude = linalg::op_norm(&leak);
    GateReport {
        fidelity: linalg::fidelity(&code_action, &target),
        phase_stripped_distance: linalg::phase_stripped_distance(&code_action, &target),
        leakage_amplitude,
        leakage_population: leakage_amplitude * leakage_amplitude,
        code_action,
        target,
    }
}

pub fn one_qubit_gate(axis: Axis, phi: f64, l: usize, tau: f64) -> Result<GateReport> {
    let family = one_qubit_family(axis, phi, l, tau)?;
    let u = family.integrate();
    Ok(project_gate(&u, &code_projector_one(), one_qubit_target(axis, phi)))
}

/// Both branches of a two-qubit stripe.
#[derive(Debug, Clone)]
pub struct TwoQubitReport {
    pub control_up: GateReport,
    /// Plain operator distance of the control-down branch from the identity.
    pub control_down_distance: f64,
}

pub fn two_qubit_gate(phi: f64, l: usize, tau: f64) -> Result<TwoQubitReport> {
    let family = two_qubit_family(phi, l, tau)?;
    let u = family.integrate();
    let control_up = project_gate(&u, &code_projector_control(true), controlled_target(phi));
    let down = code_projector_control(false).adjoint() * &u * code_projector_control(false);
    let control_down_distance = linalg::op_norm(&(down - CMatrix::identity(2, 2)));
    Ok(TwoQubitReport { control_up, control_down_distance })
}

/// Control-major block matrix of the two branch actions.
pub fn assemble_controlled(a_up: &CMatrix, a_down: &CMatrix) -> CMatrix {
    let mut cu = CMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            cu[(i, j)] = a_up[(i, j)];
            cu[(i + 2, j + 2)] = a_down[(i, j)];
        }
    }
    cu
}

/// Smooth unit-normalized speed profile built from three Fourier modes.
pub fn smooth_speed_profile<R: Rng + ?Sized>(rng: &mut R, l: usize) -> Vec<f64> {
    let mut s = vec![0.0; l];
    for f in 1..=3 {
        let a: f64 = StandardNormal.sample(rng);
        let b: f64 = StandardNormal.sample(rng);
        for (j, sj) in s.iter_mut().enumerate() {
            let arg = 2.0 * std::f64::consts::PI * f as f64 * j as f64 / l as f64;
            *sj += a * arg.sin() + b * arg.cos();
        }
    }
    let max = s.iter().fold(1e-12_f64, |m, &v| m.max(v.abs()));
    for v in &mut s {
        *v /= max;
    }
    s
}

/// Step durations `tau_bar * (1 + amplitude * profile)`.
pub fn jittered_taus<R: Rng + ?Sized>(
    rng: &mut R,
    l: usize,
    tau_bar: f64,
    amplitude: f64,
) -> Vec<f64> {
    smooth_speed_profile(rng, l)
        .into_iter()
        .map(|s| tau_bar * (1.0 + amplitude * s))
        .collect()
}

/// Worst-case effect of randomized step durations on one stripe.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JitterReport {
    pub uniform_fidelity: f64,
    pub worst_fidelity_shift: f64,
    pub worst_action_distance: f64,
    pub samples: usize,
}

pub fn one_qubit_jitter(
    axis: Axis,
    phi: f64,
    l: usize,
    tau_bar: f64,
    amplitude: f64,
    samples: usize,
    seed: u64,
) -> Result<JitterReport> {
    let family = one_qubit_family(axis, phi, l, tau_bar)?;
    let q = code_projector_one();
    let target = one_qubit_target(axis, phi);
    let uniform = q.adjoint() * family.integrate() * &q;
    let f_uniform = linalg::fidelity(&uniform, &target);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut worst_shift = 0.0_f64;
    let mut worst_action = 0.0_f64;
    for _ in 0..samples {
        let taus = jittered_taus(&mut rng, l, tau_bar, amplitude);
        let a = q.adjoint() * family.integrate_with_taus(&taus) * &q;
        worst_shift = worst_shift.max((linalg::fidelity(&a, &target) - f_uniform).abs());
        worst_action = worst_action.max(linalg::phase_stripped_distance(&a, &uniform));
    }
    Ok(JitterReport {
        uniform_fidelity: f_uniform,
        worst_fidelity_shift: worst_shift,
        worst_action_distance: worst_action,
        samples,
    })
}

pub fn two_qubit_jitter(
    phi: f64,
    l: usize,
    tau_bar: f64,
    amplitude: f64,
    samples: usize,
    seed: u64,
) -> Result<JitterReport> {
    let family = two_qubit_family(phi, l, tau_bar)?;
    let q_up = code_projector_control(true);
    let q_dn = code_projector_control(false);
    let target = controlled_target(phi);
    let u0 = family.integrate();
    let uniform = assemble_controlled(
        &(q_up.adjoint() * &u0 * &q_up),
        &(q_dn.adjoint() * &u0 * &q_dn),
    );
    let f_uniform = linalg::fidelity(&(q_up.adjoint() * &u0 * &q_up), &target);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut worst_shift = 0.0_f64;
    let mut worst_action = 0.0_f64;
    for _ in 0..samples {
        let taus = jittered_taus(&mut rng, l, tau_bar, amplitude);
        let u = family.integrate_with_taus(&taus);
        let a_up = q_up.adjoint() * &u * &q_up;
        let assembled = assemble_controlled(&a_up, &(q_dn.adjoint() * &u * &q_dn));
        worst_shift = worst_shift.max((linalg::fidelity(&a_up, &target) - f_uniform).abs());
        worst_action = worst_action.max(linalg::phase_stripped_distance(&assembled, &uniform));
    }
    Ok(JitterReport {
        uniform_fidelity: f_uniform,
        worst_fidelity_shift: worst_shift,
        worst_action_distance: worst_action,
        samples,
    })
}

/// Composite-gate checks: a Hadamard from two rotations, a rotation undone
/// by its inverse, and a controlled-Z assembled from a conditional phase
/// plus local corrections.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct UniversalityReport {
    pub rot_x_fidelity: f64,
    pub rot_y_fidelity: f64,
    pub controlled_fidelity: f64,
    pub hadamard_distance: f64,
    pub identity_distance: f64,
    pub cz_distance: f64,
    pub local_phase_distance: f64,
}

pub fn universality_witness(l: usize, tau: f64) -> Result<UniversalityReport> {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let gx = one_qubit_gate(Axis::X, (0.25_f64).acos(), l, tau)?;
    let gy = one_qubit_gate(Axis::Y, (0.125_f64).acos(), l, tau)?;
    let hadamard = (sigma_x() + sigma_z()).scale(inv_sqrt2);
    let hadamard_distance =
        linalg::phase_stripped_distance(&(&gx.code_action * &gy.code_action), &hadamard);

    let gx_inv = one_qubit_gate(Axis::X, (-0.25_f64).acos(), l, tau)?;
    let identity_distance = linalg::phase_stripped_distance(
        &(&gx.code_action * &gx_inv.code_action),
        &CMatrix::identity(2, 2),
    );

    // Conditional phase of pi/2 on the rotated branch composes with local
    // z phases into a controlled-Z.
    let alpha = std::f64::consts::FRAC_PI_2;
    let two_q = two_qubit_gate((0.25_f64).asin(), l, tau)?;
    let family = two_qubit_family((0.25_f64).asin(), l, tau)?;
    let u = family.integrate();
    let a_dn = code_projector_control(false).adjoint() * &u * code_projector_control(false);
    let cu = assemble_controlled(&two_q.control_up.code_action, &a_dn);
    let t_loc = linalg::expmh(&sigma_z(), alpha);
    let c_loc = linalg::expmh(&sigma_z(), alpha / 2.0);
    let corrected = c_loc.kronecker(&t_loc) * cu;
    let mut cz = CMatrix::identity(4, 4);
    cz[(3, 3)] = c(-1.0, 0.0);
    let cz_distance = linalg::phase_stripped_distance(&corrected, &cz);

    // A conditional phase of pi collapses to a local z on the control.
    let full_turn = two_qubit_family(std::f64::consts::FRAC_PI_6, l, tau)?.integrate();
    let cu_pi = assemble_controlled(
        &(code_projector_control(true).adjoint() * &full_turn * code_projector_control(true)),
        &(code_projector_control(false).adjoint() * &full_turn * code_projector_control(false)),
    );
    let z_on_control = sigma_z().kronecker(&identity2());
    let local_phase_distance = linalg::phase_stripped_distance(&cu_pi, &z_on_control);

    Ok(UniversalityReport {
        rot_x_fidelity: gx.fidelity,
        rot_y_fidelity: gy.fidelity,
        controlled_fidelity: two_q.control_up.fidelity,
        hadamard_distance,
        identity_distance,
        cz_distance,
        local_phase_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_close_exactly() {
        let one = one_qubit_family(Axis::X, 0.9, 40, 1.0).unwrap();
        assert!(one.closure_error() <= 1e-12);
        let two = two_qubit_family(0.4, 40, 1.0).unwrap();
        assert!(two.closure_error() <= 1e-12);
    }

    #[test]
    fn zero_generator_reduces_to_plain_evolution() {
        let g0 = sigma_z().kronecker(&identity2()) + identity2().kronecker(&sigma_z());
        let family = LoopFamily::new(g0.clone(), CMatrix::zeros(4, 4), 20, 0.3).unwrap();
        let u = family.integrate();
        let direct = linalg::expmh(&g0, 20.0 * 0.3);
        assert!(linalg::op_norm(&(u - direct)) <= 1e-10);
    }

    #[test]
    fn integration_is_unitary() {
        let family = one_qubit_family(Axis::Y, 1.1, 60, 2.0).unwrap();
        let u = family.integrate();
        let gram = &u * u.adjoint();
        assert!(linalg::op_norm(&(gram - CMatrix::identity(4, 4))) <= 1e-11);
    }

    #[test]
    fn transfer_product_reproduces_the_integrated_loop() {
        // Telescoping the conjugations gives
        // U = (D e^{i delta X})^(l-1) D e^{-2 pi i X} with D = e^{-i tau G0}.
        let cases: Vec<LoopFamily> = vec![
            LoopFamily::new(sigma_z(), sigma_x(), 37, 0.9).unwrap(),
            one_qubit_family(Axis::X, (0.25_f64).acos(), 50, 2.3).unwrap(),
        ];
        for family in cases {
            let u = family.integrate();
            let dim = family.dim();
            let d = linalg::expmh(&family.g0, family.tau);
            let delta = 2.0 * std::f64::consts::PI / (family.l - 1) as f64;
            let step = &d * linalg::expmh(&family.x, -delta);
            let mut product = CMatrix::identity(dim, dim);
            for _ in 0..family.l - 1 {
                product = &step * product;
            }
            product = product * &d * linalg::expmh(&family.x, 2.0 * std::f64::consts::PI);
            assert!(linalg::op_norm(&(product - u)) <= 1e-10);
        }
    }

    #[test]
    fn abelian_loop_accumulates_dynamic_phases() {
        let family = LoopFamily::new(sigma_z(), sigma_x(), 400, 5.0).unwrap();
        let u = family.integrate();
        let total = family.total_time();
        let up = Complex64::from_polar(1.0, -total);
        let down = Complex64::from_polar(1.0, total);
        assert!((u[(0, 0)] - up).norm() <= 2e-2);
        assert!((u[(1, 1)] - down).norm() <= 2e-2);
        assert!(u[(0, 1)].norm() <= 1e-2);
    }

    #[test]
    fn control_down_branch_idles() {
        let report = two_qubit_gate(0.7, 100, 5.0).unwrap();
        assert!(report.control_down_distance <= 1e-9);
    }

    #[test]
    fn finer_schedules_converge_at_fixed_total_time() {
        let total = 2000.0;
        let mut last = f64::INFINITY;
        for l in [200usize, 400, 800] {
            let report =
                one_qubit_gate(Axis::X, std::f64::consts::FRAC_PI_3, l, total / l as f64)
                    .unwrap();
            assert!(report.phase_stripped_distance < last);
            last = report.phase_stripped_distance;
        }
    }

    #[test]
    fn idle_gaps_do_not_move_the_gate() {
        let family = one_qubit_family(Axis::X, 0.8, 50, 1.5).unwrap();
        let plain = family.integrate();
        let gapped = family.integrate_with_gaps(3.0);
        assert!(linalg::phase_stripped_distance(&gapped, &plain) <= 1e-9);
    }

    #[test]
    fn speed_profiles_are_normalized_and_deterministic() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let s = smooth_speed_profile(&mut rng, 64);
        assert_eq!(s.len(), 64);
        let max = s.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
        assert!((max - 1.0).abs() <= 1e-12);
        let mut rng2 = ChaCha12Rng::seed_from_u64(7);
        assert_eq!(s, smooth_speed_profile(&mut rng2, 64));
    }

    #[test]
    fn schedules_shorter_than_two_steps_are_rejected() {
        assert!(one_qubit_family(Axis::X, 0.5, 1, 1.0).is_err());
        assert!(one_qubit_family(Axis::X, 0.5, 10, 0.0).is_err());
    }
}
