//! Composite-gate checks at long schedules: rotation pairs composing to a
//! Hadamard, a rotation undone by its inverse, and a controlled-Z built
//! from the conditional-phase stripe with local corrections.

use autoqc_core::holonomy::{one_qubit_target, universality_witness, Axis};
use autoqc_core::linalg::{phase_stripped_distance, CMatrix};
use num_complex::Complex64;

#[test]
fn target_rotations_compose_to_an_exact_hadamard() {
    let composite = one_qubit_target(Axis::X, (0.25_f64).acos())
        * one_qubit_target(Axis::Y, (0.125_f64).acos());
    let h = CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ],
    )
    .scale(std::f64::consts::FRAC_1_SQRT_2);
    assert!(phase_stripped_distance(&composite, &h) <= 1e-12);
}

#[test]
fn implemented_composites_track_their_targets() {
    let witness = universality_witness(1600, 5.0).unwrap();
    assert!(witness.rot_x_fidelity >= 0.999, "x rotation {}", witness.rot_x_fidelity);
    assert!(witness.rot_y_fidelity >= 0.999, "y rotation {}", witness.rot_y_fidelity);
    assert!(
        witness.controlled_fidelity >= 0.999,
        "conditional phase {}",
        witness.controlled_fidelity
    );
    assert!(witness.hadamard_distance <= 1e-2, "hadamard {}", witness.hadamard_distance);
    assert!(witness.identity_distance <= 1e-2, "undone rotation {}", witness.identity_distance);
    assert!(witness.cz_distance <= 1e-2, "controlled-z {}", witness.cz_distance);
    assert!(
        witness.local_phase_distance <= 1e-2,
        "half-turn conditional phase is not a local z: {}",
        witness.local_phase_distance
    );
}
