//! Simulation and verification library for an autonomously running quantum
//! computer: a chain of hopping atoms on a diagonal lattice drags interaction
//! stripes across a band of spins, executing a quantum circuit without any
//! external clocking.
//!
//! The crate splits into builders for the position-space Hamiltonians
//! ([`hamiltonian`]), the free-fermion solution of the chain walk
//! ([`fermion_walk`]), holonomy integration of the stripe schedules
//! ([`holonomy`]), perturbative reduction bounds ([`perturbation`]), the
//! circuit-to-stripe compiler ([`layout`]) and a classical stochastic
//! counterpart of the walk ([`classical_walk`]).

pub mod classical_walk;
pub mod configspace;
pub mod error;
pub mod fermion_walk;
pub mod hamiltonian;
pub mod holonomy;
pub mod layout;
pub mod linalg;
pub mod parallel;
pub mod perturbation;
pub mod report;

pub use configspace::{ChainWord, ConfigSpace, LatticeSpec};
pub use error::{Error, Result};
pub use parallel::Exec;
