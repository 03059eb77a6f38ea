//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building operators or running checks.
#[derive(Debug, Error)]
pub enum Error {
    /// A structural parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A builder was handed a basis it cannot work on.
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),

    /// An exact (dense or enumerative) computation would exceed its size cap.
    #[error("size cap exceeded: {what} needs dimension {needed}, cap is {cap}")]
    SizeCapExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    /// The passing-time search ran off the end of its time grid.
    #[error("grid too short: expectation never reached {target} on [0, {t_max}]")]
    GridTooShort { target: f64, t_max: f64 },

    /// `(1 - K_{++} G_+)` could not be inverted.
    #[error("singular resolvent factor at z = {z}: condition estimate {condition:.3e}")]
    SingularResolvent { z: num_complex::Complex64, condition: f64 },

    /// The Neumann convergence condition for the self-energy failed.
    #[error("resolvent series diverges at z = {z}: |K_++ G_+| = {norm:.3e} >= 1")]
    ResolventSeriesDiverges { z: num_complex::Complex64, norm: f64 },

    /// No clean spectral gap around the requested cut.
    #[error("spectral gap absent at lambda_* = {lambda_star:.3e}: {detail}")]
    SpectralGapAbsent { lambda_star: f64, detail: String },

    /// A circuit does not fit into the circuit region.
    #[error("circuit region overflow: layout needs k >= {needed_k}, lattice has k = {k}")]
    RegionOverflow { needed_k: usize, k: usize },

    /// Configuration-graph BFS exceeded its node cap.
    #[error("node cap exceeded: BFS passed {cap} configurations")]
    NodeCapExceeded { cap: usize },

    /// A walk graph operation requires a connected graph.
    #[error("configuration graph is disconnected")]
    DisconnectedGraph,

    /// A stated operation precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Reading or writing an artifact failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// (De)serializing an artifact failed.
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}
