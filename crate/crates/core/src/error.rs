use thiserror::Error;

/// Errors produced by lattice construction, norm evaluation, and resource
/// estimation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice side L={0} is below the minimum supported size 4")]
    LatticeTooSmall(usize),

    #[error("operation requires even lattice side, got L={0}")]
    OddLattice(usize),

    #[error("site index {site} out of range for {sites} sites")]
    SiteOutOfRange { site: usize, sites: usize },

    #[error("matrix is not symmetric within tolerance (max deviation {dev:.3e})")]
    NotSymmetric { dev: f64 },

    #[error("hopping matrix has a nonzero diagonal (max |entry| {dev:.3e})")]
    NonzeroDiagonal { dev: f64 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("coefficient matrix was not built on a square lattice")]
    NotALattice,

    #[error("step costs for SO-FFFT are tabulated only for L in {{4, 8, 16}}, got L={0}")]
    UnsupportedFfftSize(usize),

    #[error("HWP batch size {m} does not divide the equal-angle layer half L^2/2 = {half}")]
    BatchNotDivisor { m: u64, half: u64 },

    #[error("gate cost still carries {0} unsynthesized rotations")]
    UnsynthesizedRotations(u64),

    #[error("instance with {qubits} qubits exceeds the {max}-qubit oracle cap")]
    InstanceTooLarge { qubits: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
