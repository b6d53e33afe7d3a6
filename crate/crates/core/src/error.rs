use thiserror::Error;

/// Errors raised by the numerical constructions in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires a parity-homogeneous operand")]
    MixedParity,

    #[error("matrix is not unimodular: |det - 1| = {deviation:e}")]
    NotUnimodular { deviation: f64 },

    #[error("little-group phase must lie on the unit circle: |z| = {modulus}")]
    NotUnitModulus { modulus: f64 },

    #[error("momentum is not on the light cone: <p,p> = {square:e}")]
    NotLightLike { square: f64 },

    #[error("momentum must have positive energy: p0 = {p0}")]
    NonPositiveEnergy { p0: f64 },

    #[error("the tip of the light cone carries no fiber")]
    ConeTip,

    #[error("mass must be non-negative, got {0}")]
    NegativeMass(f64),

    #[error("spinor violates the fiber constraint: residual {residual:e}")]
    NotInFiber { residual: f64 },

    #[error("fiber is not invariant under the chirality operator: residual {residual:e}")]
    NotChiralityInvariant { residual: f64 },

    #[error("matrix is not Hermitian: residual {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary: residual {residual:e}")]
    NotUnitary { residual: f64 },

    #[error("no tabulated coset representative near {0:?}")]
    CosetLookup([f64; 4]),

    #[error("direction vector must be nonzero")]
    ZeroDirection,

    #[error("cutoff {cutoff} is too small, need at least {minimum}")]
    CutoffTooSmall { cutoff: usize, minimum: usize },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("time {t} outside the horizon [0, {horizon}]")]
    TimeOutsideHorizon { t: f64, horizon: f64 },

    #[error("subspace of dimension {0} is too large to materialize")]
    SubspaceTooLarge(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
