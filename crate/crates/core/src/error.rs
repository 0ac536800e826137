use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: relative skew part {residual:.3e} exceeds {tol:.1e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal mass {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("empty matrix family")]
    EmptyFamily,

    #[error("affine map is singular or ill-conditioned (condition estimate {condition:.3e})")]
    SingularMap { condition: f64 },

    #[error("weight is scalar (c_1 = c_n); the range degenerates to a single point")]
    ScalarWeight,

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("weight must have {n} distinct eigenvalues, found {distinct}")]
    BadWeight { n: usize, distinct: usize },

    #[error("matrix is not unitary (||U*U - I||_F = {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("permutation enumeration limited to n <= {max}, got n = {n}")]
    TooLarge { n: usize, max: usize },

    #[error("family is not commuting normal: pair ({first}, {second}) has commutator residual {residual:.3e}")]
    NotCommutingNormal {
        first: usize,
        second: usize,
        residual: f64,
    },

    #[error("invalid block layout: {0}")]
    BadBlockSpec(String),

    #[error("matrix is not an orthogonal projection: {0}")]
    NotProjection(String),

    #[error("spectra of the diagonal blocks do not pair up (mismatch {mismatch:.3e})")]
    SpectrumMismatch { mismatch: f64 },

    #[error("algebraic and geometric routes disagree: algebraic={algebraic}, geometric={geometric}")]
    RouteDisagreement { algebraic: bool, geometric: bool },

    #[error("invalid k = {k} for n = {n}: {reason}")]
    InvalidK { k: usize, n: usize, reason: String },

    #[error("expected {expected} real coordinates, found {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("invalid direction: {0}")]
    InvalidDirection(String),
}

pub type Result<T> = std::result::Result<T, Error>;
