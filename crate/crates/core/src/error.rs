use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate rational map: {0}")]
    DegenerateMap(String),

    #[error("root solver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<Complex64>,
    },

    #[error("not univalent on the closed disk: {0}")]
    NotUnivalent(String),

    #[error("point lies outside the quadrature domain")]
    OutsideDomain,

    #[error("indeterminate membership: {} preimage candidates near the unit circle", candidates.len())]
    Indeterminate { candidates: Vec<Complex64> },

    #[error("point leaves the lifted domain")]
    LeftLiftedDomain,

    #[error("ramified tuple: {0}")]
    RamifiedTuple(String),

    #[error("solver corruption: deflation residual {residual:e}")]
    SolverCorruption { residual: f64 },

    #[error("point lies in the rank-zero tile")]
    InRankZeroTile,

    #[error("series truncated at order {available}, coefficient {requested} requested")]
    Truncation { requested: usize, available: usize },

    #[error("germ is not normalized: {0}")]
    NotNormalized(String),

    #[error("cusp type undetermined up to order {0}")]
    TypeUndetermined(usize),

    #[error("not a simple cusp: {0}")]
    NotSimpleCusp(String),

    #[error("higher-order critical point on the circle at {0}")]
    HigherOrderCriticalPoint(Complex64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoConvergence { .. } | Error::TypeUndetermined(_) => 3,
            Error::InvalidConfig(_) | Error::Schema(_) | Error::Io(_) | Error::Json(_) => 2,
            _ => 1,
        }
    }
}
