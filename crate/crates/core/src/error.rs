use thiserror::Error;

/// Errors raised by the numerical routines and file readers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },

    #[error("invalid tolerance: abs={abs}, rel={rel}")]
    InvalidTolerance { abs: f64, rel: f64 },

    #[error("input vector has zero norm")]
    ZeroVector,

    #[error("QR iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("matrix is not Hermitian: ||H - H*||_F = {defect:e} exceeds {threshold:e}")]
    NotHermitian { defect: f64, threshold: f64 },

    #[error("matrix is not normal: ||TT* - T*T||_F = {defect:e} exceeds {threshold:e}")]
    NotNormal { defect: f64, threshold: f64 },

    #[error("eigenvalue clusters {separation:e} apart, below guard {guard:e} (cluster radius {radius:e})")]
    ClusterAmbiguity {
        separation: f64,
        guard: f64,
        radius: f64,
    },

    #[error("vectors are linearly dependent: residual {residual:e} at vector {index}")]
    DependentVectors { index: usize, residual: f64 },

    #[error("oracle supports n <= {max}, got n = {n}")]
    OracleTooLarge { n: usize, max: usize },

    #[error("Durand-Kerner iteration did not converge (relative residual {residual:e})")]
    RootsNoConvergence { residual: f64 },

    #[error("group of order {order} exceeds cap {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("invalid cyclic order {order}: must be >= 2")]
    InvalidOrder { order: u64 },

    #[error("coordinate {value} out of range for factor of order {order}")]
    InvalidCoordinate { value: u64, order: u64 },

    #[error("aliasing guard violated: 2*{n_max}+1 > grid size {grid}")]
    AliasingGuard { n_max: usize, grid: usize },

    #[error("grid mismatch: {left} vs {right} samples")]
    GridMismatch { left: usize, right: usize },

    #[error("reference family is not orthonormal: defect {defect:e}")]
    NotOrthonormal { defect: f64 },

    #[error("Gram matrix has negative eigenvalue {eigenvalue:e}")]
    NegativeEigenvalue { eigenvalue: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, used verbatim in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::EmptyMatrix { .. } => "EmptyMatrix",
            Error::NonFinite { .. } => "NonFinite",
            Error::InvalidTolerance { .. } => "InvalidTolerance",
            Error::ZeroVector => "ZeroVector",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotNormal { .. } => "NotNormal",
            Error::ClusterAmbiguity { .. } => "ClusterAmbiguity",
            Error::DependentVectors { .. } => "DependentVectors",
            Error::OracleTooLarge { .. } => "OracleTooLarge",
            Error::RootsNoConvergence { .. } => "RootsNoConvergence",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::InvalidOrder { .. } => "InvalidOrder",
            Error::InvalidCoordinate { .. } => "InvalidCoordinate",
            Error::AliasingGuard { .. } => "AliasingGuard",
            Error::GridMismatch { .. } => "GridMismatch",
            Error::NotOrthonormal { .. } => "NotOrthonormal",
            Error::NegativeEigenvalue { .. } => "NegativeEigenvalue",
            Error::Parse(_) => "Parse",
        }
    }

    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
