use thiserror::Error;

/// Errors produced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structure is not tactical: {axis} {index} has degree {found}, expected {expected}")]
    NotTactical {
        axis: &'static str,
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("structure is not a symmetric configuration (v={v}, b={b}, k={k}, r={r})")]
    NotSymmetric { v: usize, b: usize, k: usize, r: usize },
    #[error("incompatible parameters: {0}")]
    IncompatibleParams(String),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("matrix is not Hadamard")]
    NotHadamard,
    #[error("unsupported field size {0}")]
    UnsupportedField(u64),
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("genus {0} out of range")]
    GenusOutOfRange(usize),
    #[error("zero vector not allowed")]
    ZeroVector,
    #[error("{n}-th roots of unity unavailable in GF({q})")]
    RootsUnavailable { n: usize, q: u64 },
    #[error("invalid n: {0}")]
    InvalidN(usize),
    #[error("N={0} out of range 2..=12")]
    NOutOfRange(usize),
    #[error("cutting plane is degenerate: {0}")]
    DegeneratePlane(String),
    #[error("block degree {0} too small (need at least 2)")]
    DegreeTooSmall(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("s-regularity undefined: {0}")]
    Undefined(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("invalid v: {0}")]
    InvalidV(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotTactical { .. } => "NotTactical",
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::IncompatibleParams(_) => "IncompatibleParams",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidParams(_) => "InvalidParams",
            Error::InvalidOrder(_) => "InvalidOrder",
            Error::NotHadamard => "NotHadamard",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::InvalidDims(_) => "InvalidDims",
            Error::GenusMismatch(..) => "GenusMismatch",
            Error::GenusOutOfRange(_) => "GenusOutOfRange",
            Error::ZeroVector => "ZeroVector",
            Error::RootsUnavailable { .. } => "RootsUnavailable",
            Error::InvalidN(_) => "InvalidN",
            Error::NOutOfRange(_) => "NOutOfRange",
            Error::DegeneratePlane(_) => "DegeneratePlane",
            Error::DegreeTooSmall(_) => "DegreeTooSmall",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Undefined(_) => "Undefined",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::InvalidV(_) => "InvalidV",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
