use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible lattices: rank {left} vs rank {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("lattice rank {0} out of range (expected 1..=7)")]
    RankOutOfRange(usize),

    #[error("malformed lattice vector `{0}`")]
    ParseVector(String),

    #[error("catalog entry `{label}` is inconsistent: {reason}")]
    Catalog { label: String, reason: String },

    #[error("malformed catalog file: {0}")]
    CatalogFormat(String),

    #[error("unknown class label `{0}`")]
    UnknownClass(String),

    #[error("class `{0}` has no blow-up model; graph computations need a degree <= 7 entry")]
    NoBlowupModel(String),

    #[error("automorphism group exceeds {cap} elements; use conjugacy-class mode")]
    GroupTooLarge { cap: usize },

    #[error("structural error for `{label}`: {reason}")]
    Structure { label: String, reason: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("unsupported field F_{p}^{k}")]
    UnsupportedField { p: u32, k: u32 },

    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),

    #[error("division by zero")]
    DivisionByZero,

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("the zero polynomial has no zero locus to count")]
    ZeroPolynomial,

    #[error("wrong number of coefficients: expected {expected}, got {got}")]
    CoefficientCount { expected: usize, got: usize },

    #[error("coefficient {value} is not an element of F_{q}")]
    CoefficientRange { value: u32, q: u32 },

    #[error("quadric classification needs odd q, got q = {0}")]
    EvenCharacteristic(u32),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed surface data: {0}")]
    SurfaceFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
