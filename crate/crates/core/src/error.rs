use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported modulus {0}: p must be one of 2, 3, 5, 7")]
    UnsupportedPrime(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: p={left} vs p={right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("oracle too large: {what} needs {count} items (bound {bound})")]
    OracleTooLarge { what: String, count: u128, bound: u128 },

    #[error("sigma^{p} != identity ({detail})")]
    NotAnAction { p: u32, detail: String },

    #[error("length undefined for the zero vector")]
    ZeroVector,

    #[error("vector is not fixed by sigma")]
    NotFixed,

    #[error("invalid model: axiom {axiom} fails")]
    InvalidModel { axiom: String },

    #[error("criterion requires sigmamin1 axiom")]
    MissingSigmaMin1,

    #[error("hypothesis not asserted: {0}")]
    HypothesisNotAsserted(String),

    #[error("checker not applicable: {0}")]
    NotApplicable(String),

    #[error("length {0} < 2: lemma does not apply")]
    LengthTooSmall(usize),

    #[error("unsatisfiable generator spec: {0}")]
    Unsatisfiable(String),

    #[error("rejection budget exhausted after {0} attempts")]
    BudgetExhausted(usize),

    #[error("no p-th root of unity: p={p} does not divide q-1={qm1}")]
    NoRootOfUnity { p: u32, qm1: u64 },

    #[error("backend parameter error: {0}")]
    Backend(String),

    #[error("precision insufficient to decide a square class: raise k (currently {0})")]
    RaisePrecision(u32),

    #[error("missing cup-product map at degree {0}")]
    MissingCupMap(usize),

    #[error("parse error at line {line}, field `{field}`: {msg}")]
    Parse { line: usize, field: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
