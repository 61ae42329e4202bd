use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {p}: {reason}")]
    InvalidModulus { p: u64, reason: &'static str },

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("modulus mismatch in {op}: {left} vs {right}")]
    ModulusMismatch { op: &'static str, left: u32, right: u32 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("relation R{0} is empty")]
    EmptyRelation(usize),

    #[error(
        "intersection count p^{i}_{{{g}{h}}} is not constant: {first} at witness {first_pair:?}, {other} at {other_pair:?}"
    )]
    NonConstantIntersection {
        g: usize,
        h: usize,
        i: usize,
        first: usize,
        first_pair: (usize, usize),
        other: usize,
        other_pair: (usize, usize),
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("coefficient {expr} has no inverse modulo {p}")]
    NotInvertible { expr: String, p: u32 },

    #[error("rank deficiency: expected {expected}, found {found}; dependent members {witnesses:?}")]
    RankDeficient {
        expected: usize,
        found: usize,
        witnesses: Vec<String>,
    },

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("subspace is not a two-sided ideal: {0}")]
    NotIdeal(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
