use thiserror::Error;

use crate::report::ViolationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} out of range for carrier of size {size}")]
    OutOfRange { element: usize, size: usize },

    #[error("size mismatch: expected {expected}, found {found} ({what})")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("{0} is not a prime up to 13")]
    NotPrime(usize),

    #[error("carrier size {size} is not a power of {p}")]
    NotPowerOfP { size: usize, p: usize },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(usize, usize),

    #[error("heap words must have odd length, found {0}")]
    EvenArity(usize),

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("construction requires a field of characteristic different from 2")]
    CharacteristicTwo,

    #[error("structure is not over an affine space")]
    NotAffine,

    #[error("structure fails validation ({} violation(s), first: {})", .0.violations.len(), .0.first_axiom())]
    InvalidStructure(ViolationReport),

    #[error("linearization depends on the reference point at v={v}, c={c}")]
    LinearizationDependsOnPoint { v: usize, c: usize },

    #[error("derivation set not closed under {0}")]
    ClosureFailure(&'static str),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("theory mismatch: {0}")]
    TheoryMismatch(String),

    #[error("bracket table mode needs an attached Lie structure")]
    NoStructure,

    #[error("malformed structure file: {0}")]
    Format(String),
}
