use thiserror::Error;

use crate::GaussInt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {pi}: {reason}")]
    InvalidModulus { pi: GaussInt, reason: String },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("{value} is outside 0..{p}")]
    OutOfRange { value: i64, p: u32 },

    #[error("{0} is not a canonical residue")]
    NotCanonical(GaussInt),

    #[error("polynomial division by zero")]
    DivisionByZeroPoly,

    #[error("operands belong to different residue fields")]
    FieldMismatch,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("generator polynomial does not divide {modulus}")]
    NotADivisor { modulus: String },

    #[error("generator matrix spans the zero code")]
    ZeroCode,

    #[error("enumeration of {size} vectors exceeds the cap of {cap}")]
    EnumerationTooLarge { size: u128, cap: u64 },

    #[error("no codeword within weight {t}")]
    NoDecode { t: u32 },

    #[error("{} codewords tie at weight {weight}", tied.len())]
    Ambiguous { weight: u32, tied: Vec<Vec<GaussInt>> },

    #[error("C2 is not a subcode of C1")]
    NotNested,

    #[error("vector is not a codeword")]
    NotACodeword,

    #[error("qudit index {index} out of range for {n} qudits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("state vectors have different shapes")]
    ShapeMismatch,

    #[error("state space of {size} amplitudes exceeds the cap of {cap}")]
    StateTooLarge { size: u128, cap: u64 },

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}
