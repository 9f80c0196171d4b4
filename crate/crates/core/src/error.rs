use std::fmt;

use serde::{Deserialize, Serialize};

/// A place of Q: the real place or a finite prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Prime(p) => write!(f, "p={p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    CompositeModulus(u64),
    #[error("{0} is not a square modulo {1}")]
    NonResidue(i64, u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("polynomial is not irreducible of the requested degree")]
    NotIrreducible,
    #[error("extension degree {0} outside 1..=4")]
    UnsupportedDegree(usize),
    #[error("coset lattices have different shapes")]
    ShapeMismatch,
    #[error("element outside declared coset range")]
    OutOfRange,
    #[error("model is singular (zero discriminant)")]
    SingularModel,
    #[error("malformed curve model: {0}")]
    MalformedModel(String),
    #[error("curve has bad reduction at {0}")]
    BadReduction(u64),
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("invalid Mumford divisor: {0}")]
    InvalidDivisor(String),
    #[error("point is not integral at {0}")]
    NonIntegralAtP(u64),
    #[error("operation unsupported for this model: {0}")]
    UnsupportedModel(String),
    #[error("precision exhausted at {place} (precision {precision})")]
    PrecisionExhausted { place: Place, precision: u32 },
    #[error("no embedding of the curve into its Jacobian is available: {0}")]
    EmbeddingUnavailable(String),
    #[error("no admissible primes")]
    NoAdmissiblePrimes,
    #[error("prime {0} is not admissible for this configuration")]
    InadmissiblePrime(u64),
    #[error("invalid Mordell-Weil basis: {0}")]
    InvalidBasis(String),
    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),
    #[error("could not factor {0} by trial division")]
    FactorizationIncomplete(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
