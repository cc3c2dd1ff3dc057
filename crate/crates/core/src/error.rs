use thiserror::Error;

/// Errors raised by the exact-arithmetic engine.
///
/// Every variant corresponds to a violated precondition or an exhausted
/// budget; none of them signals a wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exact division leaves a nonzero remainder")]
    DivisionNotExact,
    #[error("polynomial is not palindromic of even degree")]
    NotPalindromic,
    #[error("polynomial has zero constant term; divide out the powers of x first")]
    ZeroConstantTerm,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree {0}, expected at least {1}")]
    DegreeTooSmall(usize, usize),
    #[error("polynomial has no real root above 1")]
    NoRootAboveOne,
    #[error("could not certify root enclosures of width {tol} within {max_bits} bits of working precision")]
    CertificationFailed { tol: String, max_bits: u32 },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("matrix is not block upper-triangular with respect to the first {0} coordinates")]
    NotBlockTriangular(usize),
    #[error("word is not reduced: letters {0} and {1} coincide")]
    NotReduced(usize, usize),
    #[error("letter {0} is outside the generator range 1..={1}")]
    LetterOutOfRange(usize, usize),
    #[error("isometry structure violated: {0}")]
    StructureViolation(String),
    #[error("full-degree Salem elements need even rank, got rank {0}")]
    OddRankFullDegree(usize),
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: String,
        cap: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
