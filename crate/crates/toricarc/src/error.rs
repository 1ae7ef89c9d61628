//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text (fan files, polynomial text, q-spec lists).
    #[error("parse error: {0}")]
    Parse(String),

    /// Structural invariant of a domain type does not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// The class lattice B = Z^N / M has torsion (non-smooth input).
    #[error("cokernel has torsion: {0}")]
    TorsionCokernel(String),

    /// The semigroup A_+ is not pointed (beta has a kernel).
    #[error("semigroup not pointed: {0}")]
    NonPointed(String),

    /// Reduction step budget exhausted during a Groebner run.
    #[error("reduction budget exceeded after {0} steps")]
    BudgetExceeded(u64),

    /// Quotient ring has infinitely many standard monomials and no cap was given.
    #[error("quotient is not finite-dimensional")]
    InfiniteDimension,

    /// Graded dimension counts require a homogeneous ideal.
    #[error("ideal is not homogeneous: {0}")]
    NotHomogeneous(String),

    /// q must specialize to invertible (nonzero) rationals.
    #[error("q specialization must be nonzero: {0}")]
    ZeroQSpec(String),

    /// A specialized quantum quotient has the wrong dimension.
    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    /// Graded dimensions of the classical quotient disagree with the h-vector.
    #[error("betti numbers disagree with h-vector: {0}")]
    MismatchWithHVector(String),

    /// A lattice point was expected to lie in A_+.
    #[error("lattice point not in A_+: {0}")]
    NotInAPlus(String),

    /// codim(a, b) requires b - a in A_+.
    #[error("not nested: {0}")]
    NotNested(String),

    /// Batyrev presentation requested for a non-Fano fan without override.
    #[error("fan is not Fano; pass allow_non_fano to build the presentation anyway")]
    NotFano,

    /// One of the theorem verdicts failed.
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
