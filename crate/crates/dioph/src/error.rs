//! Error taxonomy shared by the whole crate.
//!
//! Errors carry enough context (dimensions, offending values) to reproduce
//! the failing call. `RankOutOfScope` is special: a system whose coefficient
//! matrix has rank 0 or full column rank has a trivial nullspace, and the
//! error carries that answer so callers can still report it.

use std::fmt;

/// What the nullspace is when the rank leaves nothing to reduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrivialKernel {
    /// rank 0: every vector is a solution, the nullspace is all of `R^n`.
    WholeSpace,
    /// full column rank: the only solution is zero.
    ZeroOnly,
}

impl fmt::Display for TrivialKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrivialKernel::WholeSpace => write!(f, "every vector solves the system"),
            TrivialKernel::ZeroOnly => write!(f, "only the zero vector solves the system"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Dimension or shape mismatch between operands.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// The matrix has rank 0 or full column rank, so there is no proper
    /// reduced system; the trivial nullspace is reported alongside.
    #[error("rank {rank} of a {rows}x{cols} matrix leaves a trivial nullspace: {kind}")]
    RankOutOfScope {
        rank: usize,
        rows: usize,
        cols: usize,
        kind: TrivialKernel,
    },

    /// An operation that requires a prime modulus received a non-prime.
    #[error("modulus {0} is not prime")]
    NotPrime(String),

    /// The ring instance does not support the requested operation
    /// (e.g. factorization outside the integers).
    #[error("operation not supported by this ring instance: {0}")]
    UnsupportedRingOp(&'static str),

    /// No coefficient vector of exact order `g` was found; `g` is most
    /// likely not the largest invariant factor of the current quotient.
    #[error("no coefficient vector of exact order {0} found; is it the largest invariant factor?")]
    NotLargestFactor(String),

    /// A quotient was requested for a pair of lattices without inclusion.
    #[error("not a sublattice: {0}")]
    NotASublattice(String),

    /// An enumeration would exceed the configured bound.
    #[error("enumeration of {size} elements exceeds the bound {bound}")]
    BoundExceeded { size: String, bound: u64 },

    /// Input text or JSON could not be parsed into a matrix.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal invariant failed; this indicates a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
