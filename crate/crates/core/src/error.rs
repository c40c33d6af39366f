use std::fmt;

use thiserror::Error;

/// A hypothesis that a localization result depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// The right-hand matrix must be strictly diagonally dominant.
    BStrictlyDiagonallyDominant,
    /// The right-hand matrix must be positive definite.
    BPositiveDefinite,
    /// The left-hand matrix must be copositive.
    ACopositive,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::BStrictlyDiagonallyDominant => {
                f.write_str("B strictly diagonally dominant (one-row and two-row sets)")
            }
            Hypothesis::BPositiveDefinite => {
                f.write_str("B positive definite (one-row and two-row sets)")
            }
            Hypothesis::ACopositive => {
                f.write_str("A copositive (copositive one-row set K1' and two-row set K2)")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix dimension must be at least {min}, got {n}")]
    InvalidDimension { n: usize, min: usize },

    #[error("expected {expected} entries for a {n}x{n} matrix, got {got}")]
    EntryCount { n: usize, expected: usize, got: usize },

    #[error("matrix entry ({i},{j}) is not finite")]
    NonFinite { i: usize, j: usize },

    #[error("matrix is not symmetric: entries ({i},{j}) and ({j},{i}) differ by {diff:e}")]
    Asymmetric { i: usize, j: usize, diff: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {n} exceeds the configured limit {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("matrix is not positive definite (pivot {pivot:e} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(Hypothesis),

    #[error("shift must be nonnegative, got {0}")]
    NegativeShift(f64),

    #[error("quadratic has negative discriminant {0:e}")]
    NegativeDiscriminant(f64),

    #[error("quadratic leading coefficient must be positive, got {0}")]
    NotConvex(f64),

    #[error("no real root found in [{lo}, {hi}]")]
    NoRealRoot { lo: f64, hi: f64 },

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("matrices do not commute (||AB - BA|| = {0:e})")]
    NotCommuting(f64),

    #[error("invalid interval [{lo}, {hi}]")]
    InvertedInterval { lo: f64, hi: f64 },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
