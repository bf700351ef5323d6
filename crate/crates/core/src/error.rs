use thiserror::Error;

use crate::channel::ChannelFamily;

/// Which end of a parameter interval was violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Lower,
    Upper,
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Lower => f.write_str("lower"),
            Bound::Upper => f.write_str("upper"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    Dimension {
        op: &'static str,
        expected: String,
        found: String,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("not a density matrix: {0}")]
    NotDensity(String),

    #[error("matrix is not positive semidefinite: pivot {pivot} = {value:e}")]
    NotPositiveSemidefinite { pivot: usize, value: f64 },

    #[error("eigenvalue iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "parameter p = {p} outside {family} range [{lower}, {upper}] for n = {n} \
         ({bound} bound violated)"
    )]
    ParameterOutOfRange {
        family: ChannelFamily,
        n: usize,
        p: f64,
        lower: f64,
        upper: f64,
        bound: Bound,
    },

    #[error("invalid channel coefficients: {0}")]
    InvalidChannel(String),

    #[error("degenerate parameters: {0}; use the Cholesky extraction instead")]
    Degenerate(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
