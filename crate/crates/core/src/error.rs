use thiserror::Error;

use crate::graded_algebra::ShiftedBidegree;

/// Errors raised by the algebra engine and the layers built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("operands were built over different generator tables")]
    TableMismatch,

    #[error("invalid generator table: {0}")]
    InvalidTable(String),

    #[error("{what} must be homogeneous of shifted bidegree {expected}, found {found}")]
    WrongBidegree {
        what: String,
        expected: ShiftedBidegree,
        found: String,
    },

    #[error("{0} is not homogeneous")]
    NotHomogeneous(String),

    #[error("constants are not antisymmetric: {0}")]
    NotAntisymmetric(String),

    #[error("{{S,S}} != 0: {0}")]
    NotAStructure(String),

    #[error("bivector is degenerate (singular coefficient matrix)")]
    Singular,

    #[error("coefficients must be constant: {0}")]
    NonConstant(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("{0}")]
    NotPoisson(String),

    #[error("{0}")]
    NotPresymplectic(String),

    #[error("invalid section: {0}")]
    InvalidSection(String),

    #[error("invalid setup: {0}")]
    InvalidSetup(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
