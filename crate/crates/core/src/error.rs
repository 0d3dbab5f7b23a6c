use std::path::PathBuf;

use crate::alphabet::Alphabet;
use crate::lang::LangError;
use crate::rational::ExtRational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: Alphabet, right: Alphabet },

    #[error("automaton has infinite mass")]
    InfiniteMass,

    #[error("automaton has zero mass; normalization undefined")]
    ZeroMass,

    #[error("infeasible observation: the normalizing constant is 0")]
    InfeasibleObservation,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid distribution parameter: {0}")]
    InvalidParameter(String),

    #[error("custom distribution has mass {0}, expected exactly 1")]
    CustomMassNotOne(ExtRational),

    #[error("custom distribution is not a single-variable PGA: {0}")]
    CustomNotNormalized(String),

    #[error("iid statements are not supported by the exact oracle")]
    UnsupportedIid,

    #[error("prior automaton does not have finite support")]
    PriorNotFinite,

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error(transparent)]
    Lang(#[from] LangError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Errors raised while reading the PGA JSON format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("parse error in field `{field}`: {message}")]
    Field { field: String, message: String },

    #[error("invalid weight `{value}` in field `{field}`")]
    InvalidWeight { field: String, value: String },
}
