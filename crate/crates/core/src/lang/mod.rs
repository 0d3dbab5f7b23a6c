//! The ReDiP language: concrete syntax, desugaring, printing and translation.

pub mod ast;
pub mod desugar;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod translate;

pub use ast::Program;
pub use pretty::pretty;
pub use translate::{
    dirac_prior, infer, translate, translate_traced, InferenceReport, StepRecord, Trace, TranslateOptions,
};

use crate::alphabet::Alphabet;
use crate::guard::Guard;

/// Name used for the single variable of a program that mentions none.
pub const PLACEHOLDER_VARIABLE: &str = "_";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LangError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError { line: usize, column: usize, message: String },

    #[error("invalid guard at line {line}, column {column}: {message}")]
    GuardConstraintError { line: usize, column: usize, message: String },

    #[error("probability `{value}` at line {line}, column {column} is outside [0, 1]")]
    ProbabilityRangeError { line: usize, column: usize, value: String },

    #[error("invalid distribution at line {line}, column {column}: {message}")]
    InvalidDistribution { line: usize, column: usize, message: String },

    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable { line: usize, column: usize, name: String },
}

impl LangError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            LangError::SyntaxError { line, column, .. }
            | LangError::GuardConstraintError { line, column, .. }
            | LangError::ProbabilityRangeError { line, column, .. }
            | LangError::InvalidDistribution { line, column, .. }
            | LangError::UnknownVariable { line, column, .. } => (*line, *column),
        }
    }
}

/// Parses and desugars a program; the alphabet lists variables by first occurrence.
pub fn parse(src: &str) -> Result<(Program, Alphabet), LangError> {
    let surface = parser::parse_surface(src)?;
    let mut names = desugar::collect_variables(&surface);
    if names.is_empty() {
        names.push(PLACEHOLDER_VARIABLE.to_string());
    }
    let alphabet = Alphabet::new(names);
    let program = desugar::desugar(&surface, &alphabet)?;
    Ok((program, alphabet))
}

/// Parses against a fixed alphabet; unknown variables are errors.
pub fn parse_in(src: &str, alphabet: &Alphabet) -> Result<Program, LangError> {
    let surface = parser::parse_surface(src)?;
    desugar::desugar(&surface, alphabet)
}

/// Parses a program and widens its alphabet with `extra` (appended after the program's own names).
pub fn parse_with(src: &str, extra: &Alphabet) -> Result<(Program, Alphabet), LangError> {
    let surface = parser::parse_surface(src)?;
    let mut names = desugar::collect_variables(&surface);
    names.extend(extra.names().iter().cloned());
    if names.is_empty() {
        names.push(PLACEHOLDER_VARIABLE.to_string());
    }
    let alphabet = Alphabet::new(names);
    let program = desugar::desugar(&surface, &alphabet)?;
    Ok((program, alphabet))
}

/// Parses a guard expression such as `r >= 1 and x % 2 == 0`.
pub fn parse_guard(src: &str, alphabet: &Alphabet) -> Result<Guard, LangError> {
    let g = parser::parse_guard_surface(src)?;
    desugar::desugar_guard(&g, alphabet)
}
