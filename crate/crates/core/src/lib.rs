//! Exact posterior inference for loop-free discrete probabilistic programs,
//! by compiling them into probability generating automata.

pub mod alphabet;
pub mod constructions;
pub mod dfa;
pub mod dist;
pub mod dot;
pub mod error;
pub mod guard;
pub mod json;
pub mod lang;
pub mod oracle;
pub mod pga;
pub mod query;
pub mod rational;
pub mod solver;

pub use alphabet::{Alphabet, Valuation, Var};
pub use dfa::GuardDfa;
pub use dist::DistSpec;
pub use error::{Error, FormatError, Result};
pub use guard::Guard;
pub use pga::{Edge, MassMethod, Pga, PgaBuilder, ValidationReport, WeightedPath};
pub use rational::{ExtRational, Rational};
