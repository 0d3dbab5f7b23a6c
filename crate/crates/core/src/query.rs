//! Exact queries against a (posterior) automaton.

use serde::Serialize;

use crate::alphabet::{Alphabet, Valuation, Var};
use crate::constructions::{label_subst_one, product};
use crate::dfa::build_guard_dfa;
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::pga::Pga;
use crate::rational::{format_fraction, to_decimal, ExtRational, Rational};

fn finite(m: ExtRational) -> Result<Rational> {
    m.into_finite().ok_or(Error::InfiniteMass)
}

/// Mass of the automaton filtered by `g`: `P(φ)` on a normalized automaton.
pub fn guard_probability(a: &Pga, g: &Guard) -> Result<Rational> {
    finite(product(a, &build_guard_dfa(g, a.alphabet()))?.mass())
}

/// Marginal `P(x = 0..=upto)`: every other variable is erased, then equality guards are applied.
pub fn marginal(a: &Pga, x: Var, upto: u64) -> Result<Vec<Rational>> {
    let mut m = a.clone();
    for v in a.alphabet().vars().filter(|&v| v != x) {
        m = label_subst_one(&m, v);
    }
    let m = m.trim();
    (0..=upto).map(|k| guard_probability(&m, &Guard::equals(x, k))).collect()
}

/// Parses `"x=2, r=0"`; unnamed variables are 0.
pub fn parse_valuation(text: &str, alphabet: &Alphabet) -> Result<Valuation> {
    let mut sigma = Valuation::zero(alphabet);
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected `name=value`, found `{part}`")))?;
        let x = alphabet.var(name.trim()).ok_or_else(|| Error::UnknownVariable(name.trim().to_string()))?;
        let n = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("`{}` is not a natural number", value.trim())))?;
        sigma.set(x, n);
    }
    Ok(sigma)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryKind {
    Mass,
    Coefficient,
    GuardProbability,
    Marginal,
    NormalizingConstant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryValue {
    pub label: String,
    #[serde(skip)]
    pub value: Rational,
    /// Always `num/den`.
    pub exact: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
}

/// Exact answer to a query, with optional decimal renderings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryResult {
    pub kind: QueryKind,
    pub values: Vec<QueryValue>,
}

impl QueryResult {
    pub fn new(kind: QueryKind, values: impl IntoIterator<Item = (String, Rational)>, digits: Option<usize>) -> Self {
        let values = values
            .into_iter()
            .map(|(label, r)| QueryValue {
                label,
                exact: format_fraction(&r),
                decimal: digits.map(|d| to_decimal(&r, d)),
                value: r,
            })
            .collect();
        QueryResult { kind, values }
    }

    pub fn single(kind: QueryKind, label: impl Into<String>, r: Rational, digits: Option<usize>) -> Self {
        QueryResult::new(kind, [(label.into(), r)], digits)
    }
}
