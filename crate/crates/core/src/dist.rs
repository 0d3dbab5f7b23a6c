//! Automata for the built-in distributions and for user-supplied ones.

use std::fmt;
use std::path::PathBuf;

use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Var};
use crate::constructions::concat;
use crate::error::{Error, Result};
use crate::pga::{Pga, PgaBuilder};
use crate::rational::{format_fraction, int, ExtRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DistSpec {
    Geometric(Rational),
    Bernoulli(Rational),
    Dirac(u64),
    Uniform(u64),
    Binomial(u64, Rational),
    NegBinomial(u64, Rational),
    /// A PGA JSON file over a single variable with mass exactly 1.
    Custom(PathBuf),
}

impl DistSpec {
    /// Checks parameter ranges without building anything.
    pub fn check(&self) -> Result<()> {
        let prob = |p: &Rational, what: &str| {
            if *p < Rational::zero() || *p > Rational::one() {
                Err(Error::InvalidParameter(format!("{what}: probability {p} outside [0, 1]")))
            } else {
                Ok(())
            }
        };
        match self {
            DistSpec::Geometric(p) => {
                prob(p, "geometric")?;
                if p.is_zero() {
                    return Err(Error::InvalidParameter("geometric(0) has no mass".into()));
                }
                Ok(())
            }
            DistSpec::Bernoulli(p) | DistSpec::Binomial(_, p) => prob(p, "bernoulli"),
            DistSpec::NegBinomial(n, p) => {
                prob(p, "negbinomial")?;
                if p.is_zero() && *n > 0 {
                    return Err(Error::InvalidParameter("negbinomial with p = 0 has no mass".into()));
                }
                Ok(())
            }
            DistSpec::Uniform(0) => Err(Error::InvalidParameter("uniform(0) is empty".into())),
            DistSpec::Dirac(_) | DistSpec::Uniform(_) | DistSpec::Custom(_) => Ok(()),
        }
    }

    /// True when the distribution has finite support (no cycles in its automaton).
    pub fn is_finite_support(&self) -> bool {
        match self {
            DistSpec::Geometric(p) => p.is_one(),
            DistSpec::NegBinomial(n, p) => *n == 0 || p.is_one(),
            DistSpec::Custom(_) => false,
            _ => true,
        }
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |r: &Rational| {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format_fraction(r)
            }
        };
        match self {
            DistSpec::Geometric(q) => write!(f, "geometric({})", p(q)),
            DistSpec::Bernoulli(q) => write!(f, "bernoulli({})", p(q)),
            DistSpec::Dirac(n) => write!(f, "dirac({n})"),
            DistSpec::Uniform(m) => write!(f, "uniform({m})"),
            DistSpec::Binomial(n, q) => write!(f, "binomial({n}, {})", p(q)),
            DistSpec::NegBinomial(n, q) => write!(f, "negbinomial({n}, {})", p(q)),
            DistSpec::Custom(path) => write!(f, "custom({:?})", path.display().to_string()),
        }
    }
}

fn dirac(x: Var, n: u64, alphabet: &Alphabet) -> Pga {
    let n = n as usize;
    let mut b = PgaBuilder::new(alphabet.clone(), n + 1);
    b.initial(0, int(1)).final_weight(n, int(1));
    for s in 0..n {
        b.edge(s, s + 1, int(1), Some(x));
    }
    b.build()
}

fn geometric(x: Var, p: &Rational, alphabet: &Alphabet) -> Pga {
    let mut b = PgaBuilder::new(alphabet.clone(), 1);
    b.initial(0, int(1)).final_weight(0, p.clone()).edge(0, 0, Rational::one() - p, Some(x));
    b.build()
}

fn bernoulli(x: Var, p: &Rational, alphabet: &Alphabet) -> Pga {
    let mut b = PgaBuilder::new(alphabet.clone(), 2);
    b.initial(0, int(1))
        .final_weight(0, Rational::one() - p)
        .edge(0, 1, p.clone(), Some(x))
        .final_weight(1, int(1));
    b.build()
}

fn uniform(x: Var, m: u64, alphabet: &Alphabet) -> Pga {
    let m = m as usize;
    let w = Rational::new(1.into(), (m as u64).into());
    let mut b = PgaBuilder::new(alphabet.clone(), m);
    b.initial(0, int(1));
    for s in 0..m {
        b.final_weight(s, w.clone());
        if s + 1 < m {
            b.edge(s, s + 1, int(1), Some(x));
        }
    }
    b.build()
}

fn repeat(unit: Pga, n: u64, x: Var, alphabet: &Alphabet) -> Result<Pga> {
    if n == 0 {
        return Ok(dirac(x, 0, alphabet));
    }
    let mut acc = unit.clone();
    for _ in 1..n {
        acc = concat(&acc, &unit)?;
    }
    Ok(acc)
}

/// The automaton for `spec` generating variable `x`, over the full `alphabet`.
pub fn build_dist_pga(spec: &DistSpec, x: Var, alphabet: &Alphabet) -> Result<Pga> {
    spec.check()?;
    match spec {
        DistSpec::Geometric(p) => Ok(geometric(x, p, alphabet)),
        DistSpec::Bernoulli(p) => Ok(bernoulli(x, p, alphabet)),
        DistSpec::Dirac(n) => Ok(dirac(x, *n, alphabet)),
        DistSpec::Uniform(m) => Ok(uniform(x, *m, alphabet)),
        DistSpec::Binomial(n, p) => repeat(bernoulli(x, p, alphabet), *n, x, alphabet),
        DistSpec::NegBinomial(n, p) => repeat(geometric(x, p, alphabet), *n, x, alphabet),
        DistSpec::Custom(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| Error::Io { path: path.clone(), source })?;
            let pga = crate::json::deserialize(&text)?;
            custom_from_pga(&pga, x, alphabet)
        }
    }
}

/// Validates a single-variable automaton of mass exactly 1 and re-letters it to `x`.
pub fn custom_from_pga(pga: &Pga, x: Var, alphabet: &Alphabet) -> Result<Pga> {
    if pga.alphabet().len() > 1 {
        return Err(Error::CustomNotNormalized(format!(
            "expected one variable, found {}",
            pga.alphabet()
        )));
    }
    let from = pga.alphabet().vars().next();
    match pga.mass() {
        m if m == ExtRational::one() => {}
        m => return Err(Error::CustomMassNotOne(m)),
    }
    Ok(pga.reletter(alphabet, from, x))
}
