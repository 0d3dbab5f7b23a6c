//! Independent ground truth for the automata pipeline: the operational Markov
//! chain (exact, truncated) and a Monte-Carlo interpreter.

mod chain;
mod mc;

pub use chain::{distribution_table, enumerate, Config, EnumerationReport, MarkovChain, NodeId, StepDistribution};
pub use mc::{mc_sample, McReport, PgaSampler, PriorSampler, CHUNKS};

use num_traits::Zero;

use crate::alphabet::Valuation;
use crate::error::{Error, Result};
use crate::lang::{translate, Program};
use crate::pga::Pga;
use crate::rational::{ExtRational, Rational};

/// Exact support of a prior automaton without cycles.
pub fn finite_prior(prior: &Pga) -> Result<Vec<(Valuation, Rational)>> {
    prior.finite_support().ok_or(Error::PriorNotFinite)
}

/// Outcome of checking the automata pipeline against the chain enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    /// Largest `pipeline − lower bound` over all checked quantities.
    pub worst_discrepancy: Rational,
    pub residual: Rational,
    pub checked: usize,
    pub failures: Vec<String>,
    pub enumeration: EnumerationReport,
    pub normalizing_constant: Rational,
}

/// Checks that every pipeline coefficient, the normalizing constant and the
/// violation mass lie within `[lower bound, lower bound + residual]` of the
/// enumerated chain.
pub fn compare(p: &Program, prior: &Pga, trunc: u64) -> Result<Verdict> {
    let support = finite_prior(prior)?;
    let report = enumerate(p, &support, trunc)?;
    let unnormalized = translate(p, prior)?;
    let alphabet = prior.alphabet();
    let mut bounds = vec![0u64; alphabet.len()];
    for s in report.terminal.keys() {
        for (b, &c) in bounds.iter_mut().zip(s.counts()) {
            *b = (*b).max(c);
        }
    }
    let table = unnormalized.coefficients_in_box(&bounds)?;
    let residual = report.residual.clone();
    let mut worst = Rational::zero();
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut check = |what: String, value: &Rational, lower: &Rational| {
        checked += 1;
        let diff = value - lower;
        if diff < Rational::zero() || diff > residual {
            failures.push(format!("{what}: pipeline {value}, oracle lower bound {lower}, residual {residual}"));
        }
        let d = if diff < Rational::zero() { -diff } else { diff };
        if d > worst {
            worst = d;
        }
    };
    for (s, lower) in &report.terminal {
        let value = table.get(s).expect("terminal valuations lie in the box");
        check(format!("coefficient at {}", s.display(alphabet)), value, lower);
    }
    let z = match unnormalized.mass() {
        ExtRational::Finite(z) => z,
        ExtRational::Infinity => return Err(Error::InfiniteMass),
    };
    check("normalizing constant".into(), &z, &report.terminal_mass());
    let prior_mass = prior.mass().into_finite().ok_or(Error::InfiniteMass)?;
    check("violation mass".into(), &(&prior_mass - &z), &report.violation);
    // Pipeline mass outside the enumerated terminals is at most the residual.
    let outside = &z - table.total();
    check("mass outside enumerated terminals".into(), &outside, &Rational::zero());
    Ok(Verdict {
        pass: failures.is_empty(),
        worst_discrepancy: worst,
        residual: report.residual.clone(),
        checked,
        failures,
        enumeration: report,
        normalizing_constant: z,
    })
}
