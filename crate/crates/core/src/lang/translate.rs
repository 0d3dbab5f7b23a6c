//! Statement-by-statement translation of programs into automata transformations.

use num_traits::{One, Zero};

use super::ast::Program;
use crate::alphabet::{Alphabet, Var};
use crate::constructions::{concat, decrement, label_subst_one, product, transition_subst, weighted_union};
use crate::dfa::build_guard_dfa;
use crate::dist::{build_dist_pga, DistSpec};
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::pga::{Pga, PgaBuilder};
use crate::rational::{int, ExtRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TranslateOptions {
    /// Trim after every construction step. Disabling it yields the raw sizes of the size analysis.
    pub trim: bool,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions { trim: true }
    }
}

/// One construction applied during translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub construction: &'static str,
    pub input_size: usize,
    pub pre_trim_size: usize,
    pub post_trim_size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<StepRecord>,
}

impl Trace {
    pub fn max_pre_trim_size(&self) -> usize {
        self.steps.iter().map(|s| s.pre_trim_size).max().unwrap_or(0)
    }
}

struct Translator<'a> {
    alphabet: &'a Alphabet,
    opts: TranslateOptions,
    trace: Trace,
}

/// Gadget `0 -Y-> 1 -X-> 2` realizing `Y ↦ XY`.
pub fn increment_gadget(x: Var, y: Var, alphabet: &Alphabet) -> Pga {
    let mut b = PgaBuilder::new(alphabet.clone(), 3);
    b.initial(0, int(1)).edge(0, 1, int(1), Some(y)).edge(1, 2, int(1), Some(x)).final_weight(2, int(1));
    b.build()
}

/// Gadget `Y · A_D(X)` realizing `Y ↦ Y·G_D(X)`.
pub fn iid_gadget(x: Var, d: &DistSpec, y: Var, alphabet: &Alphabet) -> Result<Pga> {
    let mut b = PgaBuilder::new(alphabet.clone(), 2);
    b.initial(0, int(1)).edge(0, 1, int(1), Some(y)).final_weight(1, int(1));
    concat(&b.build(), &build_dist_pga(d, x, alphabet)?)
}

impl Translator<'_> {
    fn record(&mut self, construction: &'static str, input: &Pga, raw: Pga) -> Pga {
        let pre = raw.size();
        let out = if self.opts.trim { raw.trim() } else { raw };
        self.trace.steps.push(StepRecord {
            construction,
            input_size: input.size(),
            pre_trim_size: pre,
            post_trim_size: out.size(),
        });
        out
    }

    fn filter(&mut self, a: &Pga, g: &Guard) -> Result<Pga> {
        let raw = product(a, &build_guard_dfa(g, self.alphabet))?;
        Ok(self.record("product", a, raw))
    }

    fn run(&mut self, p: &Program, a: Pga) -> Result<Pga> {
        let al = self.alphabet;
        match p {
            Program::SetZero(x) => {
                let raw = label_subst_one(&a, *x);
                Ok(self.record("label-substitution", &a, raw))
            }
            Program::IncrConst(x, n) => {
                let raw = concat(&a, &build_dist_pga(&DistSpec::Dirac(*n), *x, al)?)?;
                Ok(self.record("concatenation", &a, raw))
            }
            Program::IncrDist(x, d) => {
                let raw = concat(&a, &build_dist_pga(d, *x, al)?)?;
                Ok(self.record("concatenation", &a, raw))
            }
            Program::IncrVar(x, y) => {
                let raw = transition_subst(&a, *y, &increment_gadget(*x, *y, al))?;
                Ok(self.record("transition-substitution", &a, raw))
            }
            Program::IncrIid(x, d, y) => {
                let raw = transition_subst(&a, *y, &iid_gadget(*x, d, *y, al)?)?;
                Ok(self.record("transition-substitution", &a, raw))
            }
            Program::Decr(x) => {
                let raw = decrement(&a, *x)?;
                Ok(self.record("decrement", &a, raw))
            }
            Program::Observe(g) => self.filter(&a, g),
            Program::Choice(l, p, r) => {
                let left = self.run(l, a.clone())?;
                let right = self.run(r, a.clone())?;
                let raw = weighted_union(&left, &right, p, &(Rational::one() - p))?;
                Ok(self.record("union", &a, raw))
            }
            Program::IfElse(g, l, r) => {
                let yes = self.filter(&a, g)?;
                let no = self.filter(&a, &Guard::not(g.clone()))?;
                let left = self.run(l, yes)?;
                let right = self.run(r, no)?;
                let raw = weighted_union(&left, &right, &Rational::one(), &Rational::one())?;
                Ok(self.record("union", &a, raw))
            }
            Program::Seq(l, r) => {
                let mid = self.run(l, a)?;
                self.run(r, mid)
            }
        }
    }
}

/// Unnormalized posterior automaton of `p` from `prior`, trimmed after every step.
pub fn translate(p: &Program, prior: &Pga) -> Result<Pga> {
    translate_traced(p, prior, TranslateOptions::default()).map(|(a, _)| a)
}

pub fn translate_traced(p: &Program, prior: &Pga, opts: TranslateOptions) -> Result<(Pga, Trace)> {
    let mut t = Translator { alphabet: prior.alphabet(), opts, trace: Trace::default() };
    let start = if opts.trim { prior.trim() } else { prior.clone() };
    let out = t.run(p, start)?;
    Ok((out, t.trace))
}

/// The point mass at the all-zero valuation.
pub fn dirac_prior(alphabet: &Alphabet) -> Pga {
    let mut b = PgaBuilder::new(alphabet.clone(), 1);
    b.initial(0, int(1)).final_weight(0, int(1));
    b.build()
}

#[derive(Clone, Debug)]
pub struct InferenceReport {
    pub unnormalized: Pga,
    pub posterior: Pga,
    pub normalizing_constant: Rational,
    pub violation_mass: Rational,
    pub prior_mass: Rational,
}

/// Posterior, normalizing constant and observation-violation mass.
pub fn infer(p: &Program, prior: &Pga) -> Result<InferenceReport> {
    let prior_mass = prior.mass().into_finite().ok_or(Error::InfiniteMass)?;
    let unnormalized = translate(p, prior)?;
    let z = match unnormalized.mass() {
        ExtRational::Infinity => return Err(Error::InfiniteMass),
        ExtRational::Finite(z) => z,
    };
    if z.is_zero() {
        return Err(Error::InfeasibleObservation);
    }
    let posterior = unnormalized.scale_initial(&z.recip());
    Ok(InferenceReport {
        violation_mass: &prior_mass - &z,
        posterior,
        unnormalized,
        normalizing_constant: z,
        prior_mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Valuation;
    use crate::constructions::product;
    use crate::lang::{parse, parse_in};
    use crate::rational::rat;

    const INSURANCE: &str = "{ r := 0 } [9/10] { r := 1 };\n\
        if (r == 0) { x += negbinomial(1, 1/2) } else { x += negbinomial(2, 1/2) };\n\
        observe(x >= 2)";

    #[test]
    fn insurance_numbers() {
        let (p, a) = parse(INSURANCE).unwrap();
        let report = infer(&p, &dirac_prior(&a)).unwrap();
        assert_eq!(report.normalizing_constant, rat(11, 40));
        assert_eq!(report.violation_mass, rat(29, 40));
        let r = a.var("r").unwrap();
        let low = product(&report.unnormalized, &build_guard_dfa(&Guard::less_than(r, 1), &a)).unwrap();
        assert_eq!(low.mass(), ExtRational::Finite(rat(9, 40)));
        let high = product(&report.unnormalized, &build_guard_dfa(&Guard::not(Guard::less_than(r, 1)), &a)).unwrap();
        assert_eq!(high.mass(), ExtRational::Finite(rat(1, 20)));
        let risky = product(&report.posterior, &build_guard_dfa(&Guard::not(Guard::less_than(r, 1)), &a)).unwrap();
        assert_eq!(risky.mass(), ExtRational::Finite(rat(2, 11)));
        let s = Valuation::from_pairs(&a, [("x", 2), ("r", 0)]).unwrap();
        assert_eq!(report.posterior.coefficient(&s).unwrap(), rat(9, 22));
    }

    #[test]
    fn example_with_variable_increment() {
        let a = Alphabet::new(["x", "y"]);
        let p = parse_in("{x += y} [1/2] {skip}; observe(x == 0)", &a).unwrap();
        let mut b = PgaBuilder::new(a.clone(), 3);
        b.initial(0, int(1))
            .final_weight(0, rat(1, 2))
            .edge(0, 1, rat(1, 2), Some(Var(1)))
            .edge(1, 2, int(1), Some(Var(1)))
            .final_weight(2, int(1));
        let report = infer(&p, &b.build()).unwrap();
        let at = |x, y| Valuation::from_counts(vec![x, y]);
        assert_eq!(report.unnormalized.coefficient(&at(0, 0)).unwrap(), rat(1, 2));
        assert_eq!(report.unnormalized.coefficient(&at(0, 2)).unwrap(), rat(1, 4));
        assert_eq!(report.violation_mass, rat(1, 4));
        assert_eq!(report.posterior.coefficient(&at(0, 0)).unwrap(), rat(2, 3));
        assert_eq!(report.posterior.coefficient(&at(0, 2)).unwrap(), rat(1, 3));
    }

    #[test]
    fn skip_preserves_behavior() {
        let a = Alphabet::new(["x"]);
        let prior = build_dist_pga(&DistSpec::Geometric(rat(1, 3)), Var(0), &a).unwrap();
        let out = translate(&parse_in("skip", &a).unwrap(), &prior).unwrap();
        for k in 0..6 {
            let s = Valuation::from_counts(vec![k]);
            assert_eq!(out.coefficient(&s).unwrap(), prior.coefficient(&s).unwrap());
        }
    }

    #[test]
    fn infeasible_observation() {
        let (p, a) = parse("observe(false)").unwrap();
        assert!(matches!(infer(&p, &dirac_prior(&a)), Err(Error::InfeasibleObservation)));
    }

    #[test]
    fn untrimmed_translation_records_raw_sizes() {
        let (p, a) = parse(INSURANCE).unwrap();
        let (raw, trace) = translate_traced(&p, &dirac_prior(&a), TranslateOptions { trim: false }).unwrap();
        assert_eq!(raw.size(), trace.steps.last().unwrap().pre_trim_size);
        assert_eq!(raw.mass(), ExtRational::Finite(rat(11, 40)));
        let (_, trimmed) = translate_traced(&p, &dirac_prior(&a), TranslateOptions::default()).unwrap();
        assert!(trimmed.max_pre_trim_size() <= trace.max_pre_trim_size());
    }
}
