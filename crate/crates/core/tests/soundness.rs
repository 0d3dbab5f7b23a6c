mod common;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

use redip::lang::{dirac_prior, parse, pretty, translate};
use redip::oracle::{compare, enumerate, finite_prior, MarkovChain};
use redip::rational::rat;
use redip::{Alphabet, Error, Pga, PgaBuilder, Valuation, Var};

/// Random prior with finite support: a forward-only automaton.
fn finite_random_prior<R: Rng>(rng: &mut R, a: &Alphabet) -> Pga {
    let n = rng.gen_range(1..=4);
    let mut b = PgaBuilder::new(a.clone(), n);
    for q in 0..n {
        let m = if q + 1 == n { 0 } else { rng.gen_range(0..=2) };
        let w = random_weights(rng, m + 1, false);
        b.final_weight(q, w[m].clone());
        for wi in &w[..m] {
            let sym = if rng.gen_bool(0.2) { None } else { Some(Var(rng.gen_range(0..a.len()))) };
            b.edge(q, rng.gen_range(q + 1..n), wi.clone(), sym);
        }
    }
    b.initial(0, rat(1, 1));
    b.build()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn pipeline_within_oracle_bounds_from_finite_priors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = Alphabet::new(["x", "y", "z"]);
        let p = random_program(&mut r, ProgramShape { vars: 3, max_size: 10, ..ProgramShape::default() });
        let prior = finite_random_prior(&mut r, &a);
        let v = compare(&p, &prior, 25).unwrap();
        prop_assert!(v.pass, "{}\n{:?}", pretty(&p, &a), v.failures);
    }

    #[test]
    fn oracle_conserves_mass(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = xy();
        let p = random_program(&mut r, ProgramShape::default());
        let prior = finite_random_prior(&mut r, &a);
        let support = finite_prior(&prior).unwrap();
        let e = enumerate(&p, &support, 15).unwrap();
        let total = &e.terminal_mass() + &e.violation + &e.residual;
        prop_assert_eq!(Some(total), prior.mass().into_finite());
    }

    #[test]
    fn every_step_is_stochastic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_program(&mut r, ProgramShape::default());
        let chain = MarkovChain::new(&p, 10).unwrap();
        let mut frontier = vec![chain.initial(Valuation::from_counts(vec![r.gen_range(0..3), r.gen_range(0..3)]))];
        while let Some(c) = frontier.pop() {
            let d = chain.step(&c);
            prop_assert!(d.total().is_one());
            for (_, s) in d.successors {
                if chain.measure(&s) > 0 {
                    prop_assert!(chain.measure(&s) < chain.measure(&c));
                    if frontier.len() < 200 {
                        frontier.push(s);
                    }
                }
            }
        }
    }
}

#[test]
fn insurance_within_truncation_bound() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/programs/insurance.redip")).unwrap();
    let (p, a) = parse(&src).unwrap();
    let v = compare(&p, &dirac_prior(&a), 40).unwrap();
    assert!(v.pass);
    assert!(v.worst_discrepancy < rat(1, 1 << 38));
    assert!(v.residual < rat(1, 1 << 38));
}

#[test]
fn oracle_detects_a_wrong_pipeline() {
    let (p, a) = parse("{ x += 1 } [1/3] { x += 2 }").unwrap();
    let q = redip::lang::parse_in("{ x += 1 } [1/2] { x += 2 }", &a).unwrap();
    let e = enumerate(&p, &[(Valuation::zero(&a), rat(1, 1))], 5).unwrap();
    let wrong = translate(&q, &dirac_prior(&a)).unwrap();
    let one = Valuation::from_counts(vec![1]);
    assert_ne!(e.terminal[&one], wrong.coefficient(&one).unwrap());
}

#[test]
fn exact_oracle_rejects_iid_and_infinite_priors() {
    let (p, a) = parse("x += iid(geometric(1/2), y)").unwrap();
    assert!(matches!(compare(&p, &dirac_prior(&a), 5), Err(Error::UnsupportedIid)));
    let (q, b) = parse("x += 1").unwrap();
    let geo = redip::dist::build_dist_pga(&redip::DistSpec::Geometric(rat(1, 2)), Var(0), &b).unwrap();
    assert!(matches!(compare(&q, &geo, 5), Err(Error::PriorNotFinite)));
}

#[test]
fn enumeration_is_deterministic() {
    let (p, a) = parse("{ x += geometric(1/3) } [1/4] { y += uniform(3) }; if (x < 2) { y += x } else { x-- }").unwrap();
    let prior = [(Valuation::zero(&a), rat(1, 1))];
    let e1 = enumerate(&p, &prior, 12).unwrap();
    let e2 = enumerate(&p, &prior, 12).unwrap();
    assert_eq!(e1, e2);
    assert!(!e1.residual.is_zero());
}
