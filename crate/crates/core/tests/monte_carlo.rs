use redip::lang::{dirac_prior, infer, parse};
use redip::oracle::{mc_sample, PgaSampler, PriorSampler};
use redip::query::marginal;
use redip::rational::{rat, to_f64};
use redip::{Guard, Valuation};

fn within_sigmas(freq: f64, p: f64, n: u64, k: f64) -> bool {
    (freq - p).abs() <= k * (p * (1.0 - p) / n as f64).sqrt() + 1e-12
}

#[test]
fn insurance_posterior() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/programs/insurance.redip")).unwrap();
    let (p, a) = parse(&src).unwrap();
    let n = 200_000;
    let r = mc_sample(&p, &a, &PriorSampler::Dirac, 7, n).unwrap();
    let ok = r.samples - r.violations;
    let risky = r.conditional_probability(&Guard::not(Guard::less_than(a.var("r").unwrap(), 1))).unwrap();
    assert!(within_sigmas(risky, 2.0 / 11.0, ok, 4.0), "{risky}");
    assert!(within_sigmas(r.violation_frequency(), 29.0 / 40.0, n, 4.0));
}

#[test]
fn iid_sum_with_fixed_prior() {
    let (p, a) = parse("x += iid(bernoulli(1/2), y)").unwrap();
    let prior = PriorSampler::Fixed(Valuation::from_pairs(&a, [("y", 4)]).unwrap());
    let n = 100_000;
    let r = mc_sample(&p, &a, &prior, 3, n).unwrap();
    let m = r.marginal(a.var("x").unwrap());
    for (k, c) in [1.0, 4.0, 6.0, 4.0, 1.0].into_iter().enumerate() {
        let f = m.get(&(k as u64)).copied().unwrap_or(0.0);
        assert!(within_sigmas(f, c / 16.0, n, 4.0), "P(x = {k}) = {f}");
    }
}

#[test]
fn sampled_prior_matches_exact_marginal() {
    let (p, a) = parse("x += y; observe(x % 2 == 0)").unwrap();
    let y = a.var("y").unwrap();
    let prior = redip::dist::build_dist_pga(&redip::DistSpec::Geometric(rat(1, 3)), y, &a).unwrap();
    let post = infer(&p, &prior).unwrap().posterior;
    let exact = marginal(&post, y, 4).unwrap();
    let n = 100_000;
    let r = mc_sample(&p, &a, &PriorSampler::Pga(PgaSampler::new(&prior).unwrap()), 11, n).unwrap();
    let ok = r.samples - r.violations;
    let m = r.marginal(y);
    for (k, e) in exact.iter().enumerate() {
        let f = m.get(&(k as u64)).copied().unwrap_or(0.0);
        assert!(within_sigmas(f, to_f64(e), ok, 4.0), "P(y = {k}) = {f} vs {e}");
    }
}

#[test]
fn seed_determinism_and_sensitivity() {
    let (p, a) = parse("x += geometric(1/4); { y += x } [1/3] { y += uniform(5) }").unwrap();
    let run = |seed| mc_sample(&p, &a, &PriorSampler::Dirac, seed, 10_000).unwrap();
    assert_eq!(run(1), run(1));
    assert_ne!(run(1), run(2));
}

#[test]
fn infeasible_program_always_violates() {
    let (p, a) = parse("x += 3; observe(x < 2)").unwrap();
    let r = mc_sample(&p, &a, &PriorSampler::Dirac, 0, 1000).unwrap();
    assert_eq!(r.violation_frequency(), 1.0);
    assert!(infer(&p, &dirac_prior(&a)).is_err());
}
