//! Seeded Monte Carlo simulation compared with the exact posterior.

use redip::dist::build_dist_pga;
use redip::lang::{infer, parse};
use redip::oracle::{mc_sample, PgaSampler, PriorSampler};
use redip::query::marginal;
use redip::rational::{rat, to_f64};
use redip::DistSpec;

fn main() -> redip::Result<()> {
    // Prior y ~ Geometric(1/3); observing an even x = y + noise favors even y.
    let (p, a) = parse("x += y; x += bernoulli(1/4); observe(x % 2 == 0)")?;
    let y = a.var("y").unwrap();
    let prior = build_dist_pga(&DistSpec::Geometric(rat(1, 3)), y, &a)?;
    let exact = marginal(&infer(&p, &prior)?.posterior, y, 5)?;

    let report = mc_sample(&p, &a, &PriorSampler::Pga(PgaSampler::new(&prior)?), 42, 200_000)?;
    println!("violation frequency {:.4}", report.violation_frequency());
    let sampled = report.marginal(y);
    for (k, e) in exact.iter().enumerate() {
        let f = sampled.get(&(k as u64)).copied().unwrap_or(0.0);
        println!("P(y = {k}): exact {:.5}  sampled {:.5}", to_f64(e), f);
    }
    Ok(())
}
