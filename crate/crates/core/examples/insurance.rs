//! End-to-end inference on the car-insurance program: exact posterior,
//! normalizing constant and marginals.

use redip::lang::{dirac_prior, infer, parse, pretty};
use redip::query::{guard_probability, marginal};
use redip::rational::to_decimal;
use redip::Guard;

fn main() -> redip::Result<()> {
    let src = include_str!("programs/insurance.redip");
    let (program, alphabet) = parse(src)?;
    println!("{}\n", pretty(&program, &alphabet));

    let report = infer(&program, &dirac_prior(&alphabet))?;
    println!("normalizing constant = {}", report.normalizing_constant);
    println!("violation mass       = {}", report.violation_mass);
    println!("posterior automaton: {} states, size {}", report.posterior.num_states(), report.posterior.size());

    let r = alphabet.var("r").unwrap();
    let risky = guard_probability(&report.posterior, &Guard::not(Guard::less_than(r, 1)))?;
    println!("P(risky | at least two claims) = {} ~ {}", risky, to_decimal(&risky, 6));

    let x = alphabet.var("x").unwrap();
    for (k, p) in marginal(&report.posterior, x, 6)?.iter().enumerate() {
        println!("P(x = {k}) = {p}");
    }
    Ok(())
}
