//! Cross-checking the automata pipeline against exact Markov-chain enumeration.

use redip::lang::{dirac_prior, parse};
use redip::oracle::compare;

fn main() -> redip::Result<()> {
    let programs = [
        include_str!("programs/insurance.redip"),
        "{ x += geometric(1/2) } [1/3] { x += uniform(4) }; if (x % 2 == 0) { y += x } else { x-- }; observe(y < 3)",
        "x += binomial(3, 1/2); observe(x >= 1)",
    ];
    for src in programs {
        let (p, a) = match parse(src) {
            Ok(parsed) => parsed,
            Err(e) => {
                println!("skipping: {e}");
                continue;
            }
        };
        let v = compare(&p, &dirac_prior(&a), 40)?;
        println!(
            "{} checked {} quantities, Z = {}, worst discrepancy {:.3e}, residual {:.3e}",
            if v.pass { "PASS" } else { "FAIL" },
            v.checked,
            v.normalizing_constant,
            redip::rational::to_f64(&v.worst_discrepancy),
            redip::rational::to_f64(&v.residual),
        );
    }
    Ok(())
}
