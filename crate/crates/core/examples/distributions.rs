//! The library distributions as automata: sizes, masses and first probabilities.

use redip::dist::build_dist_pga;
use redip::rational::rat;
use redip::{Alphabet, DistSpec};

fn main() -> redip::Result<()> {
    let alphabet = Alphabet::new(["x"]);
    let x = alphabet.var("x").unwrap();
    let specs = [
        DistSpec::Geometric(rat(1, 3)),
        DistSpec::Bernoulli(rat(1, 4)),
        DistSpec::Dirac(3),
        DistSpec::Uniform(4),
        DistSpec::Binomial(3, rat(1, 2)),
        DistSpec::NegBinomial(2, rat(1, 2)),
    ];
    for spec in &specs {
        let a = build_dist_pga(spec, x, &alphabet)?;
        let table = a.coefficients_in_box(&[5])?;
        let pmf: Vec<String> = table.iter().map(|(_, p)| p.to_string()).collect();
        println!("{spec:<20} states {:>2}  size {:>2}  mass {}  pmf[0..=5] {}", a.num_states(), a.size(), a.mass(), pmf.join(", "));
    }
    Ok(())
}
