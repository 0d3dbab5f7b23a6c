//! Serializing a posterior to JSON and Graphviz DOT, and reading it back.

use redip::lang::{dirac_prior, infer, parse};
use redip::{dot, json};

fn main() -> redip::Result<()> {
    let (p, a) = parse("{ x += geometric(1/2) } [1/2] { x += 2 }; observe(x < 3)")?;
    let posterior = infer(&p, &dirac_prior(&a))?.posterior;
    let text = json::serialize(&posterior);
    println!("{text}\n");
    let back = json::deserialize(&text)?;
    assert_eq!(back, posterior);
    println!("{}", dot::export_dot(&back));
    Ok(())
}
