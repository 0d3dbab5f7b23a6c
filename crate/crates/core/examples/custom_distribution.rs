//! A user-supplied distribution loaded from a PGA JSON file.

use std::path::Path;

use redip::lang::{dirac_prior, infer, parse};
use redip::query::marginal;

fn main() -> redip::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/programs");
    let src = std::fs::read_to_string(dir.join("custom_die.redip")).map_err(|source| redip::Error::Io { path: dir.join("custom_die.redip"), source })?;
    let (program, alphabet) = parse(&src)?;
    let program = program.with_custom_base(&dir);
    let report = infer(&program, &dirac_prior(&alphabet))?;
    println!("normalizing constant = {}", report.normalizing_constant);
    for name in ["heads", "tails"] {
        let v = alphabet.var(name).unwrap();
        let m: Vec<String> = marginal(&report.posterior, v, 3)?.iter().map(|p| p.to_string()).collect();
        println!("{name}: {}", m.join(", "));
    }
    Ok(())
}
