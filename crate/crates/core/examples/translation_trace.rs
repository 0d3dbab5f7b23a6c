//! Program translation with per-step size records, with and without trimming.

use redip::lang::{dirac_prior, parse, translate_traced, TranslateOptions};

fn main() -> redip::Result<()> {
    let (program, alphabet) = parse(include_str!("programs/insurance.redip"))?;
    let prior = dirac_prior(&alphabet);
    for trim in [true, false] {
        let (out, trace) = translate_traced(&program, &prior, TranslateOptions { trim })?;
        println!("trim = {trim}: result size {}, mass {}", out.size(), out.mass());
        for s in &trace.steps {
            println!("  {:<22} in {:>4}  raw {:>4}  trimmed {:>4}", s.construction, s.input_size, s.pre_trim_size, s.post_trim_size);
        }
        println!("  largest raw intermediate: {}", trace.max_pre_trim_size());
    }
    Ok(())
}
