//! The automata constructions composed by the translation, applied directly.

use redip::constructions::{concat, decrement, label_subst_one, label_subst_zero, product, transition_subst, weighted_union};
use redip::dfa::build_guard_dfa;
use redip::dist::build_dist_pga;
use redip::lang::parse_guard;
use redip::rational::rat;
use redip::{Alphabet, DistSpec, Pga};

fn show(name: &str, a: &Pga) -> redip::Result<()> {
    let t = a.trim();
    let table = t.coefficients_in_box(&[3, 3])?;
    let nonzero: Vec<String> = table
        .iter()
        .filter(|(_, c)| **c != rat(0, 1))
        .map(|(s, c)| format!("[{}] {c}", s.display(a.alphabet())))
        .collect();
    println!("{name:<24} raw size {:>3}  trimmed {:>3}  mass {}", a.size(), t.size(), t.mass());
    println!("    {}", nonzero.join("  "));
    Ok(())
}

fn main() -> redip::Result<()> {
    let alphabet = Alphabet::new(["x", "y"]);
    let x = alphabet.var("x").unwrap();
    let y = alphabet.var("y").unwrap();
    let gx = build_dist_pga(&DistSpec::Bernoulli(rat(1, 2)), x, &alphabet)?;
    let uy = build_dist_pga(&DistSpec::Uniform(3), y, &alphabet)?;

    let joint = concat(&gx, &uy)?;
    show("concat", &joint)?;
    show("weighted union 1/3,2/3", &weighted_union(&gx, &uy, &rat(1, 3), &rat(2, 3))?)?;
    show("marginalize y", &label_subst_one(&joint, y))?;
    show("restrict y = 0", &label_subst_zero(&joint, y))?;

    // x += y: every y occurrence also emits an x.
    let gadget = redip::lang::translate::increment_gadget(x, y, &alphabet);
    show("x += y", &transition_subst(&joint, y, &gadget)?)?;

    let guard = parse_guard("x < 1 or y == 2", &alphabet)?;
    show("observe(x < 1 or y == 2)", &product(&joint, &build_guard_dfa(&guard, &alphabet))?)?;
    show("y--", &decrement(&joint, y)?)?;
    Ok(())
}
