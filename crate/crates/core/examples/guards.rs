//! Guards compiled to deterministic automata over variable occurrences.

use redip::alphabet::parikh;
use redip::dfa::{build_guard_dfa, state_bound};
use redip::lang::parse_guard;
use redip::Alphabet;

fn main() -> redip::Result<()> {
    let alphabet = Alphabet::new(["x", "y"]);
    let x = alphabet.var("x").unwrap();
    let y = alphabet.var("y").unwrap();
    for text in ["x < 3", "x % 2 == 1 and not (y < 1)", "x == 2 or y >= 4"] {
        let g = parse_guard(text, &alphabet)?;
        let dfa = build_guard_dfa(&g, &alphabet);
        println!("{}: {} states (bound {})", g.display(&alphabet), dfa.num_states(), state_bound(&g));
        for word in [vec![x, y], vec![x, x, x], vec![y, x, y, y, y, x, x]] {
            let sigma = parikh(&word, &alphabet);
            println!("  [{}] accepted = {}", sigma.display(&alphabet), dfa.accepts(&word));
        }
    }
    let g = parse_guard("x % 3 == 0", &alphabet)?;
    println!("\n{}", build_guard_dfa(&g, &alphabet).to_dot());
    Ok(())
}
