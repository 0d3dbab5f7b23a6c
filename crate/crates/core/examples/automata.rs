//! Building a PGA by hand, computing its mass with every solver route,
//! reading off coefficients and normalizing.

use redip::rational::rat;
use redip::{Alphabet, MassMethod, PgaBuilder, Valuation};

fn main() -> redip::Result<()> {
    // Two states over {x, y}: a loop emitting x, then one y.
    let alphabet = Alphabet::new(["x", "y"]);
    let x = alphabet.var("x").unwrap();
    let y = alphabet.var("y").unwrap();
    let mut b = PgaBuilder::new(alphabet.clone(), 2);
    b.initial(0, rat(1, 1))
        .edge(0, 0, rat(1, 2), Some(x))
        .edge(0, 1, rat(1, 4), Some(y))
        .final_weight(0, rat(1, 4))
        .final_weight(1, rat(1, 1));
    let a = b.build();
    println!("{a}");

    for method in [MassMethod::Blocked, MassMethod::Elimination, MassMethod::LinearProgram] {
        println!("mass via {method:?} = {}", a.mass_with(method));
    }
    let report = a.validate();
    println!("is PGA: {}", report.is_pga);

    let table = a.coefficients_in_box(&[3, 1])?;
    for (sigma, c) in table.iter() {
        println!("[{}] {c}", sigma.display(&alphabet));
    }
    let point = Valuation::from_counts(vec![2, 1]);
    println!("coefficient at x=2, y=1: {}", a.coefficient(&point)?);
    println!("paths up to length 3: {}", a.enumerate_paths(3).len());

    let lossy = a.scale_initial(&rat(1, 3));
    let normalized = lossy.normalize()?;
    println!("scaled mass {} -> normalized mass {}", lossy.mass(), normalized.mass());
    let _ = (x, y);
    Ok(())
}
