//! Graphviz rendering of automata.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::pga::Pga;
use crate::rational::Rational;

fn weight_label(w: &Rational) -> String {
    w.to_string()
}

/// DOT digraph. Edge labels are `r·X` or `r` (a bare `X` when `r = 1`);
/// initial and final weights are dangling arrows, unlabeled when the weight is 1.
pub fn export_dot(a: &Pga) -> String {
    let mut out = String::from("digraph pga {\n  rankdir=LR;\n  node [shape=circle];\n");
    for q in 0..a.num_states() {
        let _ = writeln!(out, "  q{q} [label=\"{q}\"];");
    }
    for q in 0..a.num_states() {
        let i = a.initial_weight(q);
        if !i.is_zero() {
            let _ = writeln!(out, "  init{q} [shape=point, style=invis];");
            if i.is_one() {
                let _ = writeln!(out, "  init{q} -> q{q};");
            } else {
                let _ = writeln!(out, "  init{q} -> q{q} [label=\"{}\"];", weight_label(i));
            }
        }
        let f = a.final_weight(q);
        if !f.is_zero() {
            let _ = writeln!(out, "  fin{q} [shape=point, style=invis];");
            if f.is_one() {
                let _ = writeln!(out, "  q{q} -> fin{q};");
            } else {
                let _ = writeln!(out, "  q{q} -> fin{q} [label=\"{}\"];", weight_label(f));
            }
        }
    }
    for e in a.edges() {
        let label = match e.symbol {
            Some(x) if e.weight.is_one() => a.alphabet().name(x).to_string(),
            Some(x) => format!("{}·{}", weight_label(&e.weight), a.alphabet().name(x)),
            None => weight_label(&e.weight),
        };
        let _ = writeln!(out, "  q{} -> q{} [label=\"{label}\"];", e.src, e.dst);
    }
    out.push_str("}\n");
    out
}
