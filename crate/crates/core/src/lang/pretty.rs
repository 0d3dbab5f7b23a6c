//! Printing core programs back to concrete syntax that re-parses to the same tree.

use super::ast::Program;
use crate::alphabet::Alphabet;
use crate::rational::Rational;

fn prob(p: &Rational) -> String {
    if p.is_integer() {
        p.numer().to_string()
    } else {
        format!("{}/{}", p.numer(), p.denom())
    }
}

pub fn pretty(p: &Program, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    write_prog(p, alphabet, 0, &mut out);
    out.push('\n');
    out
}

fn indent(depth: usize) -> String {
    "    ".repeat(depth)
}

fn write_prog(p: &Program, a: &Alphabet, depth: usize, out: &mut String) {
    match p {
        Program::Seq(l, r) => {
            if matches!(**l, Program::Seq(..)) {
                out.push_str(&indent(depth));
                out.push_str("{\n");
                write_prog(l, a, depth + 1, out);
                out.push('\n');
                out.push_str(&indent(depth));
                out.push('}');
            } else {
                write_prog(l, a, depth, out);
            }
            out.push_str(";\n");
            write_prog(r, a, depth, out);
        }
        _ => {
            out.push_str(&indent(depth));
            write_stmt(p, a, depth, out);
        }
    }
}

fn write_block(p: &Program, a: &Alphabet, depth: usize, out: &mut String) {
    out.push_str("{\n");
    write_prog(p, a, depth + 1, out);
    out.push('\n');
    out.push_str(&indent(depth));
    out.push('}');
}

fn write_stmt(p: &Program, a: &Alphabet, depth: usize, out: &mut String) {
    let n = |v| a.name(v);
    match p {
        Program::SetZero(x) => out.push_str(&format!("{} := 0", n(*x))),
        Program::IncrConst(x, k) => out.push_str(&format!("{} += {k}", n(*x))),
        Program::IncrDist(x, d) => out.push_str(&format!("{} += {d}", n(*x))),
        Program::IncrVar(x, y) => out.push_str(&format!("{} += {}", n(*x), n(*y))),
        Program::IncrIid(x, d, y) => out.push_str(&format!("{} += iid({d}, {})", n(*x), n(*y))),
        Program::Decr(x) => out.push_str(&format!("{}--", n(*x))),
        Program::Observe(g) => out.push_str(&format!("observe({})", g.display(a))),
        Program::Choice(l, p, r) => {
            write_block(l, a, depth, out);
            out.push_str(&format!(" [{}] ", prob(p)));
            write_block(r, a, depth, out);
        }
        Program::IfElse(g, l, r) => {
            out.push_str(&format!("if ({}) ", g.display(a)));
            write_block(l, a, depth, out);
            out.push_str(" else ");
            write_block(r, a, depth, out);
        }
        Program::Seq(..) => unreachable!("sequences are handled by write_prog"),
    }
}
