//! Resolution of surface sugar into the core program and guard trees.

use super::ast::{CmpOp, IncrRhs, Program, SGuard, SStmt, Spanned, SurfaceProgram, Term};
use super::LangError;
use crate::alphabet::{Alphabet, Var};
use crate::guard::Guard;

/// Variable names in order of first occurrence.
pub fn collect_variables(prog: &SurfaceProgram) -> Vec<String> {
    let mut out = Vec::new();
    for s in prog {
        stmt_vars(&s.node, &mut out);
    }
    out
}

fn push(out: &mut Vec<String>, name: &str) {
    if !out.iter().any(|n| n == name) {
        out.push(name.to_string());
    }
}

fn stmt_vars(s: &SStmt, out: &mut Vec<String>) {
    match s {
        SStmt::Skip => {}
        SStmt::Assign(x, terms) => {
            push(out, &x.node);
            for t in terms {
                if let Term::Var(_, y) = t {
                    push(out, &y.node);
                }
            }
        }
        SStmt::Incr(x, rhs) => {
            push(out, &x.node);
            match rhs {
                IncrRhs::Var(y) | IncrRhs::Iid(_, y) => push(out, &y.node),
                IncrRhs::Const(_) | IncrRhs::Dist(_) => {}
            }
        }
        SStmt::Decr(x) => push(out, &x.node),
        SStmt::Observe(g) => guard_vars(&g.node, out),
        SStmt::If(g, a, b) => {
            guard_vars(&g.node, out);
            a.iter().chain(b.iter()).for_each(|s| stmt_vars(&s.node, out));
        }
        SStmt::Choice(a, _, b) => a.iter().chain(b.iter()).for_each(|s| stmt_vars(&s.node, out)),
        SStmt::Block(a) => a.iter().for_each(|s| stmt_vars(&s.node, out)),
    }
}

pub(crate) fn guard_vars(g: &SGuard, out: &mut Vec<String>) {
    match g {
        SGuard::Cmp(x, _, _) | SGuard::Mod(x, _, _) => push(out, &x.node),
        SGuard::And(a, b) | SGuard::Or(a, b) => {
            guard_vars(&a.node, out);
            guard_vars(&b.node, out);
        }
        SGuard::Not(a) => guard_vars(&a.node, out),
        SGuard::True | SGuard::False => {}
    }
}

fn resolve(alphabet: &Alphabet, x: &Spanned<String>) -> Result<Var, LangError> {
    alphabet.var(&x.node).ok_or_else(|| LangError::UnknownVariable {
        line: x.span.line,
        column: x.span.column,
        name: x.node.clone(),
    })
}

pub fn desugar_guard(g: &Spanned<SGuard>, alphabet: &Alphabet) -> Result<Guard, LangError> {
    Ok(match &g.node {
        SGuard::Cmp(x, op, n) => {
            let v = resolve(alphabet, x)?;
            let n = *n;
            let too_big = || LangError::GuardConstraintError {
                line: g.span.line,
                column: g.span.column,
                message: format!("constant {n} is too large"),
            };
            let succ = n.checked_add(1).ok_or_else(too_big);
            match op {
                CmpOp::Lt => Guard::less_than(v, n),
                CmpOp::Le => Guard::less_than(v, succ?),
                CmpOp::Eq => {
                    succ?;
                    Guard::equals(v, n)
                }
                CmpOp::Ne => {
                    succ?;
                    Guard::not(Guard::equals(v, n))
                }
                CmpOp::Gt => Guard::not(Guard::less_than(v, succ?)),
                CmpOp::Ge => Guard::not(Guard::less_than(v, n)),
            }
        }
        SGuard::Mod(x, m, n) => {
            let v = resolve(alphabet, x)?;
            if *m == 0 || *m <= *n {
                return Err(LangError::GuardConstraintError {
                    line: g.span.line,
                    column: g.span.column,
                    message: format!("`{} % {m} == {n}` needs modulus greater than residue", x.node),
                });
            }
            Guard::mod_eq(v, *m, *n)
        }
        SGuard::And(a, b) => Guard::and(desugar_guard(a, alphabet)?, desugar_guard(b, alphabet)?),
        SGuard::Or(a, b) => Guard::or(desugar_guard(a, alphabet)?, desugar_guard(b, alphabet)?),
        SGuard::Not(a) => Guard::not(desugar_guard(a, alphabet)?),
        SGuard::True => Guard::verum(),
        SGuard::False => Guard::falsum(),
    })
}

pub fn desugar(prog: &SurfaceProgram, alphabet: &Alphabet) -> Result<Program, LangError> {
    let stmts = prog.iter().map(|s| desugar_stmt(s, alphabet)).collect::<Result<Vec<_>, _>>()?;
    Ok(Program::sequence(stmts).unwrap_or_else(Program::skip))
}

fn desugar_stmt(s: &Spanned<SStmt>, alphabet: &Alphabet) -> Result<Program, LangError> {
    Ok(match &s.node {
        SStmt::Skip => Program::skip(),
        SStmt::Block(body) => desugar(body, alphabet)?,
        SStmt::Decr(x) => Program::Decr(resolve(alphabet, x)?),
        SStmt::Observe(g) => Program::Observe(desugar_guard(g, alphabet)?),
        SStmt::If(g, a, b) => Program::if_else(desugar_guard(g, alphabet)?, desugar(a, alphabet)?, desugar(b, alphabet)?),
        SStmt::Choice(a, p, b) => Program::choice(desugar(a, alphabet)?, p.clone(), desugar(b, alphabet)?),
        SStmt::Incr(x, rhs) => {
            let v = resolve(alphabet, x)?;
            match rhs {
                IncrRhs::Const(n) => Program::IncrConst(v, *n),
                IncrRhs::Var(y) => Program::IncrVar(v, resolve(alphabet, y)?),
                IncrRhs::Dist(d) => Program::IncrDist(v, d.clone()),
                IncrRhs::Iid(d, y) => Program::IncrIid(v, d.clone(), resolve(alphabet, y)?),
            }
        }
        SStmt::Assign(x, terms) => {
            let v = resolve(alphabet, x)?;
            let mut self_coeff = 0u64;
            let mut body = Vec::new();
            for t in terms {
                match t {
                    Term::Const(0) => {}
                    Term::Const(n) => body.push(Program::IncrConst(v, *n)),
                    Term::Var(c, y) => {
                        let w = resolve(alphabet, y)?;
                        if w == v {
                            self_coeff += c;
                        } else {
                            body.extend(std::iter::repeat_n(Program::IncrVar(v, w), *c as usize));
                        }
                    }
                }
            }
            let mut stmts = Vec::new();
            match self_coeff {
                0 => stmts.push(Program::SetZero(v)),
                1 => {}
                _ => {
                    return Err(LangError::SyntaxError {
                        line: s.span.line,
                        column: s.span.column,
                        message: format!("`{}` may appear at most once on its own right-hand side", x.node),
                    })
                }
            }
            stmts.extend(body);
            Program::sequence(stmts).unwrap_or(Program::IncrConst(v, 0))
        }
    })
}
