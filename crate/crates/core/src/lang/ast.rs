//! Surface syntax (with sugar and spans) and the core program tree.

use crate::alphabet::Var;
use crate::dist::DistSpec;
use crate::guard::Guard;
use crate::rational::Rational;

use super::Span;

/// Core loop-free program.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Program {
    /// `x := 0`
    SetZero(Var),
    /// `x += n`
    IncrConst(Var, u64),
    /// `x += D`
    IncrDist(Var, DistSpec),
    /// `x += y`
    IncrVar(Var, Var),
    /// `x += iid(D, y)`
    IncrIid(Var, DistSpec, Var),
    /// `x--`, truncated at 0.
    Decr(Var),
    Observe(Guard),
    /// `{P1} [p] {P2}`
    Choice(Box<Program>, Rational, Box<Program>),
    IfElse(Guard, Box<Program>, Box<Program>),
    Seq(Box<Program>, Box<Program>),
}

impl Program {
    /// `x0 += 0`
    pub fn skip() -> Program {
        Program::IncrConst(Var(0), 0)
    }

    pub fn seq(a: Program, b: Program) -> Program {
        Program::Seq(Box::new(a), Box::new(b))
    }

    pub fn choice(a: Program, p: Rational, b: Program) -> Program {
        Program::Choice(Box::new(a), p, Box::new(b))
    }

    pub fn if_else(g: Guard, a: Program, b: Program) -> Program {
        Program::IfElse(g, Box::new(a), Box::new(b))
    }

    /// Right-nested sequence of the given statements; `None` when empty.
    pub fn sequence(stmts: impl IntoIterator<Item = Program>) -> Option<Program> {
        let v: Vec<Program> = stmts.into_iter().collect();
        v.into_iter().rev().reduce(|acc, s| Program::seq(s, acc))
    }

    /// |P|: sequencing adds, branching adds one, base statements count one.
    pub fn size(&self) -> usize {
        match self {
            Program::Seq(a, b) => a.size() + b.size(),
            Program::Choice(a, _, b) | Program::IfElse(_, a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    pub fn contains_iid(&self) -> bool {
        match self {
            Program::IncrIid(..) => true,
            Program::Seq(a, b) | Program::Choice(a, _, b) | Program::IfElse(_, a, b) => {
                a.contains_iid() || b.contains_iid()
            }
            _ => false,
        }
    }

    /// Largest integer constant in increments, distribution parameters and guards.
    pub fn max_constant(&self) -> u64 {
        let dist = |d: &DistSpec| match d {
            DistSpec::Dirac(n) | DistSpec::Uniform(n) | DistSpec::Binomial(n, _) | DistSpec::NegBinomial(n, _) => *n,
            _ => 0,
        };
        match self {
            Program::IncrConst(_, n) => *n,
            Program::IncrDist(_, d) | Program::IncrIid(_, d, _) => dist(d),
            Program::Observe(g) => g.max_constant(),
            Program::IfElse(g, a, b) => g.max_constant().max(a.max_constant()).max(b.max_constant()),
            Program::Seq(a, b) | Program::Choice(a, _, b) => a.max_constant().max(b.max_constant()),
            _ => 0,
        }
    }

    /// Size of the largest guard, at least 1.
    pub fn max_guard_size(&self) -> usize {
        match self {
            Program::Observe(g) => g.size(),
            Program::IfElse(g, a, b) => g.size().max(a.max_guard_size()).max(b.max_guard_size()),
            Program::Seq(a, b) | Program::Choice(a, _, b) => a.max_guard_size().max(b.max_guard_size()),
            _ => 1,
        }
    }

    /// Rewrites relative `custom` file paths to be relative to `base`.
    pub fn with_custom_base(&self, base: &std::path::Path) -> Program {
        let fix = |d: &DistSpec| match d {
            DistSpec::Custom(p) if p.is_relative() => DistSpec::Custom(base.join(p)),
            other => other.clone(),
        };
        let rec = |p: &Program| Box::new(p.with_custom_base(base));
        match self {
            Program::IncrDist(x, d) => Program::IncrDist(*x, fix(d)),
            Program::IncrIid(x, d, y) => Program::IncrIid(*x, fix(d), *y),
            Program::Seq(a, b) => Program::Seq(rec(a), rec(b)),
            Program::Choice(a, p, b) => Program::Choice(rec(a), p.clone(), rec(b)),
            Program::IfElse(g, a, b) => Program::IfElse(g.clone(), rec(a), rec(b)),
            other => other.clone(),
        }
    }

    /// All distributions sampled by the program.
    pub fn distributions(&self) -> Vec<&DistSpec> {
        let mut out = Vec::new();
        self.collect_dists(&mut out);
        out
    }

    fn collect_dists<'a>(&'a self, out: &mut Vec<&'a DistSpec>) {
        match self {
            Program::IncrDist(_, d) | Program::IncrIid(_, d, _) => out.push(d),
            Program::Seq(a, b) | Program::Choice(a, _, b) | Program::IfElse(_, a, b) => {
                a.collect_dists(out);
                b.collect_dists(out);
            }
            _ => {}
        }
    }
}

/// A surface node tagged with its source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned<T> {
    pub node: T,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SGuard {
    Cmp(Spanned<String>, CmpOp, u64),
    Mod(Spanned<String>, u64, u64),
    And(Box<Spanned<SGuard>>, Box<Spanned<SGuard>>),
    Or(Box<Spanned<SGuard>>, Box<Spanned<SGuard>>),
    Not(Box<Spanned<SGuard>>),
    True,
    False,
}

/// One summand of a linear expression: `n`, `y` or `n*y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Const(u64),
    Var(u64, Spanned<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IncrRhs {
    Const(u64),
    Var(Spanned<String>),
    Dist(DistSpec),
    Iid(DistSpec, Spanned<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SStmt {
    Skip,
    Assign(Spanned<String>, Vec<Term>),
    Incr(Spanned<String>, IncrRhs),
    Decr(Spanned<String>),
    Observe(Spanned<SGuard>),
    If(Spanned<SGuard>, Vec<Spanned<SStmt>>, Vec<Spanned<SStmt>>),
    Choice(Vec<Spanned<SStmt>>, Rational, Vec<Spanned<SStmt>>),
    Block(Vec<Spanned<SStmt>>),
}

pub type SurfaceProgram = Vec<Spanned<SStmt>>;
