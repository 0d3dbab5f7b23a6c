//! Rectangular guards: threshold and congruence atoms closed under `∧` and `¬`.

use std::fmt;

use crate::alphabet::{Alphabet, Valuation, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Guard {
    /// `X < n`
    LessThan(Var, u64),
    /// `X ≡ n (mod m)`, with `m > n`.
    ModEq(Var, u64, u64),
    And(Box<Guard>, Box<Guard>),
    Not(Box<Guard>),
}

impl Guard {
    pub fn less_than(x: Var, n: u64) -> Guard {
        Guard::LessThan(x, n)
    }

    /// Panics unless `m > n`; the parser reports this case as a user error first.
    pub fn mod_eq(x: Var, m: u64, n: u64) -> Guard {
        assert!(m > n, "congruence guard needs m > n");
        Guard::ModEq(x, m, n)
    }

    pub fn and(a: Guard, b: Guard) -> Guard {
        Guard::And(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Guard) -> Guard {
        Guard::Not(Box::new(a))
    }

    /// `X < 0`, the empty guard over the first variable.
    pub fn falsum() -> Guard {
        Guard::LessThan(Var(0), 0)
    }

    pub fn verum() -> Guard {
        Guard::not(Guard::falsum())
    }

    /// `X = n` as `X < n+1 ∧ ¬(X < n)`.
    pub fn equals(x: Var, n: u64) -> Guard {
        Guard::and(Guard::LessThan(x, n + 1), Guard::not(Guard::LessThan(x, n)))
    }

    pub fn or(a: Guard, b: Guard) -> Guard {
        Guard::not(Guard::and(Guard::not(a), Guard::not(b)))
    }

    /// Conjunction of equalities pinning every variable to its value in σ.
    pub fn point(vars: usize, sigma: &Valuation) -> Guard {
        let mut g: Option<Guard> = None;
        for i in 0..vars {
            let e = Guard::equals(Var(i), sigma.get(Var(i)));
            g = Some(match g {
                None => e,
                Some(prev) => Guard::and(prev, e),
            });
        }
        g.unwrap_or_else(Guard::verum)
    }

    pub fn satisfies(&self, sigma: &Valuation) -> bool {
        match self {
            Guard::LessThan(x, n) => sigma.get(*x) < *n,
            Guard::ModEq(x, m, n) => sigma.get(*x) % m == *n,
            Guard::And(a, b) => a.satisfies(sigma) && b.satisfies(sigma),
            Guard::Not(a) => !a.satisfies(sigma),
        }
    }

    /// |φ|: atoms count 1, conjunction adds, negation preserves.
    pub fn size(&self) -> usize {
        match self {
            Guard::LessThan(..) | Guard::ModEq(..) => 1,
            Guard::And(a, b) => a.size() + b.size(),
            Guard::Not(a) => a.size(),
        }
    }

    /// Largest constant: `n` for thresholds, `m` for congruences.
    pub fn max_constant(&self) -> u64 {
        match self {
            Guard::LessThan(_, n) => *n,
            Guard::ModEq(_, m, _) => *m,
            Guard::And(a, b) => a.max_constant().max(b.max_constant()),
            Guard::Not(a) => a.max_constant(),
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Guard::LessThan(x, _) | Guard::ModEq(x, _, _) => out.push(*x),
            Guard::And(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Guard::Not(a) => a.collect_vars(out),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayGuard(self, alphabet)
    }
}

struct DisplayGuard<'a>(&'a Guard, &'a Alphabet);

impl fmt::Display for DisplayGuard<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.1;
        match self.0 {
            Guard::LessThan(x, n) => write!(f, "{} < {n}", a.name(*x)),
            Guard::ModEq(x, m, n) => write!(f, "{} % {m} == {n}", a.name(*x)),
            Guard::And(l, r) => write!(f, "({} and {})", l.display(a), r.display(a)),
            Guard::Not(g) => write!(f, "not ({})", g.display(a)),
        }
    }
}
