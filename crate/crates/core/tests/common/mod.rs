//! Seeded generators and an independent coefficient oracle shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use redip::alphabet::valuations_in_box;
use redip::lang::Program;
use redip::rational::{int, rat};
use redip::{Alphabet, DistSpec, Guard, Pga, PgaBuilder, Rational, Valuation, Var};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn xy() -> Alphabet {
    Alphabet::new(["x", "y"])
}

/// `k` nonnegative weights with small denominators; their sum is `< 1` when `slack`, else `≤ 1`.
pub fn random_weights<R: Rng>(rng: &mut R, k: usize, slack: bool) -> Vec<Rational> {
    let mut parts: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
    let rest = if slack { rng.gen_range(1..=3) } else { rng.gen_range(0..=2) };
    let total: i64 = parts.iter().sum::<i64>() + rest;
    if total == 0 {
        parts.iter_mut().for_each(|p| *p = 0);
        return parts.into_iter().map(|_| Rational::zero()).collect();
    }
    parts.into_iter().map(|p| rat(p, total)).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct PgaShape {
    pub max_states: usize,
    pub max_out: usize,
    /// Probability that an edge is an ε-edge.
    pub epsilon: f64,
    /// Keep every state strictly substochastic, so every star inverse exists.
    pub slack: bool,
}

impl Default for PgaShape {
    fn default() -> Self {
        PgaShape { max_states: 4, max_out: 3, epsilon: 0.3, slack: true }
    }
}

/// Random substochastic automaton: a PGA by construction.
pub fn random_pga<R: Rng>(rng: &mut R, alphabet: &Alphabet, shape: PgaShape) -> Pga {
    let n = rng.gen_range(1..=shape.max_states);
    let mut b = PgaBuilder::new(alphabet.clone(), n);
    for q in 0..n {
        let m = rng.gen_range(0..=shape.max_out);
        let w = random_weights(rng, m + 1, shape.slack);
        b.final_weight(q, w[m].clone());
        for wi in &w[..m] {
            let t = rng.gen_range(0..n);
            let sym = if rng.gen_bool(shape.epsilon) { None } else { Some(Var(rng.gen_range(0..alphabet.len()))) };
            b.edge(q, t, wi.clone(), sym);
        }
    }
    let init = random_weights(rng, n, false);
    if init.iter().all(Zero::is_zero) {
        b.initial(0, rat(1, 2));
    }
    for (q, w) in init.into_iter().enumerate() {
        if !w.is_zero() {
            b.initial(q, w);
        }
    }
    b.build()
}

/// Random automaton with weights up to 2, so the mass may be ∞.
pub fn random_weighted<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_states: usize) -> Pga {
    let n = rng.gen_range(1..=max_states);
    let mut b = PgaBuilder::new(alphabet.clone(), n);
    let w = |rng: &mut R| rat(rng.gen_range(0..=4), rng.gen_range(1..=4));
    for q in 0..n {
        let wf = w(rng);
        b.final_weight(q, wf);
        for _ in 0..rng.gen_range(0..=3) {
            let t = rng.gen_range(0..n);
            let sym = if rng.gen_bool(0.4) { None } else { Some(Var(rng.gen_range(0..alphabet.len()))) };
            let we = w(rng);
            b.edge(q, t, we, sym);
        }
    }
    b.initial(0, int(1));
    b.build()
}

/// Random guard of the given depth over `vars` variables with constants `≤ max_const`.
pub fn random_guard<R: Rng>(rng: &mut R, vars: usize, depth: usize, max_const: u64) -> Guard {
    if depth == 0 || rng.gen_bool(0.35) {
        let x = Var(rng.gen_range(0..vars));
        return if rng.gen_bool(0.7) {
            Guard::less_than(x, rng.gen_range(0..=max_const))
        } else {
            let m = rng.gen_range(1..=max_const.max(1));
            Guard::mod_eq(x, m, rng.gen_range(0..m))
        };
    }
    match rng.gen_range(0..3) {
        0 => Guard::and(random_guard(rng, vars, depth - 1, max_const), random_guard(rng, vars, depth - 1, max_const)),
        1 => Guard::or(random_guard(rng, vars, depth - 1, max_const), random_guard(rng, vars, depth - 1, max_const)),
        _ => Guard::not(random_guard(rng, vars, depth - 1, max_const)),
    }
}

const PROBS: [(i64, i64); 6] = [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)];

fn random_prob<R: Rng>(rng: &mut R, allow_zero: bool) -> Rational {
    if allow_zero && rng.gen_bool(0.1) {
        return Rational::zero();
    }
    let &(n, d) = PROBS.choose(rng).unwrap();
    rat(n, d)
}

/// A built-in distribution with constants `≤ max_const`.
pub fn random_dist<R: Rng>(rng: &mut R, max_const: u64) -> DistSpec {
    match rng.gen_range(0..6) {
        0 => DistSpec::Geometric(random_prob(rng, false)),
        1 => DistSpec::Bernoulli(random_prob(rng, true)),
        2 => DistSpec::Dirac(rng.gen_range(0..=max_const)),
        3 => DistSpec::Uniform(rng.gen_range(1..=max_const.max(1))),
        4 => DistSpec::Binomial(rng.gen_range(0..=max_const), random_prob(rng, true)),
        _ => DistSpec::NegBinomial(rng.gen_range(0..=max_const), random_prob(rng, false)),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ProgramShape {
    pub vars: usize,
    pub max_size: usize,
    pub max_const: u64,
    pub iid: bool,
}

impl Default for ProgramShape {
    fn default() -> Self {
        ProgramShape { vars: 2, max_size: 8, max_const: 3, iid: false }
    }
}

fn random_statement<R: Rng>(rng: &mut R, s: ProgramShape) -> Program {
    let x = Var(rng.gen_range(0..s.vars));
    let y = Var(rng.gen_range(0..s.vars));
    let kinds = if s.iid { 7 } else { 6 };
    match rng.gen_range(0..kinds) {
        0 => Program::SetZero(x),
        1 => Program::IncrConst(x, rng.gen_range(0..=s.max_const)),
        2 => Program::IncrDist(x, random_dist(rng, s.max_const)),
        3 => Program::IncrVar(x, y),
        4 => Program::Decr(x),
        5 => Program::Observe(random_guard(rng, s.vars, 2, s.max_const)),
        _ => Program::IncrIid(x, random_dist(rng, s.max_const), y),
    }
}

fn random_program_sized<R: Rng>(rng: &mut R, s: ProgramShape, budget: usize) -> Program {
    if budget >= 3 && rng.gen_bool(0.4) {
        let l = rng.gen_range(1..=budget - 2);
        let (a, b) = (random_program_sized(rng, s, l), random_program_sized(rng, s, budget - 1 - l));
        return if rng.gen_bool(0.5) {
            Program::choice(a, random_prob(rng, true), b)
        } else {
            Program::if_else(random_guard(rng, s.vars, 2, s.max_const), a, b)
        };
    }
    if budget >= 2 {
        let l = rng.gen_range(1..budget);
        return Program::seq(random_program_sized(rng, s, l), random_program_sized(rng, s, budget - l));
    }
    random_statement(rng, s)
}

/// Random loop-free program whose size is uniform in `1..=shape.max_size`.
pub fn random_program<R: Rng>(rng: &mut R, shape: ProgramShape) -> Program {
    let budget = rng.gen_range(1..=shape.max_size);
    random_program_sized(rng, shape, budget)
}

/// A coefficient table over a box: every valuation with `σ ≤ bounds` is present.
pub type Series = BTreeMap<Valuation, Rational>;

/// Solves `M·x = rhs` exactly by Gauss-Jordan elimination; panics when singular.
fn solve_dense(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Vec<Rational> {
    let n = rhs.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("nonsingular system");
        m.swap(c, p);
        rhs.swap(c, p);
        let inv = m[c][c].recip();
        for k in c..n {
            m[c][k] = &m[c][k] * &inv;
        }
        rhs[c] = &rhs[c] * &inv;
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..n {
                    let t = &f * &m[c][k];
                    m[r][k] -= t;
                }
                let t = &f * &rhs[c];
                rhs[r] -= t;
            }
        }
    }
    rhs
}

/// Coefficients of `⟦a⟧` on the box `σ ≤ bounds`, with the variables in `free`
/// substituted by 1. Computed directly from the defining equations
/// `f_σ = F·[σ = 0] + Σ_X M_X f_{σ−X} + M_ε f_σ`, independently of the library's solvers.
/// Requires `I − M_ε` (including free edges) to be invertible.
pub fn series(a: &Pga, bounds: &[u64], free: &[Var]) -> Series {
    let n = a.num_states();
    let is_eps = |s: Option<Var>| s.is_none_or(|v| free.contains(&v));
    let mut lhs = vec![vec![Rational::zero(); n]; n];
    for (q, row) in lhs.iter_mut().enumerate() {
        row[q] = Rational::one();
    }
    for e in a.edges() {
        if is_eps(e.symbol) {
            lhs[e.src][e.dst] -= &e.weight;
        }
    }
    let mut f: BTreeMap<Valuation, Vec<Rational>> = BTreeMap::new();
    let mut out = Series::new();
    let mut order = valuations_in_box(bounds);
    order.sort_by_key(|s| s.total());
    for sigma in order {
        let mut rhs: Vec<Rational> =
            if sigma.is_zero() { a.final_weights().to_vec() } else { vec![Rational::zero(); n] };
        for e in a.edges() {
            if let Some(x) = e.symbol.filter(|_| !is_eps(e.symbol)) {
                if sigma.get(x) > 0 {
                    let prev = &f[&sigma.with(x, sigma.get(x) - 1)];
                    rhs[e.src] += &e.weight * &prev[e.dst];
                }
            }
        }
        let fs = solve_dense(lhs.clone(), rhs);
        let c: Rational = (0..n).map(|q| a.initial_weight(q) * &fs[q]).sum();
        out.insert(sigma.clone(), c);
        f.insert(sigma, fs);
    }
    out
}

/// Truncated Cauchy product of two series over the same box.
pub fn cauchy(s1: &Series, s2: &Series) -> Series {
    let mut out: Series = s1.keys().map(|k| (k.clone(), Rational::zero())).collect();
    for (a, ca) in s1 {
        if ca.is_zero() {
            continue;
        }
        for (b, cb) in s2 {
            let sum = Valuation::from_counts(a.counts().iter().zip(b.counts()).map(|(x, y)| x + y).collect());
            if let Some(slot) = out.get_mut(&sum) {
                *slot += ca * cb;
            }
        }
    }
    out
}

/// Library coefficients of `a` on the same box, keyed like [`series`].
pub fn library_series(a: &Pga, bounds: &[u64]) -> Series {
    let t = a.coefficients_in_box(bounds).expect("finite coefficients");
    t.iter().map(|(s, c)| (s, c.clone())).collect()
}

/// The first valuation where two series disagree.
pub fn first_difference(a: &Series, b: &Series) -> Option<(Valuation, Rational, Rational)> {
    a.iter().find_map(|(k, va)| {
        let vb = b.get(k).cloned().unwrap_or_else(Rational::zero);
        (*va != vb).then(|| (k.clone(), va.clone(), vb))
    })
}
