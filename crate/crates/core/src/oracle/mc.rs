//! Seeded Monte-Carlo interpreter. `iid` statements run as loops.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::chain::{Arena, Node, NodeId};
use crate::alphabet::{Alphabet, Valuation, Var};
use crate::dist::{build_dist_pga, DistSpec};
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::lang::Program;
use crate::pga::Pga;
use crate::rational::{to_f64, ExtRational};

/// Number of independent generator streams; fixed so results do not depend on the thread count.
pub const CHUNKS: u64 = 64;

/// Draws exact samples from the normalized behavior of an automaton by a
/// random walk whose transition probabilities are reweighted by the
/// per-state masses `B` (`w·B(t)/B(q)` for an edge, `F(q)/B(q)` for stopping).
#[derive(Clone, Debug)]
pub struct PgaSampler {
    alphabet: Alphabet,
    start: Vec<(f64, usize)>,
    /// Per state: cumulative stop probability, then cumulative edge probabilities.
    stop: Vec<f64>,
    moves: Vec<Vec<(f64, usize, Option<Var>)>>,
}

impl PgaSampler {
    pub fn new(a: &Pga) -> Result<PgaSampler> {
        let details = a.mass_details();
        let total = match &details.mass {
            ExtRational::Infinity => return Err(Error::InfiniteMass),
            ExtRational::Finite(m) if num_traits::Zero::is_zero(m) => return Err(Error::ZeroMass),
            ExtRational::Finite(m) => to_f64(m),
        };
        let t = &details.trimmed;
        let b: Vec<f64> = details.solution.iter().map(ExtRational::to_f64).collect();
        let mut start = Vec::new();
        let mut acc = 0.0;
        for (q, bq) in b.iter().enumerate() {
            let w = to_f64(t.initial_weight(q)) * bq / total;
            if w > 0.0 {
                acc += w;
                start.push((acc, q));
            }
        }
        let mut stop = vec![0.0; t.num_states()];
        let mut moves = vec![Vec::new(); t.num_states()];
        for q in 0..t.num_states() {
            stop[q] = if b[q] > 0.0 { to_f64(t.final_weight(q)) / b[q] } else { 1.0 };
        }
        let mut cum = stop.clone();
        for e in t.edges() {
            if b[e.src] > 0.0 {
                cum[e.src] += to_f64(&e.weight) * b[e.dst] / b[e.src];
                moves[e.src].push((cum[e.src], e.dst, e.symbol));
            }
        }
        Ok(PgaSampler { alphabet: t.alphabet().clone(), start, stop, moves })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Valuation {
        let mut sigma = Valuation::zero(&self.alphabet);
        let pick = |u: f64, cum: &[(f64, usize)]| cum.iter().find(|(c, _)| u < *c).or(cum.last()).map(|p| p.1);
        let mut q = pick(rng.gen::<f64>() * self.start.last().map_or(1.0, |p| p.0), &self.start)
            .expect("positive mass has an initial state");
        loop {
            let u: f64 = rng.gen();
            if u < self.stop[q] || self.moves[q].is_empty() {
                return sigma;
            }
            let total = self.moves[q].last().map_or(1.0, |m| m.0);
            let u = u.min(total * (1.0 - f64::EPSILON));
            let &(_, t, sym) = self.moves[q].iter().find(|m| u < m.0).unwrap_or(self.moves[q].last().unwrap());
            if let Some(x) = sym {
                sigma.set(x, sigma.get(x) + 1);
            }
            q = t;
        }
    }
}

/// Empirical outcome counts of `samples` runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McReport {
    pub samples: u64,
    pub violations: u64,
    pub terminal: BTreeMap<Valuation, u64>,
}

impl McReport {
    pub fn violation_frequency(&self) -> f64 {
        self.violations as f64 / self.samples as f64
    }

    pub fn frequency(&self, sigma: &Valuation) -> f64 {
        *self.terminal.get(sigma).unwrap_or(&0) as f64 / self.samples as f64
    }

    /// Empirical `P(φ | no violation)`; `None` if every run violated an observation.
    pub fn conditional_probability(&self, g: &Guard) -> Option<f64> {
        let ok = self.samples - self.violations;
        if ok == 0 {
            return None;
        }
        let hit: u64 = self.terminal.iter().filter(|(s, _)| g.satisfies(s)).map(|(_, c)| c).sum();
        Some(hit as f64 / ok as f64)
    }

    /// Empirical marginal of one variable among non-violating runs.
    pub fn marginal(&self, x: Var) -> BTreeMap<u64, f64> {
        let ok = (self.samples - self.violations) as f64;
        let mut out = BTreeMap::new();
        for (s, c) in &self.terminal {
            *out.entry(s.get(x)).or_insert(0.0) += *c as f64 / ok;
        }
        out
    }
}

struct Interpreter {
    arena: Arena,
    samplers: HashMap<DistSpec, PgaSampler>,
}

impl Interpreter {
    fn exec<R: Rng>(&self, node: NodeId, sigma: &mut Valuation, rng: &mut R) -> bool {
        match &self.arena.nodes[node as usize] {
            Node::SetZero(x) => sigma.set(*x, 0),
            Node::IncrConst(x, n) => sigma.set(*x, sigma.get(*x) + n),
            Node::IncrVar(x, y) => sigma.set(*x, sigma.get(*x) + sigma.get(*y)),
            Node::Decr(x) => sigma.set(*x, sigma.get(*x).saturating_sub(1)),
            Node::IncrDist(x, d) => {
                let k = self.draw(d, rng);
                sigma.set(*x, sigma.get(*x) + k);
            }
            Node::IncrIid(x, d, y) => {
                for _ in 0..sigma.get(*y) {
                    let k = self.draw(d, rng);
                    sigma.set(*x, sigma.get(*x) + k);
                }
            }
            Node::Observe(g) => return g.satisfies(sigma),
            Node::Choice(l, p, r) => {
                let go_left = rng.gen::<f64>() < to_f64(p);
                return self.exec(if go_left { *l } else { *r }, sigma, rng);
            }
            Node::IfElse(g, l, r) => {
                let branch = if g.satisfies(sigma) { *l } else { *r };
                return self.exec(branch, sigma, rng);
            }
            Node::Seq(l, r) => return self.exec(*l, sigma, rng) && self.exec(*r, sigma, rng),
        }
        true
    }

    fn draw<R: Rng>(&self, d: &DistSpec, rng: &mut R) -> u64 {
        self.samplers[d].sample(rng).get(Var(0))
    }
}

/// Where initial valuations come from.
#[derive(Clone, Debug)]
pub enum PriorSampler {
    /// Every variable starts at 0.
    Dirac,
    Fixed(Valuation),
    Pga(PgaSampler),
}

impl PriorSampler {
    fn sample<R: Rng>(&self, alphabet: &Alphabet, rng: &mut R) -> Valuation {
        match self {
            PriorSampler::Dirac => Valuation::zero(alphabet),
            PriorSampler::Fixed(s) => s.clone(),
            PriorSampler::Pga(s) => s.sample(rng),
        }
    }
}

/// Runs `n` executions split over [`CHUNKS`] streams of a ChaCha generator
/// seeded with `seed`; identical seeds give identical reports.
pub fn mc_sample(p: &Program, alphabet: &Alphabet, prior: &PriorSampler, seed: u64, n: u64) -> Result<McReport> {
    let mut samplers = HashMap::new();
    let one = Alphabet::new(["x"]);
    for d in p.distributions() {
        if !samplers.contains_key(d) {
            samplers.insert(d.clone(), PgaSampler::new(&build_dist_pga(d, Var(0), &one)?)?);
        }
    }
    let interp = Interpreter { arena: Arena::new(p), samplers };
    let parts: Vec<(u64, BTreeMap<Valuation, u64>)> = (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let count = n / CHUNKS + u64::from(chunk < n % CHUNKS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let mut violations = 0;
            let mut terminal = BTreeMap::new();
            for _ in 0..count {
                let mut sigma = prior.sample(alphabet, &mut rng);
                if interp.exec(interp.arena.root, &mut sigma, &mut rng) {
                    *terminal.entry(sigma).or_insert(0) += 1;
                } else {
                    violations += 1;
                }
            }
            (violations, terminal)
        })
        .collect();
    let mut report = McReport { samples: n, violations: 0, terminal: BTreeMap::new() };
    for (v, t) in parts {
        report.violations += v;
        for (s, c) in t {
            *report.terminal.entry(s).or_insert(0) += c;
        }
    }
    Ok(report)
}
