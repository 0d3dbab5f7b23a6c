//! Probability generating automata: weighted automata over a commutative
//! alphabet whose behavior `I·M*·F` is a (sub-)probability generating function.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::alphabet::{Alphabet, Valuation, Var};
use crate::error::{Error, Result};
use crate::rational::{is_positive, ExtRational, Rational};
use crate::solver::{strongly_connected_components, LinearSystem};

/// One stored transition `src --weight·symbol--> dst`. A missing symbol is an ε-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: Rational,
    pub symbol: Option<Var>,
}

/// A normalized probability generating automaton.
///
/// States are `0..num_states()`. Initial and final weights are plain
/// rationals; edges carry a positive weight and at most one variable. There is
/// at most one stored edge per `(src, dst, symbol)` triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pga {
    alphabet: Alphabet,
    edges: Vec<Edge>,
    initial: Vec<Rational>,
    final_weights: Vec<Rational>,
}

/// Incremental constructor that merges parallel same-symbol edges and drops zero weights.
#[derive(Clone, Debug)]
pub struct PgaBuilder {
    alphabet: Alphabet,
    edges: Vec<Edge>,
    index: HashMap<(usize, usize, Option<Var>), usize>,
    initial: Vec<Rational>,
    final_weights: Vec<Rational>,
}

impl PgaBuilder {
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        PgaBuilder {
            alphabet,
            edges: Vec::new(),
            index: HashMap::new(),
            initial: vec![Rational::zero(); states],
            final_weights: vec![Rational::zero(); states],
        }
    }

    pub fn add_state(&mut self) -> usize {
        self.initial.push(Rational::zero());
        self.final_weights.push(Rational::zero());
        self.initial.len() - 1
    }

    pub fn num_states(&self) -> usize {
        self.initial.len()
    }

    pub fn edge(&mut self, src: usize, dst: usize, weight: Rational, symbol: Option<Var>) -> &mut Self {
        assert!(src < self.num_states() && dst < self.num_states(), "edge out of range");
        if let Some(s) = symbol {
            assert!(s.0 < self.alphabet.len(), "symbol out of range");
        }
        if weight.is_zero() {
            return self;
        }
        match self.index.get(&(src, dst, symbol)) {
            Some(&i) => self.edges[i].weight += weight,
            None => {
                self.index.insert((src, dst, symbol), self.edges.len());
                self.edges.push(Edge { src, dst, weight, symbol });
            }
        }
        self
    }

    pub fn initial(&mut self, q: usize, w: Rational) -> &mut Self {
        self.initial[q] = w;
        self
    }

    pub fn final_weight(&mut self, q: usize, w: Rational) -> &mut Self {
        self.final_weights[q] = w;
        self
    }

    pub fn build(self) -> Pga {
        assert!(!self.initial.is_empty(), "a PGA needs at least one state");
        Pga {
            alphabet: self.alphabet,
            edges: self.edges,
            initial: self.initial,
            final_weights: self.final_weights,
        }
    }
}

/// Which linear-algebra route computes the least solution behind [`Pga::mass_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MassMethod {
    /// Block-wise over strongly connected components, elimination first, LP fallback per block.
    #[default]
    Blocked,
    /// Global Gaussian elimination, falling back to the LP when it is singular or negative.
    Elimination,
    /// Global exact LP `minimize I·B s.t. B = M·B + F, B ≥ 0`; infeasible means ∞.
    LinearProgram,
}

/// Everything `mass` computes on the way: the trimmed automaton, its
/// symbol-free system `B = M·B + F` and the least solution `B`.
#[derive(Clone, Debug)]
pub struct MassDetails {
    pub trimmed: Pga,
    pub system: LinearSystem,
    pub solution: Vec<ExtRational>,
    pub mass: ExtRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub mass: ExtRational,
    pub is_pga: bool,
    pub issues: Vec<String>,
}

/// An accepting path together with its weight and Parikh image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPath {
    pub states: Vec<usize>,
    pub weight: Rational,
    pub parikh: Valuation,
}

impl Pga {
    /// Assembles an automaton from raw parts, checking index ranges and weight signs.
    pub fn from_parts(
        alphabet: Alphabet,
        states: usize,
        edges: Vec<Edge>,
        initial: Vec<(usize, Rational)>,
        final_weights: Vec<(usize, Rational)>,
    ) -> std::result::Result<Pga, String> {
        if states == 0 {
            return Err("an automaton needs at least one state".into());
        }
        let mut b = PgaBuilder::new(alphabet.clone(), states);
        for (i, e) in edges.into_iter().enumerate() {
            if e.src >= states || e.dst >= states {
                return Err(format!(
                    "edge {i} references state {} of a {states}-state automaton",
                    e.src.max(e.dst)
                ));
            }
            if let Some(s) = e.symbol {
                if s.0 >= alphabet.len() {
                    return Err(format!("edge {i} uses a symbol outside the alphabet"));
                }
            }
            if e.weight.is_negative() {
                return Err(format!("edge {i} has a negative weight"));
            }
            b.edge(e.src, e.dst, e.weight, e.symbol);
        }
        for (q, w) in initial {
            if q >= states {
                return Err(format!("initial weight for state {q} of a {states}-state automaton"));
            }
            b.initial(q, w);
        }
        for (q, w) in final_weights {
            if q >= states {
                return Err(format!("final weight for state {q} of a {states}-state automaton"));
            }
            b.final_weight(q, w);
        }
        Ok(b.build())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.initial.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn initial_weight(&self, q: usize) -> &Rational {
        &self.initial[q]
    }

    pub fn final_weight(&self, q: usize) -> &Rational {
        &self.final_weights[q]
    }

    pub fn initial_weights(&self) -> &[Rational] {
        &self.initial
    }

    pub fn final_weights(&self) -> &[Rational] {
        &self.final_weights
    }

    /// |A|: number of transitions with non-zero weight.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// |A|_X: number of X-transitions.
    pub fn symbol_count(&self, x: Var) -> usize {
        self.edges.iter().filter(|e| e.symbol == Some(x)).count()
    }

    /// |I(A)|: number of states with non-zero initial weight.
    pub fn initial_count(&self) -> usize {
        self.initial.iter().filter(|w| !w.is_zero()).count()
    }

    /// |F(A)|: number of states with non-zero final weight.
    pub fn final_count(&self) -> usize {
        self.final_weights.iter().filter(|w| !w.is_zero()).count()
    }

    /// Copies this automaton into a builder, for constructions that extend it.
    pub fn to_builder(&self) -> PgaBuilder {
        let mut b = PgaBuilder::new(self.alphabet.clone(), self.num_states());
        for e in &self.edges {
            b.edge(e.src, e.dst, e.weight.clone(), e.symbol);
        }
        b.initial = self.initial.clone();
        b.final_weights = self.final_weights.clone();
        b
    }

    /// Multiplies every initial weight by `factor`.
    pub fn scale_initial(&self, factor: &Rational) -> Pga {
        let mut out = self.clone();
        for w in out.initial.iter_mut() {
            *w = &*w * factor;
        }
        if factor.is_zero() {
            out.initial.iter_mut().for_each(|w| *w = Rational::zero());
        }
        out
    }

    /// Re-expresses the automaton over a larger alphabet that contains every current name.
    pub fn extend_alphabet(&self, target: &Alphabet) -> Result<Pga> {
        if self.alphabet.same_as(target) {
            return Ok(self.clone());
        }
        let map: Vec<Var> = self
            .alphabet
            .names()
            .iter()
            .map(|n| target.var(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<_>>()?;
        let mut out = self.clone();
        out.alphabet = target.clone();
        for e in out.edges.iter_mut() {
            e.symbol = e.symbol.map(|s| map[s.0]);
        }
        Ok(out)
    }

    /// Replaces the single symbol `from` by `to`, used to re-letter custom distributions.
    pub(crate) fn reletter(&self, alphabet: &Alphabet, from: Option<Var>, to: Var) -> Pga {
        let mut b = PgaBuilder::new(alphabet.clone(), self.num_states());
        for e in &self.edges {
            let sym = match e.symbol {
                Some(s) if Some(s) == from => Some(to),
                Some(_) => unreachable!("checked single-variable automaton"),
                None => None,
            };
            b.edge(e.src, e.dst, e.weight.clone(), sym);
        }
        b.initial = self.initial.clone();
        b.final_weights = self.final_weights.clone();
        b.build()
    }

    fn forward_closure(&self, seeds: impl Iterator<Item = usize>, reverse: bool) -> Vec<bool> {
        let n = self.num_states();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            if reverse {
                adj[e.dst].push(e.src);
            } else {
                adj[e.src].push(e.dst);
            }
        }
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = seeds.collect();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &t in &adj[q] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States reachable from a positive-initial state.
    pub fn reachable_states(&self) -> Vec<bool> {
        self.forward_closure((0..self.num_states()).filter(|&q| is_positive(&self.initial[q])), false)
    }

    /// States from which a positive-final state is reachable.
    pub fn coreachable_states(&self) -> Vec<bool> {
        self.forward_closure(
            (0..self.num_states()).filter(|&q| is_positive(&self.final_weights[q])),
            true,
        )
    }

    /// States lying on some initial-to-final path.
    pub fn useful_states(&self) -> Vec<bool> {
        let r = self.reachable_states();
        let c = self.coreachable_states();
        r.iter().zip(c.iter()).map(|(a, b)| *a && *b).collect()
    }

    /// Keeps only useful states, re-packing indices in their original order.
    /// A behaviorally-zero automaton becomes one initial state with final weight 0.
    pub fn trim(&self) -> Pga {
        let useful = self.useful_states();
        if !useful.iter().any(|&u| u) {
            let mut b = PgaBuilder::new(self.alphabet.clone(), 1);
            b.initial(0, Rational::one());
            return b.build();
        }
        if useful.iter().all(|&u| u) {
            return self.clone();
        }
        let mut map = vec![usize::MAX; self.num_states()];
        let mut next = 0;
        for (q, &u) in useful.iter().enumerate() {
            if u {
                map[q] = next;
                next += 1;
            }
        }
        let mut b = PgaBuilder::new(self.alphabet.clone(), next);
        for e in &self.edges {
            if useful[e.src] && useful[e.dst] {
                b.edge(map[e.src], map[e.dst], e.weight.clone(), e.symbol);
            }
        }
        for (q, &u) in useful.iter().enumerate() {
            if u {
                b.initial(map[q], self.initial[q].clone());
                b.final_weight(map[q], self.final_weights[q].clone());
            }
        }
        b.build()
    }

    /// Σ_σ ⟦A⟧(σ), exactly.
    pub fn mass(&self) -> ExtRational {
        self.mass_with(MassMethod::Blocked)
    }

    pub fn mass_with(&self, method: MassMethod) -> ExtRational {
        match method {
            MassMethod::Blocked => self.mass_details().mass,
            MassMethod::Elimination | MassMethod::LinearProgram => {
                let trimmed = self.trim();
                let system = trimmed.symbol_free_system();
                let b = if method == MassMethod::Elimination {
                    system.solve_by_elimination().or_else(|| system.solve_by_lp())
                } else {
                    return match system.solve_by_lp_with(&trimmed.initial) {
                        Some((_, value)) => ExtRational::Finite(value),
                        None => ExtRational::Infinity,
                    };
                };
                match b {
                    Some(b) => ExtRational::Finite(
                        trimmed.initial.iter().zip(b.iter()).map(|(i, x)| i * x).sum(),
                    ),
                    None => ExtRational::Infinity,
                }
            }
        }
    }

    /// Trimmed system `B = M·B + F` with symbols erased, its least solution, and `I·B`.
    pub fn mass_details(&self) -> MassDetails {
        let trimmed = self.trim();
        let system = trimmed.symbol_free_system();
        let solution = system.least_solution();
        let mass = trimmed
            .initial
            .iter()
            .zip(solution.iter())
            .fold(ExtRational::zero(), |acc, (i, b)| {
                acc + ExtRational::Finite(i.clone()) * b.clone()
            });
        MassDetails { trimmed, system, solution, mass }
    }

    fn symbol_free_system(&self) -> LinearSystem {
        let mut s = LinearSystem::new(self.num_states());
        for e in &self.edges {
            s.add_coefficient(e.src, e.dst, e.weight.clone());
        }
        for (q, f) in self.final_weights.iter().enumerate() {
            s.add_rhs(q, f.clone());
        }
        s
    }

    /// Mass together with structural warnings.
    pub fn validate(&self) -> ValidationReport {
        let mass = self.mass();
        let is_pga = mass <= ExtRational::one();
        let mut issues = Vec::new();
        let reach = self.reachable_states();
        let coreach = self.coreachable_states();
        for q in 0..self.num_states() {
            if !reach[q] {
                issues.push(format!("warning: state {q} is unreachable"));
            } else if !coreach[q] {
                issues.push(format!("warning: state {q} cannot reach a final state"));
            }
        }
        ValidationReport { mass, is_pga, issues }
    }

    /// Automaton with the same behavior scaled to mass exactly 1.
    pub fn normalize(&self) -> Result<Pga> {
        match self.mass() {
            ExtRational::Infinity => Err(Error::InfiniteMass),
            ExtRational::Finite(m) if m.is_zero() => Err(Error::ZeroMass),
            ExtRational::Finite(m) => Ok(self.scale_initial(&m.recip())),
        }
    }

    /// ⟦A⟧(σ), computed as the mass of the product with the equality guard for σ.
    pub fn coefficient(&self, sigma: &Valuation) -> Result<Rational> {
        let guard = crate::guard::Guard::point(self.alphabet.len(), sigma);
        let dfa = crate::dfa::build_guard_dfa(&guard, &self.alphabet);
        let filtered = crate::constructions::product(self, &dfa)?;
        filtered
            .mass()
            .into_finite()
            .ok_or(Error::InfiniteMass)
    }

    /// All coefficients for valuations in the box `σ ≤ bounds`, by dynamic
    /// programming over Parikh vectors with ε-closures solved per strongly
    /// connected component.
    pub fn coefficients_in_box(&self, bounds: &[u64]) -> Result<CoefficientTable> {
        assert_eq!(bounds.len(), self.alphabet.len(), "one bound per variable");
        let a = self.trim();
        let n = a.num_states();
        let k = bounds.len();

        let mut eps: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
        let mut sym: Vec<Vec<Vec<(usize, Rational)>>> = vec![vec![Vec::new(); k]; n];
        for e in &a.edges {
            match e.symbol {
                None => eps[e.src].push((e.dst, e.weight.clone())),
                Some(x) => sym[e.src][x.0].push((e.dst, e.weight.clone())),
            }
        }
        // Sources first.
        let mut comps = strongly_connected_components(&eps);
        comps.reverse();
        let mut comp_of = vec![0usize; n];
        for (c, comp) in comps.iter().enumerate() {
            for &q in comp {
                comp_of[q] = c;
            }
        }
        let stars: Vec<Option<Vec<Vec<Rational>>>> = comps
            .iter()
            .map(|comp| {
                let cyclic = comp.len() > 1 || eps[comp[0]].iter().any(|(t, _)| *t == comp[0]);
                if !cyclic {
                    return Ok(None);
                }
                star_of_block(comp, &eps).map(Some).ok_or(Error::InfiniteMass)
            })
            .collect::<Result<_>>()?;

        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (bounds[i + 1] as usize + 1);
        }
        let total: usize = bounds.iter().map(|&b| b as usize + 1).product();
        let mut alpha: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(total);
        let mut values = Vec::with_capacity(total);
        let mut digits = vec![0u64; k];
        let mut b: Vec<Option<Rational>> = vec![None; n];
        for idx in 0..total {
            if idx == 0 {
                for (q, w) in a.initial.iter().enumerate() {
                    if !w.is_zero() {
                        b[q] = Some(w.clone());
                    }
                }
            }
            for x in 0..k {
                if digits[x] == 0 {
                    continue;
                }
                for (q, val) in &alpha[idx - strides[x]] {
                    for (t, w) in &sym[*q][x] {
                        add_into(&mut b[*t], w * val);
                    }
                }
            }
            let mut here: Vec<(usize, Rational)> = Vec::new();
            for (c, comp) in comps.iter().enumerate() {
                let solved: Vec<(usize, Rational)> = match &stars[c] {
                    None => {
                        let q = comp[0];
                        match b[q].take() {
                            Some(v) => vec![(q, v)],
                            None => vec![],
                        }
                    }
                    Some(star) => {
                        let input: Vec<Option<Rational>> =
                            comp.iter().map(|&q| b[q].take()).collect();
                        if input.iter().all(Option::is_none) {
                            vec![]
                        } else {
                            let mut out = Vec::new();
                            for (j, &qj) in comp.iter().enumerate() {
                                let mut s = Rational::zero();
                                for (i, v) in input.iter().enumerate() {
                                    if let Some(v) = v {
                                        s += v * &star[i][j];
                                    }
                                }
                                if !s.is_zero() {
                                    out.push((qj, s));
                                }
                            }
                            out
                        }
                    }
                };
                for (q, v) in solved {
                    for (t, w) in &eps[q] {
                        if comp_of[*t] != c {
                            add_into(&mut b[*t], w * &v);
                        }
                    }
                    here.push((q, v));
                }
            }
            let coeff: Rational = here.iter().map(|(q, v)| v * &a.final_weights[*q]).sum();
            values.push(coeff);
            alpha.push(here);
            // advance mixed-radix counter, last variable fastest
            for x in (0..k).rev() {
                if digits[x] < bounds[x] {
                    digits[x] += 1;
                    break;
                }
                digits[x] = 0;
            }
        }
        Ok(CoefficientTable { bounds: bounds.to_vec(), strides, values })
    }

    /// Every accepting path with at most `max_len` states, with exact weights.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<WeightedPath> {
        let n = self.num_states();
        let mut out_edges: Vec<Vec<&Edge>> = vec![Vec::new(); n];
        for e in &self.edges {
            out_edges[e.src].push(e);
        }
        let mut result = Vec::new();
        for q in 0..n {
            if self.initial[q].is_zero() || max_len == 0 {
                continue;
            }
            let mut states = vec![q];
            let mut parikh = Valuation::zero(&self.alphabet);
            self.walk(&out_edges, &mut states, self.initial[q].clone(), &mut parikh, max_len, &mut result);
        }
        result
    }

    fn walk(
        &self,
        out_edges: &[Vec<&Edge>],
        states: &mut Vec<usize>,
        weight: Rational,
        parikh: &mut Valuation,
        max_len: usize,
        result: &mut Vec<WeightedPath>,
    ) {
        let q = *states.last().expect("nonempty path");
        if !self.final_weights[q].is_zero() {
            result.push(WeightedPath {
                states: states.clone(),
                weight: &weight * &self.final_weights[q],
                parikh: parikh.clone(),
            });
        }
        if states.len() == max_len {
            return;
        }
        for e in &out_edges[q] {
            states.push(e.dst);
            if let Some(x) = e.symbol {
                parikh.set(x, parikh.get(x) + 1);
            }
            self.walk(out_edges, states, &weight * &e.weight, parikh, max_len, result);
            if let Some(x) = e.symbol {
                parikh.set(x, parikh.get(x) - 1);
            }
            states.pop();
        }
    }

    /// True when the useful part of the automaton has no cycle.
    pub fn is_acyclic(&self) -> bool {
        let t = self.trim();
        let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); t.num_states()];
        for e in &t.edges {
            if e.src == e.dst {
                return false;
            }
            adj[e.src].push((e.dst, e.weight.clone()));
        }
        strongly_connected_components(&adj).iter().all(|c| c.len() == 1)
    }

    /// Exact finite support of an acyclic automaton, by path enumeration.
    pub fn finite_support(&self) -> Option<Vec<(Valuation, Rational)>> {
        if !self.is_acyclic() {
            return None;
        }
        let t = self.trim();
        let mut agg: std::collections::BTreeMap<Valuation, Rational> = Default::default();
        for p in t.enumerate_paths(t.num_states()) {
            *agg.entry(p.parikh).or_insert_with(Rational::zero) += p.weight;
        }
        Some(agg.into_iter().filter(|(_, w)| !w.is_zero()).collect())
    }
}

fn add_into(slot: &mut Option<Rational>, v: Rational) {
    match slot {
        Some(s) => *s += v,
        None => *slot = Some(v),
    }
}

/// `(I − M_C)^{-1}` for an ε-block, or `None` if it does not exist as a nonnegative matrix.
fn star_of_block(comp: &[usize], eps: &[Vec<(usize, Rational)>]) -> Option<Vec<Vec<Rational>>> {
    let m = comp.len();
    let pos: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let mut a = vec![vec![Rational::zero(); 2 * m]; m];
    for (i, &q) in comp.iter().enumerate() {
        a[i][i] += Rational::one();
        a[i][m + i] = Rational::one();
        for (t, w) in &eps[q] {
            if let Some(&j) = pos.get(t) {
                a[i][j] -= w;
            }
        }
    }
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(prow.iter()) {
                *v -= &f * p;
            }
        }
    }
    let star: Vec<Vec<Rational>> = a.into_iter().map(|row| row[m..].to_vec()).collect();
    if star.iter().flatten().any(Signed::is_negative) {
        return None;
    }
    Some(star)
}

/// Coefficients of a behavior on a box of valuations.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    bounds: Vec<u64>,
    strides: Vec<usize>,
    values: Vec<Rational>,
}

impl CoefficientTable {
    pub fn bounds(&self) -> &[u64] {
        &self.bounds
    }

    /// `None` when σ lies outside the box.
    pub fn get(&self, sigma: &Valuation) -> Option<&Rational> {
        let mut idx = 0;
        for (i, &c) in sigma.counts().iter().enumerate() {
            if c > self.bounds[i] {
                return None;
            }
            idx += c as usize * self.strides[i];
        }
        self.values.get(idx)
    }

    /// Sum of all tabulated coefficients.
    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Valuation, &Rational)> + '_ {
        crate::alphabet::valuations_in_box(&self.bounds)
            .into_iter()
            .zip(self.values.iter())
    }
}

impl fmt::Display for Pga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PGA over {} with {} states", self.alphabet, self.num_states())?;
        for q in 0..self.num_states() {
            let mut tags = Vec::new();
            if !self.initial[q].is_zero() {
                tags.push(format!("initial {}", self.initial[q]));
            }
            if !self.final_weights[q].is_zero() {
                tags.push(format!("final {}", self.final_weights[q]));
            }
            if !tags.is_empty() {
                writeln!(f, "  state {q}: {}", tags.join(", "))?;
            }
        }
        for e in &self.edges {
            match e.symbol {
                Some(x) => writeln!(f, "  {} -> {} : {}·{}", e.src, e.dst, e.weight, self.alphabet.name(x))?,
                None => writeln!(f, "  {} -> {} : {}", e.src, e.dst, e.weight)?,
            }
        }
        Ok(())
    }
}
