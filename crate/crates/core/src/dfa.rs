//! Complete deterministic automata over the variable alphabet, modeling guards.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Var};
use crate::error::{Error, Result};
use crate::guard::Guard;

/// A complete DFA: `delta[state][var]` is the unique successor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuardDfa {
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

impl GuardDfa {
    pub fn new(alphabet: Alphabet, delta: Vec<Vec<usize>>, initial: usize, accepting: Vec<bool>) -> Self {
        assert_eq!(delta.len(), accepting.len());
        assert!(initial < delta.len());
        for row in &delta {
            assert_eq!(row.len(), alphabet.len(), "transition function must be total");
            assert!(row.iter().all(|&t| t < delta.len()));
        }
        GuardDfa { alphabet, delta, initial, accepting }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn next(&self, state: usize, x: Var) -> usize {
        self.delta[state][x.0]
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    /// Number of non-self-loop transitions, the |B| of the guard automata size table.
    pub fn size(&self) -> usize {
        self.delta
            .iter()
            .enumerate()
            .map(|(s, row)| row.iter().filter(|&&t| t != s).count())
            .sum()
    }

    pub fn run(&self, word: &[Var]) -> usize {
        word.iter().fold(self.initial, |s, &x| self.next(s, x))
    }

    pub fn accepts(&self, word: &[Var]) -> bool {
        self.accepting[self.run(word)]
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n");
        for s in 0..self.num_states() {
            let shape = if self.accepting[s] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{s} [shape={shape}, label=\"{s}\"];");
        }
        let _ = writeln!(out, "  __start -> q{};", self.initial);
        for (s, row) in self.delta.iter().enumerate() {
            let mut by_target: HashMap<usize, Vec<&str>> = HashMap::new();
            for (x, &t) in row.iter().enumerate() {
                by_target.entry(t).or_default().push(self.alphabet.name(Var(x)));
            }
            let mut targets: Vec<_> = by_target.into_iter().collect();
            targets.sort();
            for (t, names) in targets {
                let _ = writeln!(out, "  q{s} -> q{t} [label=\"{}\"];", names.join(","));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `B_{X<n}`: counting states `0..n` accept, state `n` is a rejecting sink. `n = 0` is `B_false`.
pub fn dfa_less_than(x: Var, n: u64, alphabet: &Alphabet) -> GuardDfa {
    let k = alphabet.len();
    if n == 0 {
        return GuardDfa::new(alphabet.clone(), vec![vec![0; k]], 0, vec![false]);
    }
    let n = n as usize;
    let mut delta = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let mut row = vec![s; k];
        row[x.0] = (s + 1).min(n);
        delta.push(row);
    }
    let accepting = (0..=n).map(|s| s < n).collect();
    GuardDfa::new(alphabet.clone(), delta, 0, accepting)
}

/// `B_{X≡_m n}`: a cycle of `m` states on X accepting residue `n`.
pub fn dfa_mod(x: Var, m: u64, n: u64, alphabet: &Alphabet) -> GuardDfa {
    assert!(m >= 1 && n < m, "congruence guard needs m > n");
    let m = m as usize;
    let k = alphabet.len();
    let delta = (0..m)
        .map(|s| {
            let mut row = vec![s; k];
            row[x.0] = (s + 1) % m;
            row
        })
        .collect();
    let accepting = (0..m).map(|s| s == n as usize).collect();
    GuardDfa::new(alphabet.clone(), delta, 0, accepting)
}

/// Intersection, materializing only pairs reachable from the initial pair.
pub fn dfa_product(b1: &GuardDfa, b2: &GuardDfa) -> Result<GuardDfa> {
    if !b1.alphabet.same_as(&b2.alphabet) {
        return Err(Error::AlphabetMismatch { left: b1.alphabet.clone(), right: b2.alphabet.clone() });
    }
    let k = b1.alphabet.len();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(b1.initial, b2.initial)];
    index.insert(pairs[0], 0);
    let mut queue = VecDeque::from([0usize]);
    let mut delta: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(i) = queue.pop_front() {
        let (s1, s2) = pairs[i];
        let mut row = Vec::with_capacity(k);
        for x in 0..k {
            let t = (b1.delta[s1][x], b2.delta[s2][x]);
            let j = *index.entry(t).or_insert_with(|| {
                pairs.push(t);
                delta.push(Vec::new());
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            row.push(j);
        }
        delta[i] = row;
    }
    let accepting = pairs.iter().map(|&(a, b)| b1.accepting[a] && b2.accepting[b]).collect();
    Ok(GuardDfa::new(b1.alphabet.clone(), delta, 0, accepting))
}

pub fn dfa_complement(b: &GuardDfa) -> GuardDfa {
    let mut out = b.clone();
    out.accepting.iter_mut().for_each(|a| *a = !*a);
    out
}

/// Inductive translation of a guard into a DFA modeling it.
pub fn build_guard_dfa(phi: &Guard, alphabet: &Alphabet) -> GuardDfa {
    match phi {
        Guard::LessThan(x, n) => dfa_less_than(*x, *n, alphabet),
        Guard::ModEq(x, m, n) => dfa_mod(*x, *m, *n, alphabet),
        Guard::And(a, b) => dfa_product(&build_guard_dfa(a, alphabet), &build_guard_dfa(b, alphabet))
            .expect("same alphabet by construction"),
        Guard::Not(a) => dfa_complement(&build_guard_dfa(a, alphabet)),
    }
}

/// Upper bound `max(n+1, 2)^{|φ|}` on the state count of `build_guard_dfa(φ)`.
pub fn state_bound(phi: &Guard) -> u128 {
    let base = (phi.max_constant() as u128 + 1).max(2);
    base.saturating_pow(phi.size() as u32)
}
