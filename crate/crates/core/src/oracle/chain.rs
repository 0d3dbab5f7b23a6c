//! The operational Markov chain of a loop-free program and its exact,
//! truncated exploration.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Valuation, Var};
use crate::dist::{build_dist_pga, DistSpec};
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::lang::Program;
use crate::rational::Rational;

pub type NodeId = u32;

/// Program tree flattened into an arena so continuations are cheap to copy and hash.
#[derive(Clone, Debug)]
pub(crate) enum Node {
    SetZero(Var),
    IncrConst(Var, u64),
    IncrDist(Var, DistSpec),
    IncrVar(Var, Var),
    IncrIid(Var, DistSpec, Var),
    Decr(Var),
    Observe(Guard),
    Choice(NodeId, Rational, NodeId),
    IfElse(Guard, NodeId, NodeId),
    Seq(NodeId, NodeId),
}

#[derive(Clone, Debug)]
pub(crate) struct Arena {
    pub nodes: Vec<Node>,
    /// Program size of each node; strictly decreases along every chain transition.
    pub sizes: Vec<usize>,
    pub root: NodeId,
}

impl Arena {
    pub fn new(p: &Program) -> Arena {
        let mut a = Arena { nodes: Vec::new(), sizes: Vec::new(), root: 0 };
        a.root = a.add(p);
        a
    }

    fn add(&mut self, p: &Program) -> NodeId {
        let node = match p {
            Program::SetZero(x) => Node::SetZero(*x),
            Program::IncrConst(x, n) => Node::IncrConst(*x, *n),
            Program::IncrDist(x, d) => Node::IncrDist(*x, d.clone()),
            Program::IncrVar(x, y) => Node::IncrVar(*x, *y),
            Program::IncrIid(x, d, y) => Node::IncrIid(*x, d.clone(), *y),
            Program::Decr(x) => Node::Decr(*x),
            Program::Observe(g) => Node::Observe(g.clone()),
            Program::Choice(l, p, r) => {
                let (l, r) = (self.add(l), self.add(r));
                Node::Choice(l, p.clone(), r)
            }
            Program::IfElse(g, l, r) => {
                let (l, r) = (self.add(l), self.add(r));
                Node::IfElse(g.clone(), l, r)
            }
            Program::Seq(l, r) => {
                let (l, r) = (self.add(l), self.add(r));
                Node::Seq(l, r)
            }
        };
        self.nodes.push(node);
        self.sizes.push(p.size());
        (self.nodes.len() - 1) as NodeId
    }
}

/// A state of the operational chain: a program continuation with a valuation,
/// successful termination, or the observation-violation sink.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Config {
    /// The continuation is a stack; its last element runs next.
    Running(Vec<NodeId>, Valuation),
    Terminated(Valuation),
    Violation,
}

/// Successor distribution of one configuration. `probabilities + residual = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDistribution {
    pub successors: Vec<(Rational, Config)>,
    pub residual: Rational,
}

impl StepDistribution {
    fn certain(c: Config) -> Self {
        StepDistribution { successors: vec![(Rational::one(), c)], residual: Rational::zero() }
    }

    pub fn total(&self) -> Rational {
        self.successors.iter().map(|(p, _)| p).sum::<Rational>() + &self.residual
    }
}

/// The operational chain of a program, with every sampled distribution
/// tabulated up to the truncation bound.
#[derive(Clone, Debug)]
pub struct MarkovChain {
    arena: Arena,
    trunc: u64,
    tables: HashMap<DistSpec, Vec<Rational>>,
}

/// `D(0..=trunc)`, read off the distribution automaton.
pub fn distribution_table(d: &DistSpec, trunc: u64) -> Result<Vec<Rational>> {
    let one = Alphabet::new(["x"]);
    let pga = build_dist_pga(d, Var(0), &one)?;
    let table = pga.coefficients_in_box(&[trunc])?;
    Ok(table.iter().map(|(_, w)| w.clone()).collect())
}

impl MarkovChain {
    /// Fails with `UnsupportedIid` if the program samples an iid sum.
    pub fn new(p: &Program, trunc: u64) -> Result<MarkovChain> {
        if p.contains_iid() {
            return Err(Error::UnsupportedIid);
        }
        let mut tables = HashMap::new();
        for d in p.distributions() {
            if !tables.contains_key(d) {
                tables.insert(d.clone(), distribution_table(d, trunc)?);
            }
        }
        Ok(MarkovChain { arena: Arena::new(p), trunc, tables })
    }

    pub fn trunc(&self) -> u64 {
        self.trunc
    }

    /// `⟨P, σ⟩`
    pub fn initial(&self, sigma: Valuation) -> Config {
        self.settle(vec![self.arena.root], sigma)
    }

    /// Unfolds sequential composition so the top of the stack is never a `Seq`.
    fn settle(&self, mut cont: Vec<NodeId>, sigma: Valuation) -> Config {
        while let Some(&top) = cont.last() {
            match &self.arena.nodes[top as usize] {
                Node::Seq(l, r) => {
                    cont.pop();
                    cont.push(*r);
                    cont.push(*l);
                }
                _ => return Config::Running(cont, sigma),
            }
        }
        Config::Terminated(sigma)
    }

    /// Remaining program size; every transition strictly decreases it.
    pub fn measure(&self, c: &Config) -> usize {
        match c {
            Config::Running(cont, _) => cont.iter().map(|&n| self.arena.sizes[n as usize]).sum(),
            _ => 0,
        }
    }

    pub fn step(&self, c: &Config) -> StepDistribution {
        let (cont, sigma) = match c {
            Config::Running(cont, sigma) => (cont, sigma),
            absorbing => return StepDistribution::certain(absorbing.clone()),
        };
        let mut rest = cont.clone();
        let top = rest.pop().expect("running configurations have a statement");
        let next = |rest: &Vec<NodeId>, s: Valuation| self.settle(rest.clone(), s);
        match &self.arena.nodes[top as usize] {
            Node::SetZero(x) => StepDistribution::certain(next(&rest, sigma.with(*x, 0))),
            Node::IncrConst(x, n) => StepDistribution::certain(next(&rest, sigma.with(*x, sigma.get(*x) + n))),
            Node::IncrVar(x, y) => {
                StepDistribution::certain(next(&rest, sigma.with(*x, sigma.get(*x) + sigma.get(*y))))
            }
            Node::Decr(x) => StepDistribution::certain(next(&rest, sigma.with(*x, sigma.get(*x).saturating_sub(1)))),
            Node::Observe(g) => {
                if g.satisfies(sigma) {
                    StepDistribution::certain(next(&rest, sigma.clone()))
                } else {
                    StepDistribution::certain(Config::Violation)
                }
            }
            Node::Choice(l, p, r) => {
                let mut successors = Vec::new();
                for (w, branch) in [(p.clone(), *l), (Rational::one() - p, *r)] {
                    if !w.is_zero() {
                        let mut c = rest.clone();
                        c.push(branch);
                        successors.push((w, self.settle(c, sigma.clone())));
                    }
                }
                StepDistribution { successors, residual: Rational::zero() }
            }
            Node::IfElse(g, l, r) => {
                let mut c = rest;
                c.push(if g.satisfies(sigma) { *l } else { *r });
                StepDistribution::certain(self.settle(c, sigma.clone()))
            }
            Node::IncrDist(x, d) => {
                let table = &self.tables[d];
                let mut successors = Vec::new();
                let mut covered = Rational::zero();
                for (n, w) in table.iter().enumerate() {
                    if !w.is_zero() {
                        covered += w;
                        successors.push((w.clone(), next(&rest, sigma.with(*x, sigma.get(*x) + n as u64))));
                    }
                }
                StepDistribution { successors, residual: Rational::one() - covered }
            }
            Node::IncrIid(..) => unreachable!("rejected when the chain is built"),
            Node::Seq(..) => unreachable!("settled configurations never expose a sequence"),
        }
    }
}

/// Exact lower bounds on the absorption probabilities, and the mass lost to truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub terminal: BTreeMap<Valuation, Rational>,
    pub violation: Rational,
    pub residual: Rational,
    pub configurations: usize,
}

impl EnumerationReport {
    pub fn terminal_mass(&self) -> Rational {
        self.terminal.values().sum()
    }
}

/// Explores the configuration DAG from a finite-support prior, accumulating
/// probability per configuration in order of decreasing remaining program size.
pub fn enumerate(p: &Program, prior: &[(Valuation, Rational)], trunc: u64) -> Result<EnumerationReport> {
    let chain = MarkovChain::new(p, trunc)?;
    let mut layers: BTreeMap<usize, HashMap<Config, Rational>> = BTreeMap::new();
    let mut report = EnumerationReport {
        terminal: BTreeMap::new(),
        violation: Rational::zero(),
        residual: Rational::zero(),
        configurations: 0,
    };
    let deposit = |layers: &mut BTreeMap<usize, HashMap<Config, Rational>>,
                       report: &mut EnumerationReport,
                       c: Config,
                       w: Rational| match c {
        Config::Terminated(s) => *report.terminal.entry(s).or_insert_with(Rational::zero) += w,
        Config::Violation => report.violation += w,
        running => {
            let m = chain.measure(&running);
            *layers.entry(m).or_default().entry(running).or_insert_with(Rational::zero) += w;
        }
    };
    for (sigma, w) in prior {
        if !w.is_zero() {
            deposit(&mut layers, &mut report, chain.initial(sigma.clone()), w.clone());
        }
    }
    while let Some((_, layer)) = layers.pop_last() {
        report.configurations += layer.len();
        for (c, w) in layer {
            let d = chain.step(&c);
            if !d.residual.is_zero() {
                report.residual += &w * &d.residual;
            }
            for (p, succ) in d.successors {
                deposit(&mut layers, &mut report, succ, &w * &p);
            }
        }
    }
    report.terminal.retain(|_, w| !w.is_zero());
    Ok(report)
}
