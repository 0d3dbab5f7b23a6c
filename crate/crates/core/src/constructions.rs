//! The automata constructions composed by the program translation. All
//! results are untrimmed so their raw sizes can be checked against the
//! construction size formulas.

use num_traits::{One, Zero};

use crate::alphabet::Var;
use crate::dfa::{dfa_complement, dfa_less_than, GuardDfa};
use crate::error::{Error, Result};
use crate::pga::{Pga, PgaBuilder};
use crate::rational::Rational;

fn same_alphabet(a: &Pga, b: &Pga) -> Result<()> {
    if a.alphabet().same_as(b.alphabet()) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch { left: a.alphabet().clone(), right: b.alphabet().clone() })
    }
}

/// Copies `a` into `b` starting at state offset `off`, optionally rewriting edges.
fn copy_edges(b: &mut PgaBuilder, a: &Pga, off: usize, keep: impl Fn(Option<Var>) -> Option<Option<Var>>) {
    for e in a.edges() {
        if let Some(sym) = keep(e.symbol) {
            b.edge(e.src + off, e.dst + off, e.weight.clone(), sym);
        }
    }
}

/// `A[X/1]`: X-labels become plain weights, marginalizing X out.
pub fn label_subst_one(a: &Pga, x: Var) -> Pga {
    let mut b = PgaBuilder::new(a.alphabet().clone(), a.num_states());
    copy_edges(&mut b, a, 0, |s| Some(if s == Some(x) { None } else { s }));
    for q in 0..a.num_states() {
        b.initial(q, a.initial_weight(q).clone());
        b.final_weight(q, a.final_weight(q).clone());
    }
    b.build()
}

/// `A[X/0]`: X-edges are deleted, keeping only mass where X = 0.
pub fn label_subst_zero(a: &Pga, x: Var) -> Pga {
    let mut b = PgaBuilder::new(a.alphabet().clone(), a.num_states());
    copy_edges(&mut b, a, 0, |s| if s == Some(x) { None } else { Some(s) });
    for q in 0..a.num_states() {
        b.initial(q, a.initial_weight(q).clone());
        b.final_weight(q, a.final_weight(q).clone());
    }
    b.build()
}

/// `A1 • A2`: behavior is the product of the two series.
pub fn concat(a1: &Pga, a2: &Pga) -> Result<Pga> {
    same_alphabet(a1, a2)?;
    let n1 = a1.num_states();
    let mut b = PgaBuilder::new(a1.alphabet().clone(), n1 + a2.num_states());
    copy_edges(&mut b, a1, 0, Some);
    copy_edges(&mut b, a2, n1, Some);
    for q in 0..n1 {
        let f = a1.final_weight(q);
        if f.is_zero() {
            continue;
        }
        for s in 0..a2.num_states() {
            let i = a2.initial_weight(s);
            if !i.is_zero() {
                b.edge(q, n1 + s, f * i, None);
            }
        }
    }
    for q in 0..n1 {
        b.initial(q, a1.initial_weight(q).clone());
    }
    for s in 0..a2.num_states() {
        b.final_weight(n1 + s, a2.final_weight(s).clone());
    }
    Ok(b.build())
}

/// `p·A1 ⊕ q·A2`: disjoint union with scaled initial weights.
pub fn weighted_union(a1: &Pga, a2: &Pga, p: &Rational, q: &Rational) -> Result<Pga> {
    same_alphabet(a1, a2)?;
    let n1 = a1.num_states();
    let mut b = PgaBuilder::new(a1.alphabet().clone(), n1 + a2.num_states());
    copy_edges(&mut b, a1, 0, Some);
    copy_edges(&mut b, a2, n1, Some);
    for s in 0..n1 {
        b.initial(s, a1.initial_weight(s) * p);
        b.final_weight(s, a1.final_weight(s).clone());
    }
    for s in 0..a2.num_states() {
        b.initial(n1 + s, a2.initial_weight(s) * q);
        b.final_weight(n1 + s, a2.final_weight(s).clone());
    }
    Ok(b.build())
}

/// `A[Y/A']`: every Y-edge is replaced by a fresh copy of the gadget,
/// entered with weight `r·I'(s)` and left with weight `F'(s')`.
pub fn transition_subst(a: &Pga, y: Var, gadget: &Pga) -> Result<Pga> {
    same_alphabet(a, gadget)?;
    let n = a.num_states();
    let g = gadget.num_states();
    let replaced = a.symbol_count(y);
    let mut b = PgaBuilder::new(a.alphabet().clone(), n + replaced * g);
    let entries: Vec<(usize, &Rational)> =
        (0..g).map(|s| (s, gadget.initial_weight(s))).filter(|(_, w)| !w.is_zero()).collect();
    let exits: Vec<(usize, &Rational)> =
        (0..g).map(|s| (s, gadget.final_weight(s))).filter(|(_, w)| !w.is_zero()).collect();
    let mut off = n;
    for e in a.edges() {
        if e.symbol != Some(y) {
            b.edge(e.src, e.dst, e.weight.clone(), e.symbol);
            continue;
        }
        for &(s, w) in &entries {
            b.edge(e.src, off + s, &e.weight * w, None);
        }
        copy_edges(&mut b, gadget, off, Some);
        for &(s, w) in &exits {
            b.edge(off + s, e.dst, w.clone(), None);
        }
        off += g;
    }
    for q in 0..n {
        b.initial(q, a.initial_weight(q).clone());
        b.final_weight(q, a.final_weight(q).clone());
    }
    Ok(b.build())
}

/// `A × B`: weighted product with a complete DFA over the full state space
/// `Q × Q'`; state `(q, s)` has index `q·|Q'| + s`.
pub fn product(a: &Pga, dfa: &GuardDfa) -> Result<Pga> {
    if !a.alphabet().same_as(dfa.alphabet()) {
        return Err(Error::AlphabetMismatch { left: a.alphabet().clone(), right: dfa.alphabet().clone() });
    }
    let k = dfa.num_states();
    let id = |q: usize, s: usize| q * k + s;
    let mut b = PgaBuilder::new(a.alphabet().clone(), a.num_states() * k);
    for e in a.edges() {
        for s in 0..k {
            let t = match e.symbol {
                Some(x) => dfa.next(s, x),
                None => s,
            };
            b.edge(id(e.src, s), id(e.dst, t), e.weight.clone(), e.symbol);
        }
    }
    for q in 0..a.num_states() {
        b.initial(id(q, dfa.initial()), a.initial_weight(q).clone());
        for s in 0..k {
            if dfa.is_accepting(s) {
                b.final_weight(id(q, s), a.final_weight(q).clone());
            }
        }
    }
    Ok(b.build())
}

/// `A^{x--}`: `(A × B_{X>0}) ⊕ A[X/0]` where the X-edges entering the
/// accepting component of `B_{X>0}` lose their label.
pub fn decrement(a: &Pga, x: Var) -> Result<Pga> {
    let positive = dfa_complement(&dfa_less_than(x, 1, a.alphabet()));
    // state 0 counts no X yet (non-accepting); its X-successor is the accepting sink
    let (src, dst) = (positive.initial(), positive.next(positive.initial(), x));
    debug_assert!(!positive.is_accepting(src) && positive.is_accepting(dst));
    let k = positive.num_states();
    let prod = product(a, &positive)?;
    let mut b = PgaBuilder::new(a.alphabet().clone(), prod.num_states());
    for e in prod.edges() {
        let shifted = e.symbol == Some(x) && e.src % k == src && e.dst % k == dst;
        b.edge(e.src, e.dst, e.weight.clone(), if shifted { None } else { e.symbol });
    }
    for q in 0..prod.num_states() {
        b.initial(q, prod.initial_weight(q).clone());
        b.final_weight(q, prod.final_weight(q).clone());
    }
    weighted_union(&b.build(), &label_subst_zero(a, x), &Rational::one(), &Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, Valuation};
    use crate::dfa::build_guard_dfa;
    use crate::dist::{build_dist_pga, DistSpec};
    use crate::guard::Guard;
    use crate::rational::{int, rat, ExtRational};

    fn xy() -> Alphabet {
        Alphabet::new(["X", "Y"])
    }

    fn dist(d: DistSpec, v: usize, a: &Alphabet) -> Pga {
        build_dist_pga(&d, Var(v), a).unwrap()
    }

    fn coeff(a: &Pga, counts: &[u64]) -> Rational {
        a.coefficient(&Valuation::from_counts(counts.to_vec())).unwrap()
    }

    #[test]
    fn label_substitution_one() {
        let a = xy();
        // loop ½X then ½Y to a final state
        let mut b = PgaBuilder::new(a.clone(), 2);
        b.initial(0, int(1))
            .edge(0, 0, rat(1, 2), Some(Var(0)))
            .edge(0, 1, rat(1, 2), Some(Var(1)))
            .final_weight(1, int(1));
        let m = label_subst_one(&b.build(), Var(0));
        assert_eq!(coeff(&m, &[0, 1]), int(1));
        assert_eq!(m.mass(), ExtRational::one());

        let d = label_subst_one(&dist(DistSpec::Dirac(2), 0, &a), Var(0));
        assert_eq!(coeff(&d, &[0, 0]), int(1));
    }

    #[test]
    fn label_substitution_zero() {
        let a = Alphabet::new(["X"]);
        let g = label_subst_zero(&dist(DistSpec::Geometric(rat(1, 2)), 0, &a), Var(0));
        assert_eq!(g.trim().num_states(), 1);
        assert_eq!(g.mass(), ExtRational::Finite(rat(1, 2)));
        let bern = label_subst_zero(&dist(DistSpec::Bernoulli(rat(1, 3)), 0, &a), Var(0));
        assert_eq!(bern.mass(), ExtRational::Finite(rat(2, 3)));
        assert_eq!(coeff(&bern, &[0]), rat(2, 3));
    }

    #[test]
    fn concatenation() {
        let a = Alphabet::new(["X"]);
        let d = concat(&dist(DistSpec::Dirac(1), 0, &a), &dist(DistSpec::Dirac(2), 0, &a)).unwrap();
        assert_eq!(coeff(&d, &[3]), int(1));
        let g = dist(DistSpec::Geometric(rat(1, 2)), 0, &a);
        let gg = concat(&g, &g).unwrap();
        assert_eq!(coeff(&gg, &[2]), rat(3, 16));
        assert_eq!(gg.size(), 3);
        let zero = label_subst_zero(&g, Var(0)).scale_initial(&int(0));
        assert!(concat(&zero, &g).unwrap().mass().is_zero());
    }

    #[test]
    fn union_weights() {
        let a = Alphabet::new(["X"]);
        let u = weighted_union(
            &dist(DistSpec::Dirac(0), 0, &a),
            &dist(DistSpec::Dirac(1), 0, &a),
            &rat(3, 4),
            &rat(1, 4),
        )
        .unwrap();
        assert_eq!(coeff(&u, &[0]), rat(3, 4));
        assert_eq!(coeff(&u, &[1]), rat(1, 4));
        let g = dist(DistSpec::Geometric(rat(1, 3)), 0, &a);
        let h = weighted_union(&g, &g, &rat(1, 2), &rat(1, 2)).unwrap();
        for k in 0..5 {
            assert_eq!(coeff(&h, &[k]), coeff(&g, &[k]));
        }
    }

    #[test]
    fn substitution_with_increment_gadget() {
        let a = xy();
        // ½ + ½Y²
        let mut b = PgaBuilder::new(a.clone(), 3);
        b.initial(0, int(1))
            .final_weight(0, rat(1, 2))
            .edge(0, 1, rat(1, 2), Some(Var(1)))
            .edge(1, 2, int(1), Some(Var(1)))
            .final_weight(2, int(1));
        let prior = b.build();
        let mut g = PgaBuilder::new(a.clone(), 3);
        g.initial(0, int(1))
            .edge(0, 1, int(1), Some(Var(1)))
            .edge(1, 2, int(1), Some(Var(0)))
            .final_weight(2, int(1));
        let gadget = g.build();
        let s = transition_subst(&prior, Var(1), &gadget).unwrap();
        assert_eq!(coeff(&s, &[0, 0]), rat(1, 2));
        assert_eq!(coeff(&s, &[2, 2]), rat(1, 2));
        assert_eq!(coeff(&s, &[0, 2]), int(0));
        assert_eq!(s.size(), 2 - 2 + 2 * (1 + 2 + 1));
    }

    #[test]
    fn substitution_with_unit_gadget_marginalizes() {
        let a = xy();
        let g = dist(DistSpec::Geometric(rat(1, 2)), 1, &a);
        let unit = dist(DistSpec::Dirac(0), 0, &a);
        let s = transition_subst(&g, Var(1), &unit).unwrap();
        let l = label_subst_one(&g, Var(1));
        assert_eq!(s.mass(), l.mass());
        assert_eq!(coeff(&s, &[0, 0]), int(1));
    }

    #[test]
    fn substitution_iid_coefficient() {
        let a = xy();
        let geo = dist(DistSpec::Geometric(rat(1, 2)), 1, &a);
        let mut y = PgaBuilder::new(a.clone(), 2);
        y.initial(0, int(1)).edge(0, 1, int(1), Some(Var(1))).final_weight(1, int(1));
        let gadget = concat(&y.build(), &dist(DistSpec::Bernoulli(rat(1, 3)), 0, &a)).unwrap();
        let s = transition_subst(&geo, Var(1), &gadget).unwrap();
        // Y=2 has weight 1/8, then exactly one of two Bernoulli(1/3) draws succeeds
        assert_eq!(coeff(&s, &[1, 2]), rat(1, 8) * rat(2, 1) * rat(1, 3) * rat(2, 3));
        assert_eq!(coeff(&s, &[1, 2]), rat(1, 18));
    }

    #[test]
    fn product_filters() {
        let a = Alphabet::new(["X"]);
        let g = dist(DistSpec::Geometric(rat(1, 2)), 0, &a);
        let p = product(&g, &build_guard_dfa(&Guard::less_than(Var(0), 2), &a)).unwrap();
        assert_eq!(p.mass(), ExtRational::Finite(rat(3, 4)));
        assert_eq!(coeff(&p, &[0]), rat(1, 2));
        assert_eq!(coeff(&p, &[1]), rat(1, 4));
        assert_eq!(coeff(&p, &[2]), int(0));
        let t = product(&g, &build_guard_dfa(&Guard::verum(), &a)).unwrap();
        assert_eq!(t.mass(), ExtRational::one());
    }

    #[test]
    fn decrement_examples() {
        let a = Alphabet::new(["X"]);
        let g = dist(DistSpec::Geometric(rat(1, 2)), 0, &a);
        let d = decrement(&g, Var(0)).unwrap();
        assert_eq!(d.size(), 3 * g.size() - g.symbol_count(Var(0)));
        assert_eq!(coeff(&d, &[0]), rat(3, 4));
        assert_eq!(coeff(&d, &[1]), rat(1, 8));
        assert_eq!(coeff(&d, &[3]), rat(1, 32));
        assert_eq!(d.mass(), ExtRational::one());

        let z = decrement(&dist(DistSpec::Dirac(0), 0, &a), Var(0)).unwrap();
        assert_eq!(coeff(&z, &[0]), int(1));
        let three = decrement(&dist(DistSpec::Dirac(3), 0, &a), Var(0)).unwrap();
        assert_eq!(coeff(&three, &[2]), int(1));
        assert_eq!(three.mass(), ExtRational::one());
    }

    #[test]
    fn alphabet_mismatch() {
        let g1 = dist(DistSpec::Dirac(1), 0, &Alphabet::new(["X"]));
        let g2 = dist(DistSpec::Dirac(1), 0, &Alphabet::new(["Y"]));
        assert!(matches!(concat(&g1, &g2), Err(Error::AlphabetMismatch { .. })));
    }
}
