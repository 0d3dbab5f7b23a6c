//! Program variables, the ordered alphabet they live in, and valuations over it.

use std::fmt;
use std::sync::Arc;

/// Index of a variable inside an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

/// Ordered set of variable names. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<Vec<String>>);

impl Alphabet {
    /// Builds an alphabet, dropping repeated names (first occurrence wins).
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if !out.contains(&n) {
                out.push(n);
            }
        }
        Alphabet(Arc::new(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, v: Var) -> &str {
        &self.0[v.0]
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.0.iter().position(|n| n == name).map(Var)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.0.len()).map(Var)
    }

    /// True when both alphabets list the same names in the same order.
    pub fn same_as(&self, other: &Alphabet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// This alphabet followed by the names of `other` it does not already contain.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn contains_all(&self, other: &Alphabet) -> bool {
        other.0.iter().all(|n| self.0.contains(n))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(", "))
    }
}

/// A program state σ ∈ ℕ^V, stored densely in alphabet order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(Vec<u64>);

impl Valuation {
    pub fn zero(alphabet: &Alphabet) -> Self {
        Valuation(vec![0; alphabet.len()])
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        Valuation(counts)
    }

    /// Named assignments; unmentioned variables are 0. Unknown names yield `Err(name)`.
    pub fn from_pairs<'a, I>(alphabet: &Alphabet, pairs: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (&'a str, u64)>,
    {
        let mut v = Valuation::zero(alphabet);
        for (name, value) in pairs {
            let var = alphabet.var(name).ok_or_else(|| name.to_string())?;
            v.0[var.0] = value;
        }
        Ok(v)
    }

    pub fn get(&self, v: Var) -> u64 {
        self.0.get(v.0).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: Var, value: u64) {
        self.0[v.0] = value;
    }

    pub fn with(&self, v: Var, value: u64) -> Self {
        let mut out = self.clone();
        out.0[v.0] = value;
        out
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Valuation) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayValuation(self, alphabet)
    }
}

struct DisplayValuation<'a>(&'a Valuation, &'a Alphabet);

impl fmt::Display for DisplayValuation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .1
            .vars()
            .map(|v| format!("{}={}", self.1.name(v), self.0.get(v)))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parikh image of a word: number of occurrences of each variable.
pub fn parikh(word: &[Var], alphabet: &Alphabet) -> Valuation {
    let mut v = Valuation::zero(alphabet);
    for &x in word {
        v.0[x.0] += 1;
    }
    v
}

/// All valuations with every component in `0..=bound`, in lexicographic order.
pub fn valuations_up_to(alphabet: &Alphabet, bound: u64) -> Vec<Valuation> {
    valuations_in_box(&vec![bound; alphabet.len()])
}

/// All valuations `σ` with `σ(i) <= bounds[i]`, lexicographic (last variable fastest).
pub fn valuations_in_box(bounds: &[u64]) -> Vec<Valuation> {
    let mut out = vec![Valuation(Vec::new())];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for v in &out {
            for k in 0..=b {
                let mut w = v.0.clone();
                w.push(k);
                next.push(Valuation(w));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::new(["X", "Y"])
    }

    #[test]
    fn parikh_counts() {
        let a = xy();
        let (x, y) = (Var(0), Var(1));
        assert_eq!(parikh(&[x, y, x], &a), Valuation::from_counts(vec![2, 1]));
        assert_eq!(parikh(&[], &a), Valuation::zero(&a));
        let r = Alphabet::new(["R"]);
        assert_eq!(parikh(&[Var(0); 3], &r), Valuation::from_counts(vec![3]));
    }

    #[test]
    fn alphabet_dedups_and_unions() {
        let a = Alphabet::new(["x", "r", "x"]);
        assert_eq!(a.names(), ["x", "r"]);
        let b = a.union(&Alphabet::new(["y", "r"]));
        assert_eq!(b.names(), ["x", "r", "y"]);
        assert!(b.contains_all(&a));
        assert_eq!(a.var("r"), Some(Var(1)));
    }

    #[test]
    fn valuation_from_pairs() {
        let a = xy();
        let v = Valuation::from_pairs(&a, [("Y", 3)]).unwrap();
        assert_eq!(v.counts(), [0, 3]);
        assert_eq!(Valuation::from_pairs(&a, [("Z", 1)]), Err("Z".to_string()));
        assert_eq!(v.display(&a).to_string(), "X=0,Y=3");
    }

    #[test]
    fn box_enumeration() {
        let all = valuations_in_box(&[1, 2]);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].counts(), [0, 0]);
        assert_eq!(all[5].counts(), [1, 2]);
    }
}
