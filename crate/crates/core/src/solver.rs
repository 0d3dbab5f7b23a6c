//! Least nonnegative solutions of `B = M·B + F` over the extended rationals.
//!
//! Three routes are available. [`LinearSystem::least_solution`] decomposes the
//! dependency graph into strongly connected components and solves each block
//! by exact elimination, falling back to the linear program on a block when
//! elimination yields a singular system or a negative component. The global
//! routes [`LinearSystem::solve_by_elimination`] and [`LinearSystem::solve_by_lp`]
//! solve the whole system at once and exist mostly so the two can be checked
//! against each other.

use num_traits::{One, Signed, Zero};

use crate::rational::{ExtRational, Rational};

/// Sparse square system `B = M·B + rhs` with nonnegative data.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    rows: Vec<Vec<(usize, Rational)>>,
    rhs: Vec<Rational>,
}

impl LinearSystem {
    pub fn new(n: usize) -> Self {
        LinearSystem {
            rows: vec![Vec::new(); n],
            rhs: vec![Rational::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `w` to the coefficient `M[row][col]`.
    pub fn add_coefficient(&mut self, row: usize, col: usize, w: Rational) {
        if w.is_zero() {
            return;
        }
        if let Some(entry) = self.rows[row].iter_mut().find(|(c, _)| *c == col) {
            entry.1 += w;
        } else {
            self.rows[row].push((col, w));
        }
    }

    pub fn add_rhs(&mut self, row: usize, w: Rational) {
        self.rhs[row] += w;
    }

    pub fn coefficients(&self, row: usize) -> &[(usize, Rational)] {
        &self.rows[row]
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// Residual check `B == M·B + rhs` for a finite vector.
    pub fn is_fixed_point(&self, b: &[Rational]) -> bool {
        (0..self.len()).all(|i| {
            let mut s = self.rhs[i].clone();
            for (j, w) in &self.rows[i] {
                s += w * &b[*j];
            }
            s == b[i]
        })
    }

    /// Componentwise least solution in the extended rationals.
    pub fn least_solution(&self) -> Vec<ExtRational> {
        let n = self.len();
        let mut value: Vec<Option<ExtRational>> = vec![None; n];
        let mut in_comp = vec![usize::MAX; n];
        for comp in strongly_connected_components(&self.rows) {
            for (k, &q) in comp.iter().enumerate() {
                in_comp[q] = k;
            }
            // Constant part of each row once successors outside the block are known.
            let mut infinite = false;
            let mut c = Vec::with_capacity(comp.len());
            for &q in &comp {
                let mut s = self.rhs[q].clone();
                for (t, w) in &self.rows[q] {
                    if in_comp[*t] != usize::MAX {
                        continue;
                    }
                    match value[*t].as_ref().expect("successor blocks are solved first") {
                        ExtRational::Finite(v) => s += w * v,
                        ExtRational::Infinity => infinite = true,
                    }
                }
                c.push(s);
            }
            let block: Vec<Vec<(usize, Rational)>> = comp
                .iter()
                .map(|&q| {
                    self.rows[q]
                        .iter()
                        .filter(|(t, _)| in_comp[*t] != usize::MAX)
                        .map(|(t, w)| (in_comp[*t], w.clone()))
                        .collect()
                })
                .collect();
            let solved = if infinite {
                None
            } else if c.iter().all(Zero::is_zero) {
                Some(vec![Rational::zero(); comp.len()])
            } else {
                let sub = LinearSystem { rows: block, rhs: c };
                sub.solve_by_elimination().or_else(|| sub.solve_by_lp())
            };
            for &q in &comp {
                in_comp[q] = usize::MAX;
            }
            match solved {
                Some(xs) => {
                    for (&q, x) in comp.iter().zip(xs) {
                        value[q] = Some(ExtRational::Finite(x));
                    }
                }
                None => {
                    // Every state of a strongly connected block reaches the divergent one.
                    for &q in &comp {
                        value[q] = Some(ExtRational::Infinity);
                    }
                }
            }
        }
        value.into_iter().map(|v| v.expect("all blocks solved")).collect()
    }

    /// Exact Gaussian elimination on `(I − M)·B = rhs`. Returns `None` if the
    /// system is singular or its unique solution has a negative component.
    pub fn solve_by_elimination(&self) -> Option<Vec<Rational>> {
        let n = self.len();
        let mut a = self.dense_i_minus_m();
        let mut b = self.rhs.clone();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            let inv = a[col][col].recip();
            for j in col..n {
                a[col][j] = &a[col][j] * &inv;
            }
            b[col] = &b[col] * &inv;
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in col..n {
                    let delta = &factor * &a[col][j];
                    a[r][j] -= delta;
                }
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
        if b.iter().any(Signed::is_negative) {
            return None;
        }
        Some(b)
    }

    /// Exact simplex on `minimize Σ B s.t. (I − M)·B = rhs, B ≥ 0`.
    /// The all-ones objective selects the componentwise least feasible point.
    /// Returns `None` when the program is infeasible.
    pub fn solve_by_lp(&self) -> Option<Vec<Rational>> {
        let ones = vec![Rational::one(); self.len()];
        self.solve_by_lp_with(&ones).map(|(x, _)| x)
    }

    /// Like [`solve_by_lp`](Self::solve_by_lp) with a caller-supplied nonnegative objective.
    pub fn solve_by_lp_with(&self, objective: &[Rational]) -> Option<(Vec<Rational>, Rational)> {
        match simplex::minimize(&self.dense_i_minus_m(), &self.rhs, objective) {
            simplex::Outcome::Optimal { x, value } => Some((x, value)),
            simplex::Outcome::Infeasible => None,
            simplex::Outcome::Unbounded => None,
        }
    }

    fn dense_i_minus_m(&self) -> Vec<Vec<Rational>> {
        let n = self.len();
        let mut a = vec![vec![Rational::zero(); n]; n];
        for (i, row) in self.rows.iter().enumerate() {
            a[i][i] = Rational::one();
            for (j, w) in row {
                a[i][*j] -= w;
            }
        }
        a
    }
}

/// Tarjan's algorithm, iterative. Components come out in reverse topological
/// order: a component is emitted after every component reachable from it.
pub(crate) fn strongly_connected_components(adj: &[Vec<(usize, Rational)>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0usize;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = work.len().checked_sub(1) {
            let (v, edge) = work[top];
            if edge < adj[v].len() {
                let w = adj[v][edge].0;
                work[top].1 += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

pub(crate) mod simplex {
    //! Dense two-phase simplex over exact rationals with Bland's rule.

    use num_traits::{One, Signed, Zero};

    use crate::rational::Rational;

    #[derive(Debug, Clone, PartialEq)]
    pub enum Outcome {
        Optimal { x: Vec<Rational>, value: Rational },
        Infeasible,
        Unbounded,
    }

    struct Tableau {
        // m constraint rows followed by the reduced-cost row; last column is the rhs.
        t: Vec<Vec<Rational>>,
        basis: Vec<usize>,
        banned: Vec<bool>,
    }

    impl Tableau {
        fn rows(&self) -> usize {
            self.t.len() - 1
        }

        fn cols(&self) -> usize {
            self.t[0].len() - 1
        }

        fn pivot(&mut self, row: usize, col: usize) {
            let inv = self.t[row][col].recip();
            for v in self.t[row].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = self.t[row].clone();
            for (r, line) in self.t.iter_mut().enumerate() {
                if r == row || line[col].is_zero() {
                    continue;
                }
                let factor = line[col].clone();
                for (v, p) in line.iter_mut().zip(pivot_row.iter()) {
                    if !p.is_zero() {
                        *v -= &factor * p;
                    }
                }
            }
            self.basis[row] = col;
        }

        /// Runs to optimality; `false` on unboundedness.
        fn optimize(&mut self) -> bool {
            let m = self.rows();
            let rhs = self.cols();
            loop {
                let entering = (0..self.cols())
                    .find(|&j| !self.banned[j] && self.t[m][j].is_negative());
                let Some(col) = entering else { return true };
                let mut best: Option<(usize, Rational)> = None;
                for r in 0..m {
                    if !self.t[r][col].is_positive() {
                        continue;
                    }
                    let ratio = &self.t[r][rhs] / &self.t[r][col];
                    let better = match &best {
                        None => true,
                        Some((br, bv)) => {
                            ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                        }
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
                match best {
                    Some((row, _)) => self.pivot(row, col),
                    None => return false,
                }
            }
        }
    }

    /// `minimize c·x s.t. a·x = b, x ≥ 0`.
    pub fn minimize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Outcome {
        let m = a.len();
        let n = c.len();
        let width = n + m + 1;
        let mut t = Vec::with_capacity(m + 1);
        for i in 0..m {
            let mut row = vec![Rational::zero(); width];
            let flip = b[i].is_negative();
            for j in 0..n {
                row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
            }
            row[n + i] = Rational::one();
            row[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
            t.push(row);
        }
        // Phase one: minimise the sum of artificials.
        let mut cost = vec![Rational::zero(); width];
        for row in &t {
            for j in 0..n {
                cost[j] -= &row[j];
            }
            cost[width - 1] -= &row[width - 1];
        }
        t.push(cost);
        let mut tab = Tableau {
            t,
            basis: (n..n + m).collect(),
            banned: vec![false; n + m],
        };
        tab.optimize();
        if !tab.t[m][width - 1].is_zero() {
            return Outcome::Infeasible;
        }
        // Drive artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tab.rows() {
            if tab.basis[r] >= n {
                match (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                    Some(j) => tab.pivot(r, j),
                    None => {
                        tab.t.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for j in n..n + m {
            tab.banned[j] = true;
        }
        // Phase two: reduced costs for the real objective.
        let rows = tab.rows();
        let mut cost = vec![Rational::zero(); width];
        cost[..n].clone_from_slice(c);
        for i in 0..rows {
            let cb = if tab.basis[i] < n { c[tab.basis[i]].clone() } else { Rational::zero() };
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                let delta = &cb * &tab.t[i][j];
                cost[j] -= delta;
            }
        }
        tab.t[rows] = cost;
        if !tab.optimize() {
            return Outcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); n];
        for i in 0..tab.rows() {
            if tab.basis[i] < n {
                x[tab.basis[i]] = tab.t[i][width - 1].clone();
            }
        }
        let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
        Outcome::Optimal { x, value }
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn loop_system(w: Rational, f: Rational) -> LinearSystem {
        let mut s = LinearSystem::new(1);
        s.add_coefficient(0, 0, w);
        s.add_rhs(0, f);
        s
    }

    #[test]
    fn half_star_is_two() {
        let s = loop_system(rat(1, 2), int(1));
        assert_eq!(s.least_solution(), vec![ExtRational::Finite(int(2))]);
        assert_eq!(s.solve_by_elimination(), Some(vec![int(2)]));
        assert_eq!(s.solve_by_lp(), Some(vec![int(2)]));
    }

    #[test]
    fn unit_loop_diverges() {
        let s = loop_system(int(1), int(1));
        assert_eq!(s.least_solution(), vec![ExtRational::Infinity]);
        assert_eq!(s.solve_by_elimination(), None);
        assert_eq!(s.solve_by_lp(), None);
    }

    #[test]
    fn heavy_loop_gives_negative_elimination() {
        // B = 2B + 1 has the unique real solution -1; the least solution is ∞.
        let s = loop_system(int(2), int(1));
        assert_eq!(s.solve_by_elimination(), None);
        assert_eq!(s.least_solution(), vec![ExtRational::Infinity]);
    }

    #[test]
    fn divergence_propagates_upstream_only() {
        // 0 -> 1 (divergent), 2 independent
        let mut s = LinearSystem::new(3);
        s.add_coefficient(0, 1, rat(1, 3));
        s.add_coefficient(1, 1, int(1));
        s.add_rhs(1, int(1));
        s.add_rhs(2, rat(1, 5));
        let b = s.least_solution();
        assert_eq!(b[0], ExtRational::Infinity);
        assert_eq!(b[1], ExtRational::Infinity);
        assert_eq!(b[2], ExtRational::Finite(rat(1, 5)));
    }

    #[test]
    fn two_cycle() {
        // B0 = 1/2 B1 + 1/4, B1 = 1/2 B0 + 1/4  ->  B = 1/2
        let mut s = LinearSystem::new(2);
        s.add_coefficient(0, 1, rat(1, 2));
        s.add_coefficient(1, 0, rat(1, 2));
        s.add_rhs(0, rat(1, 4));
        s.add_rhs(1, rat(1, 4));
        let expect = vec![rat(1, 2), rat(1, 2)];
        assert_eq!(s.solve_by_elimination(), Some(expect.clone()));
        assert_eq!(s.solve_by_lp(), Some(expect.clone()));
        assert!(s.is_fixed_point(&expect));
    }

    #[test]
    fn scc_order_is_reverse_topological() {
        let adj = vec![vec![(1, int(1))], vec![(2, int(1))], vec![(1, int(1))]];
        let comps = strongly_connected_components(&adj);
        assert_eq!(comps, vec![vec![1, 2], vec![0]]);
    }
}
