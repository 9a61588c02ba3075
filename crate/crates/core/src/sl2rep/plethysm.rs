//! Monomial bases of `Sym^m(Sym^n U)` and `Λ^m(Sym^n U)`, and the sl2 action.
//!
//! `u_i = x1^(n-i) x2^i`. Lowering sends `u_i` to `(n-i) u_(i+1)`, raising
//! sends `u_i` to `i u_(i-1)`; both act as derivations on `Sym^m`.

use num_bigint::BigInt;

use crate::exactalg::{int, kernel_basis, ExactMatrix, Rational, SparseVec};
use crate::polyring::{Monomial, MonomialBasis};
use crate::sl2rep::qchar::QChar;

#[derive(Clone, Debug)]
pub struct PlethysmBasis {
    outer: usize,
    inner: usize,
    basis: MonomialBasis,
}

impl PlethysmBasis {
    pub fn new(outer: usize, inner: usize) -> Self {
        PlethysmBasis {
            outer,
            inner,
            basis: MonomialBasis::new(inner + 1, outer),
        }
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    pub fn inner(&self) -> usize {
        self.inner
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn monomials(&self) -> &MonomialBasis {
        &self.basis
    }

    /// Power of `x1` carried by a basis element.
    pub fn x1_degree(&self, m: &Monomial) -> usize {
        self.outer * self.inner - m.weight()
    }

    /// Torus weight `sum e_i (n - 2i)`.
    pub fn sl2_weight(&self, m: &Monomial) -> i64 {
        self.x1_degree(m) as i64 - m.weight() as i64
    }

    /// Character with `x1 -> q, x2 -> 1`.
    pub fn character(&self) -> QChar {
        QChar::from_exponents(self.basis.monomials().iter().map(|m| self.x1_degree(m)))
    }

    pub fn lower(&self, v: &SparseVec<Rational>) -> SparseVec<Rational> {
        self.apply(v, Direction::Lower)
    }

    pub fn raise(&self, v: &SparseVec<Rational>) -> SparseVec<Rational> {
        self.apply(v, Direction::Raise)
    }

    pub fn lowering_matrix(&self) -> ExactMatrix {
        self.matrix(Direction::Lower)
    }

    pub fn raising_matrix(&self) -> ExactMatrix {
        self.matrix(Direction::Raise)
    }

    fn matrix(&self, dir: Direction) -> ExactMatrix {
        let cols = (0..self.len()).map(|c| self.apply(&vec![(c, int(1))], dir)).collect();
        ExactMatrix::from_sparse_cols(self.len(), cols)
    }

    fn apply(&self, v: &SparseVec<Rational>, dir: Direction) -> SparseVec<Rational> {
        let n = self.inner;
        let mut entries = Vec::new();
        for (c, x) in v {
            let m = self.basis.get(*c);
            for i in 0..=n {
                let e = m.exps()[i] as usize;
                if e == 0 {
                    continue;
                }
                let (target, factor) = match dir {
                    Direction::Lower if i < n => (i + 1, n - i),
                    Direction::Raise if i > 0 => (i - 1, i),
                    _ => continue,
                };
                let moved = m.div_var(i).unwrap().mul_var(target);
                let idx = self.basis.index_of(&moved).unwrap();
                entries.push((idx, x * int((e * factor) as i64)));
            }
        }
        crate::exactalg::matrix::sparse_collect(entries)
    }

    /// Primitive integer bases of `ker(raising)` per torus weight, highest
    /// weight first.
    pub fn highest_weight_vectors(&self) -> Vec<(i64, Vec<BigInt>)> {
        let raise = self.raising_matrix();
        let mut weights: Vec<i64> = self.basis.monomials().iter().map(|m| self.sl2_weight(m)).collect();
        weights.sort_unstable_by(|a, b| b.cmp(a));
        weights.dedup();
        let mut out = Vec::new();
        for w in weights.into_iter().filter(|&w| w >= 0) {
            let cols: Vec<usize> = (0..self.len()).filter(|&c| self.sl2_weight(self.basis.get(c)) == w).collect();
            let sub = raise.submatrix(&(0..self.len()).collect::<Vec<_>>(), &cols);
            for k in kernel_basis(&sub) {
                let mut full = vec![BigInt::from(0); self.len()];
                for (j, c) in cols.iter().enumerate() {
                    full[*c] = k[j].clone();
                }
                out.push((w, full));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
enum Direction {
    Lower,
    Raise,
}

/// `m`-subsets of `{0..n}` in lexicographic order.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    outer: usize,
    inner: usize,
    subsets: Vec<Vec<usize>>,
}

impl WedgeBasis {
    pub fn new(outer: usize, inner: usize) -> Self {
        let mut subsets = Vec::new();
        let mut cur = Vec::with_capacity(outer);
        subsets_rec(inner + 1, outer, 0, &mut cur, &mut subsets);
        WedgeBasis { outer, inner, subsets }
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    pub fn inner(&self) -> usize {
        self.inner
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Character with `x1 -> q, x2 -> 1`; carries the shift `q^(m(m-1)/2)`
    /// relative to `[n+1 choose m]_q`.
    pub fn character(&self) -> QChar {
        QChar::from_exponents(self.subsets.iter().map(|s| s.iter().map(|i| self.inner - i).sum()))
    }
}

fn subsets_rec(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == m {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        if n - i < m - cur.len() {
            break;
        }
        cur.push(i);
        subsets_rec(n, m, i + 1, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::binom;
    use crate::sl2rep::qchar::q_binomial;

    #[test]
    fn sizes() {
        assert_eq!(PlethysmBasis::new(2, 4).len(), 15);
        assert_eq!(WedgeBasis::new(2, 7).len(), 28);
        assert_eq!(WedgeBasis::new(3, 2).subsets(), &[vec![0, 1, 2]]);
        assert_eq!(WedgeBasis::new(4, 2).len(), 0);
        let w = WedgeBasis::new(2, 3);
        assert_eq!(w.subsets()[..3], [vec![0, 1], vec![0, 2], vec![0, 3]]);
    }

    #[test]
    fn characters_match_q_binomials() {
        for n in 0..6 {
            for m in 0..5 {
                assert_eq!(PlethysmBasis::new(m, n).character(), q_binomial(m + n, m));
                let shifted = q_binomial(n + 1, m).shift(m * m.saturating_sub(1) / 2);
                assert_eq!(WedgeBasis::new(m, n).character(), shifted);
                assert_eq!(PlethysmBasis::new(m, n).len() as u64, binom(m + n, m));
            }
        }
    }

    #[test]
    fn lowering_convention() {
        let p = PlethysmBasis::new(1, 2);
        // u0 -> 2 u1.
        assert_eq!(p.lower(&vec![(0, int(1))]), vec![(1, int(2))]);
        let q = PlethysmBasis::new(3, 2);
        let lowest = q.monomials().index_of(&Monomial(vec![0, 0, 3])).unwrap();
        assert!(q.lower(&vec![(lowest, int(1))]).is_empty());
    }

    #[test]
    fn lowering_string_length() {
        // The top vector u0^a of Sym^a(Sym^b U) generates a string of length ab+1.
        for (a, b) in [(2, 2), (3, 2), (2, 3)] {
            let p = PlethysmBasis::new(a, b);
            let mut v = vec![(0, int(1))];
            for _ in 0..a * b {
                v = p.lower(&v);
                assert!(!v.is_empty());
            }
            assert!(p.lower(&v).is_empty());
        }
    }

    #[test]
    fn commutator_is_weight() {
        let p = PlethysmBasis::new(2, 4);
        let e = p.raising_matrix();
        let f = p.lowering_matrix();
        let ef = e.mul(&f);
        let fe = f.mul(&e);
        for c in 0..p.len() {
            let w = p.sl2_weight(p.monomials().get(c));
            let diff = crate::exactalg::matrix::sparse_axpy(&ef.column(c), &int(1), &fe.column(c));
            if w == 0 {
                assert!(diff.is_empty());
            } else {
                assert_eq!(diff, vec![(c, int(w))]);
            }
        }
    }

    #[test]
    fn highest_weight_decomposition() {
        // Sym^2(Sym^4 U) = Sym^8 + Sym^4 + Sym^0.
        let ws: Vec<i64> = PlethysmBasis::new(2, 4).highest_weight_vectors().into_iter().map(|x| x.0).collect();
        assert_eq!(ws, vec![8, 4, 0]);
        let ws: Vec<i64> = PlethysmBasis::new(4, 2).highest_weight_vectors().into_iter().map(|x| x.0).collect();
        assert_eq!(ws, vec![8, 4, 0]);
    }
}
