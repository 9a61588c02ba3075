//! Homogeneous ideals given by generators, and their graded pieces.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;

use crate::cache::{fingerprint, MatrixCache};
use crate::error::{Error, Result};
use crate::exactalg::{format_rational, Echelon, ExactMatrix, Rational, SparseVec};
use crate::polyring::monomial::{Monomial, MonomialBasis, TermOrder};
use crate::polyring::poly::MultiPoly;

/// Echelonized degree-`k` piece of an ideal, in the monomial basis of `S_k`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: usize,
    pub basis: Arc<MonomialBasis>,
    /// Reduced echelon basis; pivots are grlex-leading monomials.
    pub echelon: Echelon<Rational>,
    /// `dim I_k - dim (m I)_k`, when known.
    pub new_generators: Option<usize>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn codim(&self) -> usize {
        self.basis.len() - self.dim()
    }

    pub fn is_full(&self) -> bool {
        self.codim() == 0
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.echelon.contains(&p.coords(&self.basis)?))
    }

    /// Basis indices of the monomials that are not pivots, i.e. a monomial
    /// basis of `(S/I)_k`.
    pub fn standard_monomials(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| !self.echelon.is_pivot(i)).collect()
    }

    /// Reduction of a vector of `S_k` modulo `I_k`; the result is supported
    /// on standard monomials.
    pub fn normal_form(&self, v: SparseVec<Rational>) -> SparseVec<Rational> {
        self.echelon.reduce(v)
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_sparse_rows(self.basis.len(), self.echelon.rows().map(|(_, r)| r.clone()).collect())
    }

    /// Initial monomials of the piece under `order`.
    pub fn initial_monomials(&self, order: TermOrder) -> Vec<Monomial> {
        let mut perm: Vec<usize> = (0..self.basis.len()).collect();
        perm.sort_by(|&x, &y| order.cmp(self.basis.get(y), self.basis.get(x)));
        let mut pos = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            pos[old] = new;
        }
        let mut ech: Echelon<Rational> = Echelon::new();
        for (_, row) in self.echelon.rows() {
            let mut v: SparseVec<Rational> = row.iter().map(|(c, x)| (pos[*c], x.clone())).collect();
            v.sort_by_key(|e| e.0);
            ech.insert(v);
        }
        ech.pivots().map(|p| self.basis.get(perm[p]).clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct GradedIdeal {
    nvars: usize,
    gens: Vec<MultiPoly>,
}

impl GradedIdeal {
    /// Zero generators are dropped; the rest must be homogeneous.
    pub fn new(nvars: usize, gens: Vec<MultiPoly>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.nvars() != nvars {
                return Err(Error::arg("generator lives in a different ring"));
            }
            if g.is_zero() {
                continue;
            }
            if g.homogeneous_degree().is_none() {
                return Err(Error::arg("generators must be homogeneous"));
            }
            kept.push(g);
        }
        Ok(GradedIdeal { nvars, gens: kept })
    }

    pub fn maximal(nvars: usize) -> Self {
        GradedIdeal {
            nvars,
            gens: (0..nvars).map(|i| MultiPoly::var(nvars, i)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn max_generator_degree(&self) -> usize {
        self.gens.iter().filter_map(MultiPoly::homogeneous_degree).max().unwrap_or(0)
    }

    /// Content hash of the generator list.
    pub fn fingerprint(&self) -> String {
        let mut text = format!("nvars {}\n", self.nvars);
        for g in &self.gens {
            for (m, c) in g.terms() {
                text.push_str(&format!("{:?}:{} ", m.exps(), format_rational(c)));
            }
            text.push('\n');
        }
        fingerprint(&text)
    }

    /// Pieces in degrees `0..=k_max`, each built from the previous one.
    pub fn pieces(&self, k_max: usize) -> Vec<GradedPiece> {
        self.pieces_cached(k_max, None).expect("no cache, no io")
    }

    pub fn pieces_cached(&self, k_max: usize, cache: Option<&MatrixCache>) -> Result<Vec<GradedPiece>> {
        let fp = cache.map(|_| self.fingerprint());
        let mut out: Vec<GradedPiece> = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let basis = Arc::new(MonomialBasis::new(self.nvars, k));
            let key = fp.as_ref().map(|f| format!("piece-{f}-{k}"));
            if let (Some(c), Some(key)) = (cache, key.as_ref()) {
                if let Some(m) = c.get(key) {
                    if m.cols() == basis.len() {
                        out.push(GradedPiece {
                            degree: k,
                            basis,
                            echelon: Echelon::from_rref_rows(m.into_rows()),
                            new_generators: None,
                        });
                        continue;
                    }
                }
            }
            let piece = self.next_piece(out.last(), basis)?;
            if let (Some(c), Some(key)) = (cache, key.as_ref()) {
                c.put(key, &piece.to_matrix())?;
            }
            out.push(piece);
        }
        Ok(out)
    }

    fn next_piece(&self, prev: Option<&GradedPiece>, basis: Arc<MonomialBasis>) -> Result<GradedPiece> {
        let k = basis.degree();
        let mut below: Vec<SparseVec<Rational>> = Vec::new();
        if let Some(prev) = prev {
            for (_, row) in prev.echelon.rows() {
                for i in 0..self.nvars {
                    let mut v: SparseVec<Rational> = row
                        .iter()
                        .map(|(c, x)| (basis.index_of(&prev.basis.get(*c).mul_var(i)).unwrap(), x.clone()))
                        .collect();
                    v.sort_by_key(|e| e.0);
                    below.push(v);
                }
            }
        }
        let mut fresh: Vec<SparseVec<Rational>> = Vec::new();
        for g in &self.gens {
            if g.homogeneous_degree() == Some(k) {
                fresh.push(g.coords(&basis)?);
            }
        }
        let (echelon, below_rank) = echelon_by_weight(&basis, below, fresh);
        let dim = echelon.rank();
        Ok(GradedPiece {
            degree: k,
            basis,
            echelon,
            new_generators: Some(dim - below_rank),
        })
    }

    pub fn graded_piece(&self, k: usize) -> GradedPiece {
        self.pieces(k).pop().unwrap()
    }

    /// `HF(S/I)(k)` for `k = 0..=k_max`.
    pub fn hilbert_function(&self, k_max: usize) -> Vec<usize> {
        self.pieces(k_max).iter().map(GradedPiece::codim).collect()
    }

    /// Minimal generator count per degree, `0..=k_max`.
    pub fn minimal_generator_counts(&self, k_max: usize) -> Vec<usize> {
        self.pieces(k_max).iter().map(|p| p.new_generators.unwrap_or(0)).collect()
    }

    /// Generators of `I^j`: all `j`-fold products, dropping those already in
    /// the span of earlier products of the same degree.
    pub fn power(&self, j: usize) -> Result<GradedIdeal> {
        if j == 0 {
            return Err(Error::arg("ideal power needs j >= 1"));
        }
        if j == 1 {
            return Ok(self.clone());
        }
        let n = self.gens.len();
        let mut combos: Vec<Vec<usize>> = Vec::new();
        let mut cur = Vec::with_capacity(j);
        multisets(n, j, 0, &mut cur, &mut combos);
        let products: Vec<MultiPoly> = combos
            .par_iter()
            .map(|c| {
                c.iter()
                    .fold(MultiPoly::one(self.nvars), |acc, &g| acc.mul(&self.gens[g]))
            })
            .collect();
        let mut spans: BTreeMap<usize, (MonomialBasis, Echelon<Rational>)> = BTreeMap::new();
        let mut kept = Vec::new();
        for p in products {
            let Some(deg) = p.homogeneous_degree() else { continue };
            let (basis, ech) = spans
                .entry(deg)
                .or_insert_with(|| (MonomialBasis::new(self.nvars, deg), Echelon::new()));
            if ech.insert(p.coords(basis)?).is_some() {
                kept.push(p);
            }
        }
        GradedIdeal::new(self.nvars, kept)
    }
}

fn multisets(n: usize, j: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == j {
        out.push(cur.clone());
        return;
    }
    for g in start..n {
        cur.push(g);
        multisets(n, j, g, cur, out);
        cur.pop();
    }
}

fn vector_weight(basis: &MonomialBasis, v: &SparseVec<Rational>) -> Option<usize> {
    let mut it = v.iter().map(|(c, _)| basis.get(*c).weight());
    let first = it.next()?;
    it.all(|w| w == first).then_some(first)
}

/// Echelonizes `below` then `fresh`, split by torus weight when every vector
/// is weight-homogeneous. Returns the reduced echelon form and the rank of
/// `below` alone.
fn echelon_by_weight(
    basis: &MonomialBasis,
    below: Vec<SparseVec<Rational>>,
    fresh: Vec<SparseVec<Rational>>,
) -> (Echelon<Rational>, usize) {
    let tagged: Vec<(bool, SparseVec<Rational>)> = below
        .into_iter()
        .map(|v| (true, v))
        .chain(fresh.into_iter().map(|v| (false, v)))
        .filter(|(_, v)| !v.is_empty())
        .collect();
    let weights: Option<Vec<usize>> = tagged.iter().map(|(_, v)| vector_weight(basis, v)).collect();
    let block_sizes: BTreeMap<usize, usize> = basis.weight_blocks().into_iter().map(|(w, ix)| (w, ix.len())).collect();
    let mut groups: BTreeMap<usize, Vec<(bool, SparseVec<Rational>)>> = BTreeMap::new();
    let sizes: BTreeMap<usize, usize> = match weights {
        Some(ws) => {
            for (w, t) in ws.into_iter().zip(tagged) {
                groups.entry(w).or_default().push(t);
            }
            block_sizes
        }
        None => {
            groups.insert(0, tagged);
            BTreeMap::from([(0, basis.len())])
        }
    };
    let results: Vec<(Echelon<Rational>, usize)> = groups
        .into_par_iter()
        .map(|(w, vs)| {
            let cap = sizes[&w];
            let mut ech = Echelon::new();
            let mut below_rank = 0;
            for (is_below, v) in vs {
                if ech.rank() == cap {
                    break;
                }
                if ech.insert(v).is_some() && is_below {
                    below_rank += 1;
                }
            }
            (ech.reduced(), below_rank)
        })
        .collect();
    let below_rank = results.iter().map(|r| r.1).sum();
    let rows = results.into_iter().flat_map(|(e, _)| e.into_rref().into_iter().map(|(_, r)| r));
    (Echelon::from_rref_rows(rows), below_rank)
}

/// `m^d` in `nvars` variables, generated by all degree-`d` monomials.
pub fn maximal_power(nvars: usize, d: usize) -> GradedIdeal {
    let basis = MonomialBasis::new(nvars, d);
    GradedIdeal {
        nvars,
        gens: basis
            .monomials()
            .iter()
            .map(|m| MultiPoly::term(m.clone(), Rational::one()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{binom, int};
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn maximal_ideal_pieces() {
        let m = GradedIdeal::maximal(3);
        assert_eq!(m.graded_piece(1).dim(), 3);
        assert_eq!(m.hilbert_function(3), vec![1, 0, 0, 0]);
        assert_eq!(m.minimal_generator_counts(3), vec![0, 3, 0, 0]);
    }

    #[test]
    fn zero_ideal_hilbert_function() {
        let z = GradedIdeal::new(3, vec![]).unwrap();
        let hf = z.hilbert_function(5);
        for (k, h) in hf.into_iter().enumerate() {
            assert_eq!(h as u64, binom(k + 2, 2));
        }
    }

    #[test]
    fn principal_ideal() {
        // I = (x0 x1 - x2^2): HF(S/I)(k) = dim S_k - dim S_{k-2}.
        let g = x(3, 0).mul(&x(3, 1)).sub(&x(3, 2).pow(2));
        let i = GradedIdeal::new(3, vec![g]).unwrap();
        assert_eq!(i.hilbert_function(4), vec![1, 3, 5, 7, 9]);
        assert_eq!(i.minimal_generator_counts(4), vec![0, 0, 1, 0, 0]);
    }

    #[test]
    fn inhomogeneous_weights_fall_back_to_one_block() {
        // x0 + x1 is homogeneous of degree 1 but mixes weights 0 and 1.
        let i = GradedIdeal::new(2, vec![x(2, 0).add(&x(2, 1))]).unwrap();
        assert_eq!(i.hilbert_function(3), vec![1, 1, 1, 1]);
        let p = i.graded_piece(2);
        assert!(p.contains(&x(2, 0).pow(2).sub(&x(2, 1).pow(2))).unwrap());
    }

    #[test]
    fn rejects_inhomogeneous() {
        let bad = x(2, 0).add(&MultiPoly::one(2));
        assert!(GradedIdeal::new(2, vec![bad]).is_err());
    }

    #[test]
    fn powers() {
        let m = GradedIdeal::maximal(3);
        let m2 = m.power(2).unwrap();
        assert_eq!(m2.generators().len(), 6);
        assert_eq!(m2.hilbert_function(3), vec![1, 3, 0, 0]);
        // (x0, x1)^2 has only 3 independent products even if x0 is listed twice.
        let dup = GradedIdeal::new(2, vec![x(2, 0), x(2, 1), x(2, 0).scale(&int(2))]).unwrap();
        assert_eq!(dup.power(2).unwrap().generators().len(), 3);
        assert!(m.power(0).is_err());
    }

    #[test]
    fn normal_forms_are_standard() {
        let g = x(3, 0).mul(&x(3, 1)).sub(&x(3, 2).pow(2));
        let i = GradedIdeal::new(3, vec![g]).unwrap();
        let p = i.graded_piece(3);
        let std = p.standard_monomials();
        assert_eq!(std.len(), 7);
        for c in 0..p.basis.len() {
            let nf = p.normal_form(vec![(c, int(1))]);
            assert!(nf.iter().all(|(j, _)| std.contains(j)));
        }
    }

    #[test]
    fn cached_pieces_match() {
        let dir = tempfile::tempdir().unwrap();
        let cache = MatrixCache::open(dir.path()).unwrap();
        let g = x(3, 0).mul(&x(3, 1)).sub(&x(3, 2).pow(2));
        let i = GradedIdeal::new(3, vec![g, x(3, 1).pow(2)]).unwrap();
        let cold = i.pieces_cached(4, Some(&cache)).unwrap();
        let warm = i.pieces_cached(4, Some(&cache)).unwrap();
        for (a, b) in cold.iter().zip(&warm) {
            assert_eq!(a.to_matrix(), b.to_matrix());
        }
        assert_eq!(i.hilbert_function(4), warm.iter().map(GradedPiece::codim).collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn multiplication_by_variables_stays_inside(c in prop::collection::vec(-3i64..=3, 6)) {
            let basis = MonomialBasis::new(3, 2);
            let g = MultiPoly::from_terms(3, basis.monomials().iter().cloned().zip(c.iter().map(|&v| int(v))));
            let i = GradedIdeal::new(3, vec![g]).unwrap();
            let pieces = i.pieces(4);
            for k in 2..4 {
                prop_assert!(pieces[k + 1].dim() >= pieces[k].dim());
                for (_, row) in pieces[k].echelon.rows() {
                    let p = MultiPoly::from_coords(&pieces[k].basis, row);
                    for v in 0..3 {
                        prop_assert!(pieces[k + 1].contains(&p.mul(&x(3, v))).unwrap());
                    }
                }
            }
        }
    }
}
