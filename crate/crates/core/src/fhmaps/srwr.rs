//! Term data of the complexes `Sym^r(φ)` and `Λ^r(φ^∨(-1))`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::binom;
use crate::sl2rep::{PlethysmBasis, QChar, WedgeBasis};

/// `Λ^wedge(Sym^(d+b-2) U) ⊗ Sym^sym(Sym^d U) ⊗ O(twist)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub wedge: usize,
    pub sym: usize,
    pub wedge_dim: u64,
    pub sym_dim: u64,
    pub twist: i64,
}

impl Term {
    fn new(d: usize, b: usize, wedge: usize, sym: usize, twist: i64) -> Self {
        Term {
            wedge,
            sym,
            wedge_dim: binom(d + b - 1, wedge),
            sym_dim: binom(d + sym, sym),
            twist,
        }
    }

    pub fn dim(&self) -> u64 {
        self.wedge_dim * self.sym_dim
    }

    /// Enumerated character, normalized to lowest degree 0.
    pub fn character(&self, d: usize, b: usize) -> QChar {
        WedgeBasis::new(self.wedge, d + b - 2)
            .character()
            .mul(&PlethysmBasis::new(self.sym, d).character())
            .normalized()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrWrTerms {
    pub d: usize,
    pub b: usize,
    pub r: usize,
    /// Index `i` holds the terms in cohomological degree `-i`.
    pub s_terms: Vec<Term>,
    pub w_terms: Vec<Term>,
    /// Termwise character equality, filled in for `r = b - 1`.
    pub characters_match: Option<Vec<bool>>,
}

pub fn sr_wr_terms(a: usize, b: usize, r: usize) -> Result<SrWrTerms> {
    if a == 0 {
        return Err(Error::arg("a must be positive"));
    }
    sr_wr_terms_general(a * b, b, r)
}

/// Term data for arbitrary `d`; the character comparison runs for `r = b-1`.
pub fn sr_wr_terms_general(d: usize, b: usize, r: usize) -> Result<SrWrTerms> {
    if b == 0 || d + b < 2 {
        return Err(Error::arg("need b >= 1 and d + b >= 2"));
    }
    let s_terms: Vec<Term> = (0..=r).map(|i| Term::new(d, b, i, r - i, -(i as i64))).collect();
    let w_terms: Vec<Term> = (0..=r).map(|i| Term::new(d, b, r - i, i, -(i as i64))).collect();
    let characters_match = (r + 1 == b).then(|| {
        s_terms
            .iter()
            .zip(&w_terms)
            .map(|(s, w)| s.character(d, b) == w.character(d, b))
            .collect()
    });
    Ok(SrWrTerms {
        d,
        b,
        r,
        s_terms,
        w_terms,
        characters_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_equals_one() {
        let t = sr_wr_terms(2, 3, 1).unwrap();
        assert_eq!((t.s_terms[1].dim(), t.s_terms[1].twist), (8, -1));
        assert_eq!((t.s_terms[0].dim(), t.s_terms[0].twist), (7, 0));
        assert!(t.characters_match.is_none());
    }

    #[test]
    fn self_dual_cases() {
        for (a, b) in [(2, 3), (1, 4), (3, 2), (2, 4)] {
            let t = sr_wr_terms(a, b, b - 1).unwrap();
            let m = t.characters_match.unwrap();
            assert_eq!(m.len(), b);
            assert!(m.iter().all(|&x| x));
            for (s, w) in t.s_terms.iter().zip(&t.w_terms) {
                assert_eq!(s.dim(), w.dim());
            }
        }
    }

    #[test]
    fn other_r_differs() {
        // For r != b-1 the two complexes have different term dimensions.
        let t = sr_wr_terms(2, 3, 1).unwrap();
        assert_ne!(t.s_terms[0].dim(), t.w_terms[0].dim());
    }
}
