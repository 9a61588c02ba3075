//! Finite windows of graded modules: a basis per degree with torus weights,
//! and the action of each variable into the next degree.

use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{Echelon, Rational, SparseVec};
use crate::fhmaps::foulkes::products;
use crate::fhmaps::{power_generators, PowerGenerators};
use crate::polyring::{GradedIdeal, MonomialBasis, MultiPoly};
use crate::session::Session;

#[derive(Clone, Debug)]
pub struct ModulePiece {
    pub weights: Vec<usize>,
    /// `mult[v][e]`: coordinates of `x_v * e` in the next degree. Empty for
    /// the last degree of the window.
    pub mult: Vec<Vec<SparseVec<Rational>>>,
}

impl ModulePiece {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

/// Degrees `0..pieces.len()` of a graded module over `Q[x_0..x_(n-1)]`.
#[derive(Clone, Debug)]
pub struct ModuleData {
    pub nvars: usize,
    pub pieces: Vec<ModulePiece>,
    /// The module vanishes in every degree past the window.
    pub zero_beyond: bool,
}

impl ModuleData {
    /// `Some(dim M_k)` when known.
    pub fn dim(&self, k: i64) -> Option<usize> {
        if k < 0 {
            return Some(0);
        }
        match self.pieces.get(k as usize) {
            Some(p) => Some(p.dim()),
            None if self.zero_beyond => Some(0),
            None => None,
        }
    }

    /// Highest degree with a nonzero piece inside the window.
    pub fn top_degree(&self) -> Option<usize> {
        self.pieces.iter().rposition(|p| p.dim() > 0)
    }

    /// Coordinates of `x_v * e` for `e` a basis element of degree `k`.
    pub fn act(&self, k: usize, v: usize, e: usize) -> Result<&SparseVec<Rational>> {
        if k + 1 >= self.pieces.len() {
            if self.zero_beyond {
                static EMPTY: SparseVec<Rational> = Vec::new();
                return Ok(&EMPTY);
            }
            return Err(Error::arg(format!("degree {} is outside the module window", k + 1)));
        }
        Ok(&self.pieces[k].mult[v][e])
    }

    /// Largest `|x_u x_v e - x_v x_u e|` check over all degrees: the action
    /// must commute. Returns false at the first failure.
    pub fn actions_commute(&self) -> bool {
        for k in 0..self.pieces.len().saturating_sub(2) {
            for e in 0..self.pieces[k].dim() {
                for u in 0..self.nvars {
                    for v in u + 1..self.nvars {
                        let uv = apply(&self.pieces[k + 1], v, &self.pieces[k].mult[u][e]);
                        let vu = apply(&self.pieces[k + 1], u, &self.pieces[k].mult[v][e]);
                        if uv != vu {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn apply(piece: &ModulePiece, v: usize, x: &SparseVec<Rational>) -> SparseVec<Rational> {
    crate::exactalg::matrix::sparse_collect(
        x.iter()
            .flat_map(|(e, c)| piece.mult[v][*e].iter().map(move |(t, y)| (*t, c * y))),
    )
}

/// A subspace of a monomial space, stored as a reduced echelon basis.
struct Subspace {
    ambient: MonomialBasis,
    echelon: Echelon<Rational>,
    /// Pivot column -> basis position.
    position: BTreeMap<usize, usize>,
}

impl Subspace {
    fn new(ambient: MonomialBasis, echelon: Echelon<Rational>) -> Self {
        let position = echelon.pivots().enumerate().map(|(i, p)| (p, i)).collect();
        Subspace {
            ambient,
            echelon,
            position,
        }
    }

    fn full(ambient: MonomialBasis) -> Self {
        let rows = (0..ambient.len()).map(|i| vec![(i, Rational::one())]);
        let e = Echelon::from_rref_rows(rows);
        Self::new(ambient, e)
    }

    fn weights(&self) -> Vec<usize> {
        self.echelon.pivots().map(|p| self.ambient.get(p).weight()).collect()
    }

    /// Coordinates of a vector known to lie in the subspace.
    fn coords(&self, v: &SparseVec<Rational>) -> SparseVec<Rational> {
        debug_assert!(self.echelon.contains(v));
        v.iter()
            .filter_map(|(c, x)| self.position.get(c).map(|&i| (i, x.clone())))
            .collect()
    }
}

/// `S/I` in degrees `0..=k_max`, in the basis of standard monomials. The
/// window stops early once `(S/I)_k = 0`.
pub fn quotient_module(ideal: &GradedIdeal, k_max: usize, session: &Session) -> Result<ModuleData> {
    let pieces = ideal.pieces_cached(k_max + 1, session.cache.as_ref())?;
    let stop = pieces.iter().position(|p| p.is_full());
    let last = stop.unwrap_or(k_max + 1);
    let standard: Vec<Vec<usize>> = pieces.iter().map(|p| p.standard_monomials()).collect();
    let pos: Vec<BTreeMap<usize, usize>> = standard
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, &m)| (m, i)).collect())
        .collect();
    let n = ideal.nvars();
    let mut out = Vec::with_capacity(last);
    for k in 0..last {
        let p = &pieces[k];
        let weights = standard[k].iter().map(|&m| p.basis.get(m).weight()).collect();
        let mult = if k + 1 < last {
            let next = &pieces[k + 1];
            (0..n)
                .map(|v| {
                    standard[k]
                        .iter()
                        .map(|&m| {
                            let idx = next.basis.index_of(&p.basis.get(m).mul_var(v)).unwrap();
                            next.normal_form(vec![(idx, Rational::one())])
                                .into_iter()
                                .map(|(c, x)| (pos[k + 1][&c], x))
                                .collect()
                        })
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        out.push(ModulePiece { weights, mult });
    }
    Ok(ModuleData {
        nvars: n,
        pieces: out,
        zero_beyond: stop.is_some(),
    })
}

/// `B = S/I(X)` realized inside `R = Q[c_0..c_b]`: `B_k` is the image of `α_k`
/// in `R_(ak)` and `z_j` acts as multiplication by `P_j`. For `k >= b` the
/// image is taken to be all of `R_(ak)`, which is the surjectivity of `α_k`
/// in that range; `α_b` itself is checked here to be onto.
pub fn coordinate_ring_b(a: usize, b: usize, k_max: usize, session: &Session) -> Result<ModuleData> {
    let gens = power_generators(a, b)?;
    let nv = b + 1;
    let spaces: Vec<Subspace> = (0..=k_max)
        .into_par_iter()
        .map(|k| image_space(&gens, k, session))
        .collect::<Result<_>>()?;
    if k_max >= b {
        let k = b;
        let computed = image_echelon(&gens, k, &MonomialBasis::new(nv, a * k));
        if computed.rank() != spaces[k].ambient.len() {
            return Err(Error::Convention(format!("α_{b} is not onto for (a, b) = ({a}, {b})")));
        }
    }
    let mut pieces = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let s = &spaces[k];
        let mult = if k < k_max {
            let next = &spaces[k + 1];
            gens.gens
                .par_iter()
                .map(|pj| {
                    s.echelon
                        .rows()
                        .map(|(_, row)| {
                            let poly = MultiPoly::from_coords(&s.ambient, row).mul(pj);
                            next.coords(&poly.coords(&next.ambient).expect("degree a(k+1)"))
                        })
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        pieces.push(ModulePiece {
            weights: s.weights(),
            mult,
        });
    }
    Ok(ModuleData {
        nvars: gens.d + 1,
        pieces,
        zero_beyond: false,
    })
}

fn image_space(gens: &PowerGenerators, k: usize, session: &Session) -> Result<Subspace> {
    let ambient = MonomialBasis::new(gens.b + 1, gens.a * k);
    if k >= gens.b {
        return Ok(Subspace::full(ambient));
    }
    session
        .rank
        .check_budget("image of α_k", ambient.len(), MonomialBasis::new(gens.d + 1, k).len())?;
    let e = image_echelon(gens, k, &ambient);
    Ok(Subspace::new(ambient, e))
}

fn image_echelon(gens: &PowerGenerators, k: usize, ambient: &MonomialBasis) -> Echelon<Rational> {
    let mut by_weight: BTreeMap<usize, Vec<SparseVec<Rational>>> = BTreeMap::new();
    for p in products(gens, k) {
        let w = p.weight().unwrap_or(0);
        by_weight.entry(w).or_default().push(p.coords(ambient).expect("degree ak"));
    }
    let rows: Vec<Vec<SparseVec<Rational>>> = by_weight
        .into_par_iter()
        .map(|(_, vs)| {
            let mut e = Echelon::new();
            for v in vs {
                e.insert(v);
            }
            e.into_rref().into_iter().map(|(_, r)| r).collect()
        })
        .collect();
    Echelon::from_rref_rows(rows.into_iter().flatten())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::binom;
    use crate::fhmaps::power_generators;

    #[test]
    fn residue_field() {
        let m = quotient_module(&GradedIdeal::maximal(3), 4, &Session::exact()).unwrap();
        assert!(m.zero_beyond);
        assert_eq!(m.dim(0), Some(1));
        assert_eq!(m.dim(1), Some(0));
        assert_eq!(m.dim(7), Some(0));
    }

    #[test]
    fn quotient_of_i22() {
        let gens = power_generators(2, 2).unwrap();
        let i = GradedIdeal::new(3, gens.gens).unwrap();
        let m = quotient_module(&i, 6, &Session::exact()).unwrap();
        let dims: Vec<_> = (0..5).map(|k| m.dim(k).unwrap()).collect();
        assert_eq!(dims, vec![1, 3, 1, 0, 0]);
        assert!(m.actions_commute());
    }

    #[test]
    fn b_model_dimensions() {
        // B_k has dimension binom(k+4, 4) for k <= 2 and binom(2k+2, 2) beyond.
        let m = coordinate_ring_b(2, 2, 4, &Session::exact()).unwrap();
        for k in 0..=4usize {
            let expect = if k <= 2 { binom(k + 4, 4) } else { binom(2 * k + 2, 2) };
            assert_eq!(m.dim(k as i64), Some(expect as usize));
        }
        assert_eq!(m.dim(5), None);
        assert!(m.actions_commute());
    }

    #[test]
    fn open_window_is_not_zero() {
        let gens = power_generators(1, 1).unwrap();
        let i = GradedIdeal::new(2, vec![gens.gens[0].clone()]).unwrap();
        let m = quotient_module(&i, 3, &Session::exact()).unwrap();
        assert!(!m.zero_beyond);
        assert_eq!(m.dim(3), Some(1));
        assert_eq!(m.dim(4), None);
        assert!(m.act(3, 0, 0).is_err());
    }
}
