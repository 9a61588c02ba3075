//! The Foulkes–Howe maps `α_k : Sym^k(Sym^d U) -> Sym^(ak)(Sym^b U)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{rank_of_rows, ExactMatrix, Provenance, RankConfig, RankMode, RankOutcome, SparseVec};
use crate::fhmaps::generators::{power_generators_with, Normalization, PowerGenerators};
use crate::polyring::{MultiPoly, MonomialBasis};
use crate::report::Status;
use crate::session::Session;
use crate::sl2rep::PlethysmBasis;

#[derive(Clone, Debug)]
pub struct FoulkesHoweMatrix {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub normalization: Normalization,
    /// Columns: monomials of degree `k` in `z_0..z_d`.
    pub source: PlethysmBasis,
    /// Rows: monomials of degree `ak` in `c_0..c_b`.
    pub target: PlethysmBasis,
    pub matrix: ExactMatrix,
}

impl FoulkesHoweMatrix {
    /// Source column indices grouped by torus weight; `α_k` maps each group
    /// into the target monomials of the same weight.
    pub fn weight_blocks(&self) -> BTreeMap<usize, Vec<usize>> {
        self.source.monomials().weight_blocks()
    }

    pub fn columns(&self) -> Vec<SparseVec<crate::exactalg::Rational>> {
        self.matrix.transpose().into_rows()
    }

    /// Rank as the sum of weight-block ranks. A modular block rank below the
    /// block's maximal possible rank is recomputed exactly.
    pub fn rank(&self, cfg: &RankConfig) -> Result<RankOutcome> {
        let cols = self.columns();
        let target_blocks = self.target.monomials().weight_blocks();
        let mut total = 0;
        let mut prov = Provenance::Exact;
        for (w, idx) in self.weight_blocks() {
            let block: Vec<SparseVec<_>> = idx.iter().map(|&c| cols[c].clone()).collect();
            let cap = idx.len().min(target_blocks.get(&w).map_or(0, Vec::len));
            let mut out = rank_of_rows(&block, cfg)?;
            if !out.provenance.is_exact() && out.rank < cap {
                let exact = RankConfig {
                    mode: RankMode::Exact,
                    ..cfg.clone()
                };
                out = rank_of_rows(&block, &exact)?;
            }
            total += out.rank;
            prov = prov.join(&out.provenance);
        }
        Ok(RankOutcome {
            rank: total,
            provenance: prov,
        })
    }
}

pub fn foulkes_howe(a: usize, b: usize, k: usize) -> Result<FoulkesHoweMatrix> {
    foulkes_howe_with(a, b, k, Normalization::Coefficient, &Session::exact())
}

/// Builds `α_k` column by column: the image of `z^β` is the image of
/// `z^β / z_j` times `P_j`, with `j` the last variable of `z^β`.
pub fn foulkes_howe_with(
    a: usize,
    b: usize,
    k: usize,
    normalization: Normalization,
    session: &Session,
) -> Result<FoulkesHoweMatrix> {
    let gens = power_generators_with(a, b, normalization)?;
    let d = gens.d;
    let source = PlethysmBasis::new(k, d);
    let target = PlethysmBasis::new(a * k, b);
    session
        .rank
        .check_budget("Foulkes-Howe matrix", target.len(), source.len())?;
    let key = format!("fh-a{a}-b{b}-k{k}-{}", normalization.tag());
    if let Some(cache) = &session.cache {
        if let Some(m) = cache.get(&key) {
            if m.rows() == target.len() && m.cols() == source.len() {
                return Ok(FoulkesHoweMatrix {
                    a,
                    b,
                    k,
                    normalization,
                    source,
                    target,
                    matrix: m,
                });
            }
        }
    }
    let polys = products(&gens, k);
    let cols: Vec<SparseVec<_>> = polys
        .par_iter()
        .map(|p| p.coords(target.monomials()))
        .collect::<Result<_>>()?;
    let matrix = ExactMatrix::from_sparse_cols(target.len(), cols);
    if let Some(cache) = &session.cache {
        cache.put(&key, &matrix)?;
    }
    Ok(FoulkesHoweMatrix {
        a,
        b,
        k,
        normalization,
        source,
        target,
        matrix,
    })
}

/// `prod_j P_j^(β_j)` for every `β` of degree `k`, in basis order.
pub fn products(gens: &PowerGenerators, k: usize) -> Vec<MultiPoly> {
    let n = gens.d + 1;
    let mut level: Vec<MultiPoly> = vec![MultiPoly::one(gens.nvars())];
    let mut prev_basis = MonomialBasis::new(n, 0);
    for t in 1..=k {
        let basis = MonomialBasis::new(n, t);
        let next: Vec<MultiPoly> = basis
            .monomials()
            .par_iter()
            .map(|m| {
                let j = m.last_var().expect("positive degree");
                let parent = prev_basis.index_of(&m.div_var(j).unwrap()).unwrap();
                level[parent].mul(&gens.gens[j])
            })
            .collect();
        level = next;
        prev_basis = basis;
    }
    level
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FhRankReport {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: Option<usize>,
    pub injective: Option<bool>,
    pub surjective: Option<bool>,
    pub maximal_rank: Option<bool>,
    pub provenance: Option<Provenance>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Rank of `α_k` with injectivity and surjectivity verdicts. Resource
/// limits give an inconclusive report rather than a verdict.
pub fn fh_rank_report(a: usize, b: usize, k: usize, session: &Session) -> Result<FhRankReport> {
    if a == 0 || b == 0 {
        return Err(Error::arg("a and b must be positive"));
    }
    let source_dim = PlethysmBasis::new(k, a * b).len();
    let target_dim = PlethysmBasis::new(a * k, b).len();
    let inconclusive = |e: Error| FhRankReport {
        a,
        b,
        k,
        source_dim,
        target_dim,
        rank: None,
        injective: None,
        surjective: None,
        maximal_rank: None,
        provenance: None,
        status: Status::Inconclusive,
        note: Some(e.to_string()),
    };
    let fh = match foulkes_howe_with(a, b, k, Normalization::Coefficient, session) {
        Ok(m) => m,
        Err(e @ Error::Resource { .. }) => return Ok(inconclusive(e)),
        Err(e) => return Err(e),
    };
    let out = match fh.rank(&session.rank) {
        Ok(o) => o,
        Err(e @ Error::Resource { .. }) => return Ok(inconclusive(e)),
        Err(e) => return Err(e),
    };
    let injective = out.rank == source_dim;
    let surjective = out.rank == target_dim;
    let maximal = injective || surjective;
    Ok(FhRankReport {
        a,
        b,
        k,
        source_dim,
        target_dim,
        rank: Some(out.rank),
        injective: Some(injective),
        surjective: Some(surjective),
        maximal_rank: Some(maximal),
        provenance: Some(out.provenance),
        status: Status::from_bool(maximal),
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{exact_rank, int};
    use crate::fhmaps::generators::power_generators;

    #[test]
    fn degree_zero_is_identity() {
        let m = foulkes_howe(2, 3, 0).unwrap();
        assert_eq!(m.matrix, ExactMatrix::identity(1));
    }

    #[test]
    fn degree_one_is_the_inclusion() {
        let m = foulkes_howe(2, 2, 1).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (6, 5));
        assert_eq!(exact_rank(&m.matrix), 5);
    }

    #[test]
    fn small_ranks() {
        let s = Session::exact();
        let r = fh_rank_report(2, 2, 2, &s).unwrap();
        assert_eq!((r.source_dim, r.target_dim, r.rank), (15, 15, Some(15)));
        assert_eq!(r.status, Status::Verified);
        let r = fh_rank_report(2, 2, 3, &s).unwrap();
        assert_eq!((r.source_dim, r.target_dim, r.rank), (35, 28, Some(28)));
        assert_eq!(r.surjective, Some(true));
        let r = fh_rank_report(3, 2, 0, &s).unwrap();
        assert_eq!((r.source_dim, r.target_dim, r.rank), (1, 1, Some(1)));
    }

    #[test]
    fn block_rank_matches_full_rank() {
        let m = foulkes_howe(2, 3, 2).unwrap();
        let blocks = m.rank(&RankConfig::exact()).unwrap().rank;
        assert_eq!(blocks, exact_rank(&m.matrix));
    }

    #[test]
    fn modular_rank_is_certified() {
        let s = Session::new(RankMode::Modular, 11);
        let r = fh_rank_report(2, 3, 3, &s).unwrap();
        assert_eq!(r.rank, Some(84));
        assert!(matches!(r.provenance, Some(Provenance::Modular { .. })));
    }

    #[test]
    fn resource_limit_is_inconclusive() {
        let s = Session::exact().with_mem_mb(0);
        let r = fh_rank_report(2, 2, 2, &s).unwrap();
        assert_eq!(r.status, Status::Inconclusive);
        assert_eq!(r.rank, None);
    }

    #[test]
    fn columns_are_direct_products() {
        let gens = power_generators(2, 2).unwrap();
        let m = foulkes_howe(2, 2, 3).unwrap();
        for (c, mono) in m.source.monomials().monomials().iter().enumerate() {
            let mut p = MultiPoly::one(3);
            for (j, &e) in mono.exps().iter().enumerate() {
                p = p.mul(&gens.gens[j].pow(e as usize));
            }
            let col = MultiPoly::from_coords(m.target.monomials(), &m.matrix.column(c));
            assert_eq!(col, p);
        }
        assert_eq!(m.matrix.get(0, 0), Some(&int(1)));
    }

    #[test]
    fn form_normalization_commutes_with_lowering() {
        let s = Session::exact();
        for (a, b, k) in [(2, 2, 2), (2, 3, 2), (3, 2, 3), (1, 3, 2)] {
            let m = foulkes_howe_with(a, b, k, Normalization::Form, &s).unwrap();
            let left = m.target.lowering_matrix().mul(&m.matrix);
            let right = m.matrix.mul(&m.source.lowering_matrix());
            assert_eq!(left, right, "(a, b, k) = ({a}, {b}, {k})");
        }
    }

    #[test]
    fn coefficient_normalization_does_not_commute() {
        let m = foulkes_howe(2, 2, 1).unwrap();
        let left = m.target.lowering_matrix().mul(&m.matrix);
        let right = m.matrix.mul(&m.source.lowering_matrix());
        assert_ne!(left, right);
    }

    #[test]
    fn highest_weight_triple_of_alpha_2() {
        use crate::exactalg::rat;
        use crate::sl2rep::{classical_hermite_triple_24, hw_triple, hw_vectors_2_2};
        let m = foulkes_howe_with(2, 2, 2, Normalization::Form, &Session::exact()).unwrap();
        let (v, w) = hw_vectors_2_2();
        let pairs: Vec<_> = v.into_iter().zip(w).collect();
        let t = hw_triple(&m.matrix, &m.source, &m.target, &pairs).unwrap();
        assert_eq!(t, vec![int(1), rat(-1, 3), rat(4, 3)]);
        assert_ne!(t, classical_hermite_triple_24().to_vec());
    }
}
