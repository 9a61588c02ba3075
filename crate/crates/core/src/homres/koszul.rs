//! Betti numbers as Koszul homology:
//! `β_{i,j} = dim H(Λ^{i+1}V ⊗ M_{j-i-1} -> Λ^iV ⊗ M_{j-i} -> Λ^{i-1}V ⊗ M_{j-i+1})`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{binom, rank_of_rows, Provenance, RankConfig, RankOutcome, Rational, SparseVec};
use crate::homres::betti::BettiTable;
use crate::homres::module::ModuleData;

/// Size-`k` subsets of `0..n` in lex order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Images of the basis of `Λ^iV ⊗ M_s` under the Koszul differential, grouped
/// by torus weight. Codomain index of `e_T ⊗ m` is `rank(T) * dim M_(s+1) + m`.
pub fn koszul_images(m: &ModuleData, i: usize, s: usize) -> Result<BTreeMap<usize, Vec<SparseVec<Rational>>>> {
    let n = m.nvars;
    let src_dim = m.dim(s as i64).unwrap_or(0);
    let mut out: BTreeMap<usize, Vec<SparseVec<Rational>>> = BTreeMap::new();
    if i == 0 || i > n || src_dim == 0 {
        return Ok(out);
    }
    let tgt_dim = m
        .dim(s as i64 + 1)
        .ok_or_else(|| Error::arg(format!("module degree {} is outside the window", s + 1)))?;
    let faces: HashMap<Vec<usize>, usize> = subsets(n, i - 1).into_iter().enumerate().map(|(k, t)| (t, k)).collect();
    let weights = &m.pieces[s].weights;
    for set in subsets(n, i) {
        let wset: usize = set.iter().sum();
        for (e, &we) in weights.iter().enumerate().take(src_dim) {
            let mut img: Vec<(usize, Rational)> = Vec::new();
            if tgt_dim > 0 {
                for (t, &v) in set.iter().enumerate() {
                    let mut face = set.clone();
                    face.remove(t);
                    let base = faces[&face] * tgt_dim;
                    let sign = if t % 2 == 0 { Rational::one() } else { -Rational::one() };
                    for (c, x) in m.act(s, v, e)? {
                        img.push((base + c, &sign * x));
                    }
                }
            }
            img.sort_by_key(|(c, _)| *c);
            img.retain(|(_, x)| !x.is_zero());
            out.entry(wset + we).or_default().push(img);
        }
    }
    Ok(out)
}

/// Rank of `Λ^iV ⊗ M_s -> Λ^{i-1}V ⊗ M_{s+1}`, summed over weight blocks.
pub fn koszul_rank(m: &ModuleData, i: usize, s: i64, cfg: &RankConfig) -> Result<RankOutcome> {
    let zero = RankOutcome {
        rank: 0,
        provenance: Provenance::Exact,
    };
    if s < 0 {
        return Ok(zero);
    }
    let blocks = koszul_images(m, i, s as usize)?;
    let ranks: Vec<RankOutcome> = blocks
        .into_par_iter()
        .map(|(_, rows)| rank_of_rows(&rows, cfg))
        .collect::<Result<_>>()?;
    Ok(ranks.into_iter().fold(zero, |acc, r| RankOutcome {
        rank: acc.rank + r.rank,
        provenance: acc.provenance.join(&r.provenance),
    }))
}

/// Betti table of `M` over rows `row_min..=row_max`. Needs `M` known through
/// degree `row_max + 1`. Entries whose ranks exceed the budget are unknown.
pub fn tor_betti(m: &ModuleData, row_min: i64, row_max: i64, cfg: &RankConfig) -> Result<BettiTable> {
    let n = m.nvars;
    if m.dim(row_max + 1).is_none() {
        return Err(Error::arg(format!("module window must reach degree {}", row_max + 1)));
    }
    // Ranks of d_i with source degree s, for s in row_min-1..=row_max.
    let mut tasks: Vec<(usize, i64, u128)> = Vec::new();
    for s in (row_min - 1)..=row_max {
        let dim = m.dim(s).unwrap_or(0) as u128;
        for i in 1..=n {
            if dim > 0 {
                tasks.push((i, s, binom(n, i) as u128 * dim));
            }
        }
    }
    tasks.sort_by(|x, y| y.2.cmp(&x.2).then((x.0, x.1).cmp(&(y.0, y.1))));
    let ranks: HashMap<(usize, i64), Option<RankOutcome>> = tasks
        .par_iter()
        .map(|&(i, s, _)| {
            let r = match koszul_rank(m, i, s, cfg) {
                Ok(r) => Ok(Some(r)),
                Err(Error::Resource { .. }) => Ok(None),
                Err(e) => Err(e),
            };
            r.map(|r| ((i, s), r))
        })
        .collect::<Result<_>>()?;
    let get = |i: usize, s: i64| -> Option<RankOutcome> {
        if i == 0 || i > n || m.dim(s).unwrap_or(0) == 0 {
            return Some(RankOutcome {
                rank: 0,
                provenance: Provenance::Exact,
            });
        }
        ranks.get(&(i, s)).cloned().flatten()
    };
    let mut table = BettiTable::new(n, n, row_min, row_max);
    for r in row_min..=row_max {
        let dm = m.dim(r).unwrap_or(0);
        for i in 0..=n {
            let dim_k = binom(n, i) * dm as u64;
            let out = get(i, r);
            let inc = get(i + 1, r - 1);
            let (value, prov) = match (out, inc) {
                (Some(o), Some(c)) => (Some(dim_k - o.rank as u64 - c.rank as u64), o.provenance.join(&c.provenance)),
                (o, c) => {
                    let p = [o, c]
                        .into_iter()
                        .flatten()
                        .fold(Provenance::Exact, |p, x| p.join(&x.provenance));
                    (None, p)
                }
            };
            table.set(i, i as i64 + r, value, prov);
        }
    }
    Ok(table)
}

/// `Σ_i (-1)^i dim(Λ^iV ⊗ M_{j-i}) = Σ_i (-1)^i β_{i,j}` for every `j` whose
/// terms are all determined: row `j - i` lies in the table window or
/// `M_{j-i} = 0`. Returns the failing degrees.
pub fn euler_mismatches(m: &ModuleData, t: &BettiTable) -> Vec<i64> {
    let n = m.nvars;
    let mut bad = Vec::new();
    for j in t.row_min..=t.row_max + n as i64 {
        let mut lhs: i128 = 0;
        let mut rhs: i128 = 0;
        let mut determined = true;
        for i in 0..=n {
            let r = j - i as i64;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let Some(dm) = m.dim(r) else {
                determined = false;
                break;
            };
            lhs += sign * binom(n, i) as i128 * dm as i128;
            if dm == 0 {
                continue;
            }
            if r < t.row_min || r > t.row_max {
                determined = false;
                break;
            }
            match t.get(i, j) {
                Some(v) => rhs += sign * v as i128,
                None => determined = false,
            }
        }
        if determined && lhs != rhs {
            bad.push(j);
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::sparse_collect;
    use crate::fhmaps::power_generators;
    use crate::homres::module::{coordinate_ring_b, quotient_module};
    use crate::polyring::GradedIdeal;
    use crate::session::Session;

    fn compose(m: &ModuleData, i: usize, s: usize) -> bool {
        // d_{i-1} ∘ d_i = 0 on every basis element of Λ^iV ⊗ M_s.
        let n = m.nvars;
        let mid_dim = m.dim(s as i64 + 1).unwrap();
        let next = koszul_images(m, i - 1, s + 1).unwrap();
        let mut mid_rows: Vec<Option<SparseVec<Rational>>> = vec![None; crate::exactalg::binom(n, i - 1) as usize * mid_dim];
        // Reassemble d_{i-1} in source order: weights group rows, so recompute order.
        let mut order = Vec::new();
        for set in subsets(n, i - 1) {
            let w: usize = set.iter().sum();
            for e in 0..mid_dim {
                order.push(w + m.pieces[s + 1].weights[e]);
            }
        }
        let mut cursor: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, w) in order.iter().enumerate() {
            let c = cursor.entry(*w).or_default();
            mid_rows[k] = next.get(w).map(|v| v[*c].clone());
            *c += 1;
        }
        for rows in koszul_images(m, i, s).unwrap().values() {
            for r in rows {
                let img = sparse_collect(r.iter().flat_map(|(c, x)| {
                    mid_rows[*c].clone().unwrap_or_default().into_iter().map(move |(t, y)| (t, x * &y))
                }));
                if !img.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn koszul_squares_to_zero() {
        let gens = power_generators(2, 2).unwrap();
        let i = GradedIdeal::new(3, gens.gens).unwrap();
        let q = quotient_module(&i, 4, &Session::exact()).unwrap();
        assert!(compose(&q, 2, 0));
        assert!(compose(&q, 3, 0));
        let b = coordinate_ring_b(2, 2, 3, &Session::exact()).unwrap();
        for i in 2..=5 {
            assert!(compose(&b, i, 0), "i = {i}");
            assert!(compose(&b, i, 1), "i = {i}");
        }
    }

    #[test]
    fn residue_field_of_three_vars() {
        let m = quotient_module(&GradedIdeal::maximal(3), 2, &Session::exact()).unwrap();
        let t = tor_betti(&m, 0, 0, &RankConfig::exact()).unwrap();
        assert_eq!(t.row(0), vec![Some(1), Some(3), Some(3), Some(1)]);
        let ideal = {
            let mut t = t.clone();
            t.complete = true;
            t.quotient_to_ideal()
        };
        assert_eq!(ideal.row(1), vec![Some(3), Some(3), Some(1)]);
        assert_eq!(ideal.regularity(), Some(1));
    }

    #[test]
    fn coordinate_ring_of_x_22() {
        let b = coordinate_ring_b(2, 2, 4, &Session::exact()).unwrap();
        let t = tor_betti(&b, 0, 3, &RankConfig::exact()).unwrap();
        assert_eq!(t.row(0), vec![Some(1), Some(0), Some(0), Some(0), Some(0), Some(0)]);
        assert_eq!(t.row(2), vec![Some(0), Some(7), Some(10), Some(5), Some(1), Some(0)]);
        assert!(t.row_vanishes(1));
        assert!(t.row_vanishes(3));
        assert!(euler_mismatches(&b, &t).is_empty());
    }

    #[test]
    fn budget_marks_unknown() {
        let b = coordinate_ring_b(2, 2, 4, &Session::exact()).unwrap();
        let mut cfg = RankConfig::exact();
        cfg.budget_entries = 10;
        let t = tor_betti(&b, 0, 3, &cfg).unwrap();
        assert!(t.has_unknown());
        assert_eq!(t.regularity(), None);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
