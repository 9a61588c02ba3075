//! Explicit complexes of graded free modules, their degreewise homology, and
//! minimal resolutions built by kernel completion.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{kernel_basis, rank_of_rows, Echelon, ExactMatrix, Provenance, RankConfig, Rational, SparseVec};
use crate::homres::koszul::subsets;
use crate::polyring::{Monomial, MonomialBasis, MultiPoly};
use crate::report::Status;

/// Generator of a graded free module: `S(-degree)` with a torus weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Generator {
    pub degree: i64,
    pub weight: i64,
}

/// `F_0 <- F_1 <- ... <- F_n`; `maps[p - 1]` is `d_p: F_p -> F_(p-1)`, stored
/// as `rows(F_(p-1)) x rows(F_p)` polynomial entries.
#[derive(Clone, Debug)]
pub struct ExplicitComplex {
    nvars: usize,
    terms: Vec<Vec<Generator>>,
    maps: Vec<Vec<Vec<MultiPoly>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyEntry {
    pub position: usize,
    pub degree: i64,
    pub dim: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub degree_min: i64,
    pub degree_max: i64,
    /// Nonzero homology only.
    pub homology: Vec<HomologyEntry>,
    pub provenance: Provenance,
}

impl ExactnessReport {
    pub fn homology_at(&self, position: usize, degree: i64) -> usize {
        self.homology
            .iter()
            .find(|h| h.position == position && h.degree == degree)
            .map_or(0, |h| h.homology)
    }

    /// Positions other than `0` are acyclic throughout the window.
    pub fn is_resolution(&self) -> bool {
        self.homology.iter().all(|h| h.position == 0)
    }
}

impl ExplicitComplex {
    /// Validates shapes, homogeneity of every entry, and `d_(p-1) d_p = 0`.
    pub fn new(nvars: usize, terms: Vec<Vec<Generator>>, maps: Vec<Vec<Vec<MultiPoly>>>) -> Result<Self> {
        if terms.is_empty() || maps.len() + 1 != terms.len() {
            return Err(Error::arg("a complex with n+1 terms needs n maps"));
        }
        for (k, m) in maps.iter().enumerate() {
            let (tgt, src) = (&terms[k], &terms[k + 1]);
            if m.len() != tgt.len() || m.iter().any(|r| r.len() != src.len()) {
                return Err(Error::arg(format!("map {} has the wrong shape", k + 1)));
            }
            for (r, row) in m.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    if e.nvars() != nvars {
                        return Err(Error::arg("entry lives in the wrong ring"));
                    }
                    let want = src[c].degree - tgt[r].degree;
                    if e.homogeneous_degree().map(|d| d as i64) != Some(want) {
                        return Err(Error::arg(format!("entry ({r}, {c}) of map {} is not of degree {want}", k + 1)));
                    }
                    let w = src[c].weight - tgt[r].weight;
                    if e.weight().map(|x| x as i64) != Some(w) {
                        return Err(Error::arg(format!("entry ({r}, {c}) of map {} is not of weight {w}", k + 1)));
                    }
                }
            }
        }
        let c = ExplicitComplex { nvars, terms, maps };
        for p in 2..c.terms.len() {
            for col in 0..c.terms[p].len() {
                let comp = (0..c.terms[p - 2].len()).any(|r| {
                    let s = (0..c.terms[p - 1].len()).fold(MultiPoly::zero(nvars), |acc, m| {
                        acc.add(&c.maps[p - 2][r][m].mul(&c.maps[p - 1][m][col]))
                    });
                    !s.is_zero()
                });
                if comp {
                    return Err(Error::NotAComplex {
                        position: p,
                        degree: c.terms[p][col].degree,
                    });
                }
            }
        }
        Ok(c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, p: usize) -> &[Generator] {
        &self.terms[p]
    }

    pub fn map(&self, p: usize) -> &[Vec<MultiPoly>] {
        &self.maps[p - 1]
    }

    /// Number of generators of `F_p` in each degree.
    pub fn twists(&self, p: usize) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for g in &self.terms[p] {
            *out.entry(g.degree).or_insert(0) += 1;
        }
        out
    }

    pub fn dim(&self, p: usize, k: i64) -> usize {
        self.terms
            .get(p)
            .map_or(0, |t| t.iter().map(|g| basis_len(self.nvars, k - g.degree)).sum())
    }

    /// Images of the degree-`k` basis of `F_p` under `d_p`, grouped by weight.
    fn images(&self, p: usize, k: i64, bases: &mut BasisCache) -> BTreeMap<i64, Vec<SparseVec<Rational>>> {
        let mut out: BTreeMap<i64, Vec<SparseVec<Rational>>> = BTreeMap::new();
        if p == 0 || p >= self.terms.len() {
            return out;
        }
        let tgt = &self.terms[p - 1];
        let offsets = offsets(self.nvars, tgt, k);
        let tgt_bases: Vec<Option<std::sync::Arc<MonomialBasis>>> =
            tgt.iter().map(|g| bases.get(self.nvars, k - g.degree)).collect();
        for (c, g) in self.terms[p].iter().enumerate() {
            let Some(src) = bases.get(self.nvars, k - g.degree) else { continue };
            for mon in src.monomials() {
                let mut img: SparseVec<Rational> = Vec::new();
                for (r, tb) in tgt_bases.iter().enumerate() {
                    let e = &self.maps[p - 1][r][c];
                    if e.is_zero() {
                        continue;
                    }
                    let tb = tb.as_ref().expect("nonzero entry implies a target piece");
                    let v = e.mul_monomial(mon).coords(tb).expect("homogeneous entry");
                    img.extend(v.into_iter().map(|(i, x)| (offsets[r] + i, x)));
                }
                img.sort_by_key(|(i, _)| *i);
                out.entry(g.weight + mon.weight() as i64).or_default().push(img);
            }
        }
        out
    }

    /// Rank of `d_p` in degree `k`.
    pub fn rank_at(&self, p: usize, k: i64, cfg: &RankConfig) -> Result<(usize, Provenance)> {
        let blocks = self.images(p, k, &mut BasisCache::default());
        let ranks: Vec<_> = blocks
            .into_par_iter()
            .map(|(_, rows)| rank_of_rows(&rows, cfg))
            .collect::<Result<_>>()?;
        Ok(ranks
            .into_iter()
            .fold((0, Provenance::Exact), |(r, p), o| (r + o.rank, p.join(&o.provenance))))
    }

    /// Homology dimension at every position for each degree in the window.
    pub fn exactness_check(&self, degree_min: i64, degree_max: i64, cfg: &RankConfig) -> Result<ExactnessReport> {
        let tasks: Vec<(usize, i64)> = (1..self.terms.len())
            .flat_map(|p| (degree_min..=degree_max).map(move |k| (p, k)))
            .collect();
        let ranks: HashMap<(usize, i64), (usize, Provenance)> = tasks
            .par_iter()
            .map(|&(p, k)| self.rank_at(p, k, cfg).map(|r| ((p, k), r)))
            .collect::<Result<_>>()?;
        let mut homology = Vec::new();
        let mut prov = Provenance::Exact;
        for p in 0..self.terms.len() {
            for k in degree_min..=degree_max {
                let dim = self.dim(p, k);
                let out = ranks.get(&(p, k)).map_or(0, |r| r.0);
                let inc = ranks.get(&(p + 1, k)).map_or(0, |r| r.0);
                for r in [ranks.get(&(p, k)), ranks.get(&(p + 1, k))].into_iter().flatten() {
                    prov = prov.join(&r.1);
                }
                let h = dim - out - inc;
                if h > 0 {
                    homology.push(HomologyEntry {
                        position: p,
                        degree: k,
                        dim,
                        homology: h,
                    });
                }
            }
        }
        Ok(ExactnessReport {
            degree_min,
            degree_max,
            homology,
            provenance: prov,
        })
    }

    /// Appends `F_(n+1)` minimally generated by `ker d_n` through degree
    /// `k_max`. Seed columns are tried first, in the given order, before
    /// kernel vectors of the same degree. Returns the number of seeds used;
    /// `Ok(None)` when the kernel vanishes in the window.
    pub fn extend(&mut self, k_max: i64, seeds: &[Vec<MultiPoly>]) -> Result<Option<usize>> {
        let n = self.terms.len() - 1;
        if n == 0 {
            return Err(Error::arg("cannot extend a complex with a single term"));
        }
        let src = self.terms[n].clone();
        let mut seeded: BTreeMap<i64, Vec<(Generator, SparseVec<Rational>)>> = BTreeMap::new();
        let mut bases = BasisCache::default();
        for s in seeds {
            let g = column_generator(&src, s).ok_or_else(|| Error::arg("seed column is not homogeneous"))?;
            let v = self.column_coords(n, g.degree, s, &mut bases);
            seeded.entry(g.degree).or_default().push((g, v));
        }
        let kmin = src.iter().map(|g| g.degree).min().unwrap_or(0) + 1;
        let mut new_gens: Vec<Generator> = Vec::new();
        let mut new_cols: Vec<Vec<MultiPoly>> = Vec::new();
        let mut used = 0;
        for k in kmin..=k_max {
            // Current image span in F_n, per weight.
            let mut span: BTreeMap<i64, Echelon<Rational>> = BTreeMap::new();
            for (g, col) in new_gens.iter().zip(&new_cols) {
                let Some(mb) = bases.get(self.nvars, k - g.degree) else { continue };
                for mon in mb.monomials() {
                    let shifted: Vec<MultiPoly> = col.iter().map(|e| e.mul_monomial(mon)).collect();
                    let v = self.column_coords(n, k, &shifted, &mut bases);
                    span.entry(g.weight + mon.weight() as i64).or_default().insert(v);
                }
            }
            for (g, v) in seeded.remove(&k).unwrap_or_default() {
                let e = span.entry(g.weight).or_default();
                if e.insert(v.clone()).is_some() {
                    used += 1;
                    new_cols.push(self.coords_to_column(n, k, &v, &mut bases));
                    new_gens.push(g);
                }
            }
            let dom = self.piece_index(n, k, &mut bases);
            let blocks = self.images(n, k, &mut bases);
            let rows = self.terms.get(n - 1).map_or(0, |_| self.dim(n - 1, k));
            for (w, imgs) in blocks {
                let idx = &dom[&w];
                let m = ExactMatrix::from_sparse_cols(rows, imgs);
                for kv in kernel_basis(&m) {
                    let v: SparseVec<Rational> = kv
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(i, x)| (idx[i], Rational::from_integer(x)))
                        .collect();
                    let e = span.entry(w).or_default();
                    if e.insert(v.clone()).is_some() {
                        new_cols.push(self.coords_to_column(n, k, &v, &mut bases));
                        new_gens.push(Generator { degree: k, weight: w });
                    }
                }
            }
        }
        if new_gens.is_empty() {
            return Ok(None);
        }
        let rows = src.len();
        let mut map = vec![Vec::with_capacity(new_cols.len()); rows];
        for col in new_cols {
            for (r, e) in col.into_iter().enumerate() {
                map[r].push(e);
            }
        }
        self.terms.push(new_gens);
        self.maps.push(map);
        Ok(Some(used))
    }

    /// Degree-`k` basis indices of `F_p`, grouped by weight in the order the
    /// images of `d_p` are produced.
    fn piece_index(&self, p: usize, k: i64, bases: &mut BasisCache) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let offs = offsets(self.nvars, &self.terms[p], k);
        for (c, g) in self.terms[p].iter().enumerate() {
            let Some(mb) = bases.get(self.nvars, k - g.degree) else { continue };
            for (i, mon) in mb.monomials().iter().enumerate() {
                out.entry(g.weight + mon.weight() as i64).or_default().push(offs[c] + i);
            }
        }
        out
    }

    fn column_coords(&self, p: usize, k: i64, col: &[MultiPoly], bases: &mut BasisCache) -> SparseVec<Rational> {
        let offs = offsets(self.nvars, &self.terms[p], k);
        let mut v = Vec::new();
        for (r, e) in col.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let mb = bases.get(self.nvars, k - self.terms[p][r].degree).expect("homogeneous column");
            v.extend(e.coords(&mb).expect("homogeneous column").into_iter().map(|(i, x)| (offs[r] + i, x)));
        }
        v
    }

    fn coords_to_column(&self, p: usize, k: i64, v: &SparseVec<Rational>, bases: &mut BasisCache) -> Vec<MultiPoly> {
        let offs = offsets(self.nvars, &self.terms[p], k);
        self.terms[p]
            .iter()
            .enumerate()
            .map(|(r, g)| match bases.get(self.nvars, k - g.degree) {
                Some(mb) => {
                    let lo = offs[r];
                    let hi = lo + mb.len();
                    let part: SparseVec<Rational> = v
                        .iter()
                        .filter(|(i, _)| *i >= lo && *i < hi)
                        .map(|(i, x)| (i - lo, x.clone()))
                        .collect();
                    MultiPoly::from_coords(&mb, &part)
                }
                None => MultiPoly::zero(self.nvars),
            })
            .collect()
    }

    /// `β_{p-1, j}` of the ideal resolved by `F_1 -> F_0 = S`, read off the
    /// generator degrees of positions `p >= 1`.
    pub fn ideal_betti(&self) -> BTreeMap<(usize, i64), u64> {
        let mut out = BTreeMap::new();
        for p in 1..self.terms.len() {
            for (d, c) in self.twists(p) {
                out.insert((p - 1, d), c as u64);
            }
        }
        out
    }
}

#[derive(Default)]
struct BasisCache(HashMap<(usize, usize), std::sync::Arc<MonomialBasis>>);

impl BasisCache {
    fn get(&mut self, nvars: usize, k: i64) -> Option<std::sync::Arc<MonomialBasis>> {
        if k < 0 {
            return None;
        }
        Some(
            self.0
                .entry((nvars, k as usize))
                .or_insert_with(|| std::sync::Arc::new(MonomialBasis::new(nvars, k as usize)))
                .clone(),
        )
    }
}

fn basis_len(nvars: usize, k: i64) -> usize {
    if k < 0 {
        0
    } else {
        crate::exactalg::binom(nvars + k as usize - 1, k as usize) as usize
    }
}

fn offsets(nvars: usize, gens: &[Generator], k: i64) -> Vec<usize> {
    let mut acc = 0;
    gens.iter()
        .map(|g| {
            let o = acc;
            acc += basis_len(nvars, k - g.degree);
            o
        })
        .collect()
}

/// Degree and weight of a homogeneous column over the given generators.
fn column_generator(rows: &[Generator], col: &[MultiPoly]) -> Option<Generator> {
    let mut out: Option<Generator> = None;
    for (g, e) in rows.iter().zip(col) {
        if e.is_zero() {
            continue;
        }
        let here = Generator {
            degree: g.degree + e.homogeneous_degree()? as i64,
            weight: g.weight + e.weight()? as i64,
        };
        match out {
            None => out = Some(here),
            Some(o) if o != here => return None,
            _ => {}
        }
    }
    out
}

/// `S <- S(-1)^n <- ... <- S(-n)`, the Koszul complex on the variables.
pub fn koszul_complex(nvars: usize) -> Result<ExplicitComplex> {
    let sets: Vec<Vec<Vec<usize>>> = (0..=nvars).map(|p| subsets(nvars, p)).collect();
    let terms = sets
        .iter()
        .enumerate()
        .map(|(p, ss)| {
            ss.iter()
                .map(|s| Generator {
                    degree: p as i64,
                    weight: s.iter().sum::<usize>() as i64,
                })
                .collect()
        })
        .collect();
    let mut maps = Vec::new();
    for p in 1..=nvars {
        let index: HashMap<&Vec<usize>, usize> = sets[p - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = vec![vec![MultiPoly::zero(nvars); sets[p].len()]; sets[p - 1].len()];
        for (c, s) in sets[p].iter().enumerate() {
            for (t, &v) in s.iter().enumerate() {
                let mut face = s.clone();
                face.remove(t);
                let sign = if t % 2 == 0 { Rational::one() } else { -Rational::one() };
                m[index[&face]][c] = MultiPoly::term(Monomial::var(nvars, v), sign);
            }
        }
        maps.push(m);
    }
    ExplicitComplex::new(nvars, terms, maps)
}

/// `S <- F_1` with `F_1` free on the given homogeneous, weight-homogeneous
/// generators of an ideal.
pub fn presentation(nvars: usize, gens: &[MultiPoly]) -> Result<ExplicitComplex> {
    let mut terms = vec![vec![Generator { degree: 0, weight: 0 }], Vec::new()];
    for g in gens {
        let (Some(d), Some(w)) = (g.homogeneous_degree(), g.weight()) else {
            return Err(Error::arg("generator must be nonzero, homogeneous and of pure weight"));
        };
        terms[1].push(Generator {
            degree: d as i64,
            weight: w as i64,
        });
    }
    ExplicitComplex::new(nvars, terms, vec![vec![gens.to_vec()]])
}

/// Minimal resolution of the ideal generated by `gens` (which must be a
/// minimal generating set), truncated at degree `k_max`. `seeds[q]` lists
/// columns tried first when building `F_(q+2)`.
pub fn resolve(nvars: usize, gens: &[MultiPoly], k_max: i64, seeds: &[Vec<Vec<MultiPoly>>]) -> Result<(ExplicitComplex, Vec<usize>)> {
    let mut c = presentation(nvars, gens)?;
    let mut used = Vec::new();
    for q in 0..nvars {
        let s = seeds.get(q).map_or(&[][..], |s| &s[..]);
        match c.extend(k_max, s)? {
            Some(u) => used.push(u),
            None => break,
        }
    }
    Ok((c, used))
}

/// Summary of an exactness run in report form.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexReport {
    pub label: String,
    pub twists: Vec<BTreeMap<i64, usize>>,
    pub exactness: ExactnessReport,
    /// `dim H_0` per degree of the window.
    pub h0: Vec<(i64, usize)>,
    pub expected_h0: Vec<(i64, usize)>,
    pub status: Status,
}

impl ComplexReport {
    pub fn new(label: &str, c: &ExplicitComplex, ex: ExactnessReport, expected_h0: Vec<(i64, usize)>) -> Self {
        let h0: Vec<(i64, usize)> = (ex.degree_min..=ex.degree_max).map(|k| (k, ex.homology_at(0, k))).collect();
        let status = Status::from_bool(ex.is_resolution() && h0 == expected_h0);
        ComplexReport {
            label: label.to_string(),
            twists: (0..c.len()).map(|p| c.twists(p)).collect(),
            exactness: ex,
            h0,
            expected_h0,
            status,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fhmaps::power_generators;
    use crate::polyring::GradedIdeal;

    #[test]
    fn koszul_homology_is_the_residue_field() {
        let k = koszul_complex(3).unwrap();
        let ex = k.exactness_check(0, 5, &RankConfig::exact()).unwrap();
        assert_eq!(ex.homology.len(), 1);
        assert_eq!(ex.homology_at(0, 0), 1);
        assert!(ex.is_resolution());
    }

    #[test]
    fn non_complex_is_rejected() {
        let x = |i| MultiPoly::var(2, i);
        let terms = vec![
            vec![Generator { degree: 0, weight: 0 }],
            vec![Generator { degree: 1, weight: 0 }, Generator { degree: 1, weight: 1 }],
            vec![Generator { degree: 2, weight: 1 }],
        ];
        let maps = vec![vec![vec![x(0), x(1)]], vec![vec![x(1)], vec![x(0)]]];
        match ExplicitComplex::new(2, terms, maps) {
            Err(Error::NotAComplex { position: 2, degree: 2 }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn resolution_of_the_maximal_ideal_is_koszul() {
        let gens: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(3, i)).collect();
        let (c, _) = resolve(3, &gens, 6, &[]).unwrap();
        let b = c.ideal_betti();
        assert_eq!(b.get(&(0, 1)), Some(&3));
        assert_eq!(b.get(&(1, 2)), Some(&3));
        assert_eq!(b.get(&(2, 3)), Some(&1));
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn buchsbaum_eisenbud_for_i22() {
        let gens = power_generators(2, 2).unwrap();
        let phi = crate::fhmaps::phi_matrix(2, 2).unwrap();
        let cols: Vec<Vec<MultiPoly>> = (0..phi.cols())
            .map(|c| (0..phi.rows()).map(|r| phi.matrix.entry(r, c).clone()).collect())
            .collect();
        let (c, used) = resolve(3, &gens.gens, 8, &[cols]).unwrap();
        assert_eq!(used[0], 5);
        assert_eq!(c.twists(1), BTreeMap::from([(2, 5)]));
        assert_eq!(c.twists(2), BTreeMap::from([(3, 5)]));
        assert_eq!(c.twists(3), BTreeMap::from([(5, 1)]));
        let ex = c.exactness_check(0, 8, &RankConfig::exact()).unwrap();
        assert!(ex.is_resolution());
        let hf = GradedIdeal::new(3, gens.gens.clone()).unwrap().hilbert_function(8);
        for k in 0..=8 {
            assert_eq!(ex.homology_at(0, k), hf[k as usize], "degree {k}");
        }
    }
}
