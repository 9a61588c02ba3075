//! Elimination: echelon forms, kernels, and rank in exact or modular mode.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::matrix::{sparse_axpy, sparse_scale, ExactMatrix, SparseVec};
use crate::exactalg::scalar::{primitive_integer_vector, rational_mod_p, Field, Fp, Rational};

/// Incrementally built echelon basis. Every stored row has a leading 1 at its
/// pivot column and zeros at all pivot columns that existed when it was added.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    rows: BTreeMap<usize, SparseVec<T>>,
}

impl<T: Field> Default for Echelon<T> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<T: Field> Echelon<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    /// Clears every pivot column of `v`.
    pub fn reduce(&self, mut v: SparseVec<T>) -> SparseVec<T> {
        let mut k = 0;
        while k < v.len() {
            let (c, x) = (v[k].0, v[k].1.clone());
            match self.rows.get(&c) {
                Some(row) => v = sparse_axpy(&v, &x, row),
                None => k += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns the new pivot column if the rank grew.
    pub fn insert(&mut self, v: SparseVec<T>) -> Option<usize> {
        let v = self.reduce(v);
        let (pivot, lead) = v.first().map(|(c, x)| (*c, x.clone()))?;
        let v = sparse_scale(&lead.inv(), &v);
        self.rows.insert(pivot, v);
        Some(pivot)
    }

    /// Stored rows keyed by pivot column.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec<T>)> + '_ {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec<T>> {
        self.rows.get(&pivot)
    }

    /// Fully reduced copy, still usable for insertion and reduction.
    pub fn reduced(self) -> Self {
        Echelon {
            rows: self.into_rref().into_iter().collect(),
        }
    }

    /// Wraps rows that are already in reduced echelon form.
    pub fn from_rref_rows(rows: impl IntoIterator<Item = SparseVec<T>>) -> Self {
        Echelon {
            rows: rows.into_iter().filter(|r| !r.is_empty()).map(|r| (r[0].0, r)).collect(),
        }
    }

    /// The reduced row echelon form: rows sorted by pivot, each row zero at
    /// every other pivot column.
    pub fn into_rref(self) -> Vec<(usize, SparseVec<T>)> {
        let mut done: Echelon<T> = Echelon::new();
        for (p, row) in self.rows.into_iter().rev() {
            let (head, tail) = row.split_at(1);
            let mut reduced = head.to_vec();
            reduced.extend(done.reduce(tail.to_vec()));
            done.rows.insert(p, reduced);
        }
        done.rows.into_iter().collect()
    }
}

/// Rank by leading-entry elimination over any field.
pub fn echelon_rank<T: Field>(rows: impl IntoIterator<Item = SparseVec<T>>) -> usize {
    let mut piv: BTreeMap<usize, SparseVec<T>> = BTreeMap::new();
    for mut v in rows {
        loop {
            let Some((c, x)) = v.first().map(|(c, x)| (*c, x.clone())) else {
                break;
            };
            match piv.get(&c) {
                Some(row) => v = sparse_axpy(&v, &x, row),
                None => {
                    let v = sparse_scale(&x.inv(), &v);
                    piv.insert(c, v);
                    break;
                }
            }
        }
    }
    piv.len()
}

fn primitive_int_row(v: &SparseVec<Rational>) -> SparseVec<BigInt> {
    let mut l = BigInt::one();
    for (_, q) in v {
        l = l.lcm(q.denom());
    }
    let mut out: SparseVec<BigInt> = v.iter().map(|(c, q)| (*c, (q * &l).to_integer())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut SparseVec<BigInt>) {
    let mut g = BigInt::zero();
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Exact rank over `Q` by fraction-free (integer-preserving) elimination:
/// rows are scaled to primitive integer vectors and combined by cross
/// multiplication, so no rational arithmetic happens inside the loop.
pub fn fraction_free_rank(rows: &[SparseVec<Rational>]) -> usize {
    let mut piv: BTreeMap<usize, SparseVec<BigInt>> = BTreeMap::new();
    for r in rows {
        let mut v = primitive_int_row(r);
        while let Some((c, lead)) = v.first().map(|(c, x)| (*c, x.clone())) {
            match piv.get(&c) {
                Some(p) => {
                    let g = p[0].1.gcd(&lead);
                    let sv = &p[0].1 / &g;
                    let sp = &lead / &g;
                    v = cross_combine(&v, &sv, p, &sp);
                    make_primitive(&mut v);
                }
                None => {
                    piv.insert(c, v);
                    break;
                }
            }
        }
    }
    piv.len()
}

/// `sa * a - sb * b`
fn cross_combine(
    a: &SparseVec<BigInt>,
    sa: &BigInt,
    b: &SparseVec<BigInt>,
    sb: &BigInt,
) -> SparseVec<BigInt> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ai = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let bj = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ai < bj {
            out.push((ai, sa * &a[i].1));
            i += 1;
        } else if bj < ai {
            out.push((bj, -(sb * &b[j].1)));
            j += 1;
        } else {
            let v = sa * &a[i].1 - sb * &b[j].1;
            if !v.is_zero() {
                out.push((ai, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form with recorded pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

/// Deterministic Gauss–Jordan elimination with leftmost pivots.
pub fn rref(m: &ExactMatrix) -> Rref {
    let mut e = Echelon::new();
    for r in m.row_data() {
        e.insert(r.clone());
    }
    let rows = e.into_rref();
    let pivots = rows.iter().map(|(p, _)| *p).collect();
    Rref {
        matrix: ExactMatrix::from_sparse_rows(m.cols(), rows.into_iter().map(|(_, r)| r).collect()),
        pivots,
    }
}

/// Basis of the right kernel; each vector is a primitive integer vector whose
/// first nonzero entry is positive. One vector per non-pivot column, in
/// increasing column order.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    let r = rref(m);
    let pivot_set: BTreeSet<usize> = r.pivots.iter().copied().collect();
    let zero = Rational::zero();
    let one = Rational::one();
    (0..m.cols())
        .filter(|c| !pivot_set.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); m.cols()];
            v[free] = one.clone();
            for (row, &p) in r.matrix.row_data().iter().zip(&r.pivots) {
                if let Ok(k) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    v[p] = -row[k].1.clone();
                }
            }
            primitive_integer_vector(&v)
        })
        .collect()
}

/// How ranks are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Exact,
    Modular,
    /// Exact up to the size threshold, modular beyond it.
    Auto,
}

impl std::str::FromStr for RankMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(RankMode::Exact),
            "modular" => Ok(RankMode::Modular),
            "auto" => Ok(RankMode::Auto),
            other => Err(Error::arg(format!("unknown rank mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    Modular { primes: Vec<u64> },
}

impl Provenance {
    pub fn is_exact(&self) -> bool {
        matches!(self, Provenance::Exact)
    }

    /// Combines provenances of quantities that enter the same result.
    pub fn join(&self, other: &Provenance) -> Provenance {
        match (self, other) {
            (Provenance::Exact, p) | (p, Provenance::Exact) => p.clone(),
            (Provenance::Modular { primes: a }, Provenance::Modular { primes: b }) => {
                let mut ps: Vec<u64> = a.iter().chain(b).copied().collect();
                ps.sort_unstable();
                ps.dedup();
                Provenance::Modular { primes: ps }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOutcome {
    pub rank: usize,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct RankConfig {
    pub mode: RankMode,
    /// Candidate primes, distinct; modular mode uses the first `trials` that
    /// do not divide any denominator.
    pub primes: Vec<u64>,
    pub trials: usize,
    /// `Auto` switches to modular when `max(rows, cols)` exceeds this.
    pub exact_threshold: usize,
    /// Upper bound on `rows * cols` for a single elimination.
    pub budget_entries: u128,
}

impl RankConfig {
    pub fn exact() -> Self {
        RankConfig {
            mode: RankMode::Exact,
            primes: Vec::new(),
            trials: 2,
            exact_threshold: 2000,
            budget_entries: u128::MAX,
        }
    }

    pub fn check_budget(&self, what: &str, rows: usize, cols: usize) -> Result<()> {
        let needed = rows as u128 * cols as u128;
        if needed > self.budget_entries {
            return Err(Error::Resource {
                what: what.to_string(),
                needed,
                budget: self.budget_entries,
            });
        }
        Ok(())
    }
}

/// Rank of a matrix given by its rows.
pub fn rank_of_rows(rows: &[SparseVec<Rational>], cfg: &RankConfig) -> Result<RankOutcome> {
    let nonzero: Vec<&SparseVec<Rational>> = rows.iter().filter(|r| !r.is_empty()).collect();
    if nonzero.is_empty() {
        return Ok(RankOutcome {
            rank: 0,
            provenance: Provenance::Exact,
        });
    }
    let ncols = nonzero
        .iter()
        .flat_map(|r| r.iter().map(|(c, _)| *c))
        .collect::<BTreeSet<_>>()
        .len();
    let nrows = nonzero.len();
    cfg.check_budget("rank", nrows, ncols)?;
    let use_modular = match cfg.mode {
        RankMode::Exact => false,
        RankMode::Modular => true,
        RankMode::Auto => nrows.max(ncols) > cfg.exact_threshold,
    };
    if use_modular {
        if let Some(out) = modular_rank(&nonzero, cfg) {
            return Ok(out);
        }
    }
    let owned: Vec<SparseVec<Rational>> = nonzero.into_iter().cloned().collect();
    Ok(RankOutcome {
        rank: fraction_free_rank(&owned),
        provenance: Provenance::Exact,
    })
}

/// Ranks modulo `trials` distinct primes. `None` means the trials disagreed
/// (or too few usable primes), and the caller must fall back to exact mode.
fn modular_rank(rows: &[&SparseVec<Rational>], cfg: &RankConfig) -> Option<RankOutcome> {
    let mut used = Vec::new();
    let mut ranks = Vec::new();
    for &p in &cfg.primes {
        if used.len() == cfg.trials.max(2) {
            break;
        }
        let reduced: Option<Vec<SparseVec<Fp>>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, q)| rational_mod_p(q, p).map(|f| (*c, f)))
                    .filter(|e| e.is_none_or(|(_, f)| f.value != 0))
                    .collect()
            })
            .collect();
        let Some(reduced) = reduced else { continue };
        ranks.push(echelon_rank(reduced));
        used.push(p);
    }
    if used.len() < cfg.trials.max(2) || ranks.iter().any(|&r| r != ranks[0]) {
        return None;
    }
    Some(RankOutcome {
        rank: ranks[0],
        provenance: Provenance::Modular { primes: used },
    })
}

pub fn rank(m: &ExactMatrix, cfg: &RankConfig) -> Result<RankOutcome> {
    cfg.check_budget("rank", m.rows(), m.cols())?;
    rank_of_rows(m.row_data(), cfg)
}

/// Exact rank of a matrix, the entry point used by tests and small checks.
pub fn exact_rank(m: &ExactMatrix) -> usize {
    fraction_free_rank(m.row_data())
}

/// Signed integer vector check helper: `m * v == 0`.
pub fn annihilates(m: &ExactMatrix, v: &[BigInt]) -> bool {
    let sv: SparseVec<Rational> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, Rational::from_integer(x.clone())))
        .collect();
    m.mul_vec(&sv).is_empty()
}

/// True if `v` is primitive with positive leading entry.
pub fn is_primitive(v: &[BigInt]) -> bool {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    g.is_one() && v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}
