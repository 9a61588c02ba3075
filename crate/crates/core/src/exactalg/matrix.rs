//! Sparse row-major matrices over a [`Field`].

use std::collections::BTreeMap;

use crate::exactalg::scalar::{rational_mod_p, Field, Fp, Rational};

/// Sparse vector: `(index, value)` pairs, strictly increasing index, no zeros.
pub type SparseVec<T> = Vec<(usize, T)>;

/// Hint for serialization; the in-memory form is always sparse rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Storage {
    Dense,
    Sparse,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<T>>,
}

pub type ExactMatrix = Matrix<Rational>;
pub type PrimeMatrix = Matrix<Fp>;

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds from rows of sparse entries; zero entries are dropped and
    /// duplicate indices summed.
    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseVec<T>>) -> Self {
        let data = rows
            .into_iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, T> = BTreeMap::new();
                for (c, v) in r {
                    assert!(c < cols, "column {c} out of range {cols}");
                    match acc.remove(&c) {
                        Some(old) => {
                            let s = old.add(&v);
                            if !s.is_zero() {
                                acc.insert(c, s);
                            }
                        }
                        None if !v.is_zero() => {
                            acc.insert(c, v);
                        }
                        None => {}
                    }
                }
                acc.into_iter().collect()
            })
            .collect::<Vec<_>>();
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: Vec<(usize, usize, T)>) -> Self {
        let mut buckets: Vec<SparseVec<T>> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows, "row {r} out of range {rows}");
            buckets[r].push((c, v));
        }
        Self::from_sparse_rows(cols, buckets)
    }

    /// Builds a `rows x cols` matrix from sparse columns.
    pub fn from_sparse_cols(rows: usize, cols: Vec<SparseVec<T>>) -> Self {
        let ncols = cols.len();
        let mut entries = Vec::new();
        for (c, col) in cols.into_iter().enumerate() {
            for (r, v) in col {
                entries.push((r, c, v));
            }
        }
        Self::from_triplets(rows, ncols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<T> {
        &self.data[r]
    }

    pub fn row_data(&self) -> &[SparseVec<T>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec<T>> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        self.data[r]
            .binary_search_by_key(&c, |(i, _)| *i)
            .ok()
            .map(|k| &self.data[r][k].1)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut out: Vec<SparseVec<T>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[*c].push((r, v.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data: out,
        }
    }

    /// Column `c` as a sparse vector over row indices.
    pub fn column(&self, c: usize) -> SparseVec<T> {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                row.binary_search_by_key(&c, |(i, _)| *i)
                    .ok()
                    .map(|k| (r, row[k].1.clone()))
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &SparseVec<T>) -> SparseVec<T> {
        let lookup: BTreeMap<usize, &T> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: Option<T> = None;
            for (c, a) in row {
                if let Some(x) = lookup.get(c) {
                    let t = a.mul(x);
                    acc = Some(match acc {
                        Some(s) => s.add(&t),
                        None => t,
                    });
                }
            }
            if let Some(s) = acc {
                if !s.is_zero() {
                    out.push((r, s));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let rows = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, T> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        let t = a.mul(b);
                        match acc.remove(c) {
                            Some(s) => {
                                let s = s.add(&t);
                                if !s.is_zero() {
                                    acc.insert(*c, s);
                                }
                            }
                            None => {
                                acc.insert(*c, t);
                            }
                        }
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: other.cols,
            data: rows,
        }
    }

    /// Restriction to the given rows and columns, renumbered in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let data = rows
            .iter()
            .map(|&r| {
                let mut v: SparseVec<T> = self.data[r]
                    .iter()
                    .filter_map(|(c, x)| col_pos.get(c).map(|&i| (i, x.clone())))
                    .collect();
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect();
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }
}

impl Matrix<Rational> {
    pub fn identity(n: usize) -> Self {
        let one = Rational::from_integer(1.into());
        Matrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, one.clone())]).collect(),
        }
    }

    pub fn from_dense(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        let sparse: Vec<SparseVec<Rational>> = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !Field::is_zero(x))
                    .collect()
            })
            .collect();
        Matrix {
            rows: sparse.len(),
            cols,
            data: sparse,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let zero = Rational::from_integer(0.into());
        self.data
            .iter()
            .map(|row| {
                let mut d = vec![zero.clone(); self.cols];
                for (c, v) in row {
                    d[*c] = v.clone();
                }
                d
            })
            .collect()
    }

    /// Reduction modulo `p`, or `None` when `p` divides some denominator.
    pub fn mod_p(&self, p: u64) -> Option<PrimeMatrix> {
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut out = Vec::with_capacity(row.len());
            for (c, q) in row {
                let f = rational_mod_p(q, p)?;
                if f.value != 0 {
                    out.push((*c, f));
                }
            }
            data.push(out);
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// `a - c * b` for sparse vectors.
pub fn sparse_axpy<T: Field>(a: &SparseVec<T>, c: &T, b: &SparseVec<T>) -> SparseVec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ai = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let bj = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ai < bj {
            out.push(a[i].clone());
            i += 1;
        } else if bj < ai {
            out.push((bj, c.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((ai, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale<T: Field>(c: &T, v: &SparseVec<T>) -> SparseVec<T> {
    v.iter().map(|(i, x)| (*i, c.mul(x))).collect()
}

/// Normalizes and sorts an unsorted list of entries, summing duplicates.
pub fn sparse_collect<T: Field>(entries: impl IntoIterator<Item = (usize, T)>) -> SparseVec<T> {
    let mut acc: BTreeMap<usize, T> = BTreeMap::new();
    for (i, v) in entries {
        match acc.remove(&i) {
            Some(s) => {
                let s = s.add(&v);
                if !s.is_zero() {
                    acc.insert(i, s);
                }
            }
            None if !v.is_zero() => {
                acc.insert(i, v);
            }
            None => {}
        }
    }
    acc.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    #[test]
    fn product_and_transpose() {
        let a = ExactMatrix::from_dense(vec![vec![int(1), int(2)], vec![int(0), int(3)]]);
        let b = ExactMatrix::from_dense(vec![vec![int(1)], vec![int(-1)]]);
        let c = a.mul(&b);
        assert_eq!(c.to_dense(), vec![vec![int(-1)], vec![int(-3)]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.column(1), vec![(0, int(2)), (1, int(3))]);
        assert_eq!(a.mul_vec(&vec![(1, int(1))]), vec![(0, int(2)), (1, int(3))]);
    }

    #[test]
    fn duplicates_are_summed() {
        let m = ExactMatrix::from_triplets(1, 2, vec![(0, 0, int(1)), (0, 0, int(-1)), (0, 1, int(2))]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 1), Some(&int(2)));
    }
}
