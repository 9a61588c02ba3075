//! The Jacobian matrix of linear forms and its maximal minors.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{binom, exact_rank, int, rank_of_rows, ExactMatrix, Provenance, Rational, SparseVec};
use crate::fhmaps::foulkes::foulkes_howe_with;
use crate::fhmaps::generators::Normalization;
use crate::polyring::{MonomialBasis, MultiPoly};
use crate::report::Status;
use crate::session::Session;
use crate::sl2rep::{transvectant_omega, BinaryForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormMatrix {
    nvars: usize,
    entries: Vec<Vec<MultiPoly>>,
}

impl LinearFormMatrix {
    pub fn new(nvars: usize, entries: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        for row in &entries {
            if row.len() != cols {
                return Err(Error::arg("ragged matrix"));
            }
            for e in row {
                if !e.is_zero() && e.homogeneous_degree() != Some(1) {
                    return Err(Error::arg("entries must be linear forms"));
                }
            }
        }
        Ok(LinearFormMatrix { nvars, entries })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r][c]
    }

    pub fn evaluate(&self, point: &[Rational]) -> ExactMatrix {
        ExactMatrix::from_dense(
            self.entries
                .iter()
                .map(|row| row.iter().map(|e| e.eval(point)).collect())
                .collect(),
        )
    }

    /// Determinant of the square submatrix on `rows` (all columns).
    pub fn minor(&self, rows: &[usize]) -> MultiPoly {
        let cols: Vec<usize> = (0..self.cols()).collect();
        self.det(rows, &cols)
    }

    fn det(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        if cols.is_empty() {
            return MultiPoly::one(self.nvars);
        }
        let c = cols[0];
        let rest = &cols[1..];
        let mut out = MultiPoly::zero(self.nvars);
        for (t, &r) in rows.iter().enumerate() {
            let e = &self.entries[r][c];
            if e.is_zero() {
                continue;
            }
            let sub: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let term = e.mul(&self.det(&sub, rest));
            out = if t % 2 == 0 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }
}

/// Entry `(r, j)` is the coefficient of `x1^(d+b-2-r) x2^r` in `ω(F, u_j)`,
/// where `F = sum_i z_i x1^(d-i) x2^i` and `u_j = x1^(b-j) x2^j`.
pub fn omega_matrix(a: usize, b: usize) -> Result<LinearFormMatrix> {
    if a == 0 || b == 0 {
        return Err(Error::arg("a and b must be positive"));
    }
    let d = a * b;
    let nrows = d + b - 1;
    let mut entries = vec![vec![MultiPoly::zero(d + 1); b + 1]; nrows];
    for i in 0..=d {
        for (j, col) in (0..=b).map(|j| (j, BinaryForm::monomial(b, j))) {
            let w = transvectant_omega(&BinaryForm::monomial(d, i), &col);
            for (r, c) in w.coeffs().iter().enumerate() {
                if r < nrows {
                    entries[r][j] = entries[r][j].add(&MultiPoly::var(d + 1, i).scale(c));
                }
            }
        }
    }
    LinearFormMatrix::new(d + 1, entries)
}

/// All maximal minors, row subsets in lexicographic order.
pub fn maximal_minors(m: &LinearFormMatrix) -> Result<Vec<MultiPoly>> {
    if m.rows() < m.cols() {
        return Err(Error::arg("need at least as many rows as columns"));
    }
    let mut subsets = Vec::new();
    let mut cur = Vec::new();
    row_subsets(m.rows(), m.cols(), 0, &mut cur, &mut subsets);
    Ok(subsets.par_iter().map(|s| m.minor(s)).collect())
}

fn row_subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        row_subsets(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Rank of `ω` at `z = p`.
pub fn omega_rank_at(m: &LinearFormMatrix, point: &[Rational]) -> usize {
    exact_rank(&m.evaluate(point))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    pub trials: usize,
    pub full_rank: usize,
}

/// Evaluates `ω` at random integer points with entries in `[-1000, 1000]`.
pub fn genericity_check<R: Rng>(a: usize, b: usize, trials: usize, rng: &mut R) -> Result<GenericityReport> {
    let m = omega_matrix(a, b)?;
    let mut full_rank = 0;
    for _ in 0..trials {
        let p: Vec<Rational> = (0..m.nvars()).map(|_| int(rng.gen_range(-1000..=1000))).collect();
        if omega_rank_at(&m, &p) == b + 1 {
            full_rank += 1;
        }
    }
    Ok(GenericityReport { trials, full_rank })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorsReport {
    pub a: usize,
    pub b: usize,
    pub minors: usize,
    pub span_dim: Option<usize>,
    pub kernel_dim: Option<usize>,
    /// `binom(d+b+1, b+1) - binom(d+a+b, b)`.
    pub expected_kernel_dim: usize,
    pub minors_in_kernel: Option<bool>,
    pub provenance: Option<Provenance>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Whether the maximal minors of `ω` span `ker α_(b+1)` in degree `b+1`.
pub fn minors_generate_check(a: usize, b: usize, session: &Session) -> Result<MinorsReport> {
    if a == 0 || b == 0 {
        return Err(Error::arg("a and b must be positive"));
    }
    let d = a * b;
    let expected = (binom(d + b + 1, b + 1) - binom(d + a + b, b)) as usize;
    let omega = omega_matrix(a, b)?;
    let minors = maximal_minors(&omega)?;
    let mut report = MinorsReport {
        a,
        b,
        minors: minors.len(),
        span_dim: None,
        kernel_dim: None,
        expected_kernel_dim: expected,
        minors_in_kernel: None,
        provenance: None,
        status: Status::Inconclusive,
        note: None,
    };
    let run = || -> Result<(usize, usize, bool, Provenance)> {
        let fh = foulkes_howe_with(a, b, b + 1, Normalization::Coefficient, session)?;
        let basis: &MonomialBasis = fh.source.monomials();
        let coords: Vec<SparseVec<Rational>> = minors.iter().map(|p| p.coords(basis)).collect::<Result<_>>()?;
        let in_kernel = coords.iter().all(|v| fh.matrix.mul_vec(v).is_empty());
        let mut by_weight: std::collections::BTreeMap<usize, Vec<SparseVec<Rational>>> = Default::default();
        for (p, v) in minors.iter().zip(coords) {
            if let Some(w) = p.weight() {
                by_weight.entry(w).or_default().push(v);
            }
        }
        let mut span = 0;
        let mut prov = Provenance::Exact;
        for rows in by_weight.values() {
            let o = rank_of_rows(rows, &session.rank)?;
            span += o.rank;
            prov = prov.join(&o.provenance);
        }
        let r = fh.rank(&session.rank)?;
        Ok((span, basis.len() - r.rank, in_kernel, prov.join(&r.provenance)))
    };
    match run() {
        Ok((span, ker, in_kernel, prov)) => {
            report.span_dim = Some(span);
            report.kernel_dim = Some(ker);
            report.minors_in_kernel = Some(in_kernel);
            report.provenance = Some(prov);
            report.status = Status::from_bool(in_kernel && span == ker && ker == expected);
        }
        Err(e @ Error::Resource { .. }) => report.note = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fhmaps::generators::power_generators;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn entry_formula() {
        // Entry (r, j) is (d j - i b) z_i with i = r + 1 - j.
        for (a, b) in [(2, 2), (3, 2), (2, 3)] {
            let d = a * b;
            let m = omega_matrix(a, b).unwrap();
            assert_eq!((m.rows(), m.cols()), (d + b - 1, b + 1));
            for r in 0..m.rows() {
                for j in 0..=b {
                    let i = (r + 1) as i64 - j as i64;
                    let expect = if (0..=d as i64).contains(&i) {
                        MultiPoly::var(d + 1, i as usize).scale(&int(d as i64 * j as i64 - i * b as i64))
                    } else {
                        MultiPoly::zero(d + 1)
                    };
                    assert_eq!(m.entry(r, j), &expect);
                }
            }
        }
    }

    #[test]
    fn rank_drops_on_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (a, b) in [(2, 2), (3, 2), (2, 3)] {
            let m = omega_matrix(a, b).unwrap();
            for _ in 0..5 {
                let g = BinaryForm::new((0..=b).map(|_| int(rng.gen_range(-9..=9))).collect());
                assert!(omega_rank_at(&m, g.pow(a).coeffs()) <= b);
            }
        }
        let r = genericity_check(2, 2, 20, &mut rng).unwrap();
        assert_eq!(r.full_rank, 20);
    }

    #[test]
    fn minors_of_2_2() {
        let m = omega_matrix(2, 2).unwrap();
        let minors = maximal_minors(&m).unwrap();
        assert_eq!(minors.len(), 10);
        let gens = power_generators(2, 2).unwrap();
        for p in &minors {
            assert_eq!(p.homogeneous_degree().unwrap_or(3), 3);
            assert!(p.substitute(&gens.gens).is_zero());
        }
        let r = minors_generate_check(2, 2, &Session::exact()).unwrap();
        assert_eq!((r.span_dim, r.kernel_dim), (Some(7), Some(7)));
        assert_eq!(r.status, Status::Verified);
    }

    #[test]
    fn rational_normal_curve() {
        // b = 1: the 2-minors span the quadrics through the conic.
        let r = minors_generate_check(2, 1, &Session::exact()).unwrap();
        assert_eq!((r.span_dim, r.kernel_dim), (Some(1), Some(1)));
        assert_eq!(r.status, Status::Verified);
    }

    #[test]
    fn laplace_matches_known_determinant() {
        let x = |i| MultiPoly::var(4, i);
        let m = LinearFormMatrix::new(4, vec![vec![x(0), x(1)], vec![x(2), x(3)]]).unwrap();
        assert_eq!(m.minor(&[0, 1]), x(0).mul(&x(3)).sub(&x(1).mul(&x(2))));
    }
}
