//! Linear syzygies among the power generators.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{kernel_basis, ExactMatrix, Rational};
use crate::fhmaps::generators::{power_generators, PowerGenerators};
use crate::fhmaps::omega::LinearFormMatrix;
use crate::polyring::{Monomial, MonomialBasis, MultiPoly};

/// `(d+1) x (d+b-1)` matrix of linear forms in `c_0..c_b` whose columns
/// are the linear syzygies of `P_0..P_d`, sorted by torus weight.
#[derive(Clone, Debug)]
pub struct PhiMatrix {
    pub a: usize,
    pub b: usize,
    pub matrix: LinearFormMatrix,
    /// Torus weight of each column.
    pub weights: Vec<usize>,
    /// Rank of the kernel sheaf of the presentation.
    pub kernel_rank: usize,
    /// Twist of its determinant, `-(d + b - a - 1)`.
    pub kernel_det_twist: i64,
}

impl PhiMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// `sum_j P_j Φ[j][c]` for every column.
    pub fn syzygy_residues(&self, gens: &PowerGenerators) -> Vec<MultiPoly> {
        (0..self.cols())
            .map(|c| {
                (0..self.rows()).fold(MultiPoly::zero(gens.nvars()), |acc, j| {
                    acc.add(&gens.gens[j].mul(self.matrix.entry(j, c)))
                })
            })
            .collect()
    }

    /// For `b = 2`: column scalings `s` making the matrix skew after pairing
    /// row `j` with the column of weight `d + 1 - j`. `None` if no scaling
    /// with all `s_j` nonzero exists.
    pub fn skew_scaling(&self) -> Option<Vec<BigInt>> {
        let n = self.rows();
        if self.cols() != n {
            return None;
        }
        let d = n - 1;
        let mut pair = Vec::with_capacity(n);
        for j in 0..n {
            let w = d + 1 - j;
            let hits: Vec<usize> = (0..n).filter(|&c| self.weights[c] == w).collect();
            if hits.len() != 1 {
                return None;
            }
            pair.push(hits[0]);
        }
        let nv = self.matrix.nvars();
        let coeff = |r: usize, c: usize, l: usize| self.matrix.entry(r, c).coeff(&Monomial::var(nv, l));
        // One equation per (j <= j', l): s_j' M[j][pair j'] + s_j M[j'][pair j] = 0 at c_l.
        let mut eqs: Vec<Vec<Rational>> = Vec::new();
        for j in 0..n {
            for jp in j..n {
                for l in 0..nv {
                    let mut row = vec![Rational::zero(); n];
                    row[jp] += coeff(j, pair[jp], l);
                    row[j] += coeff(jp, pair[j], l);
                    if row.iter().any(|x| !x.is_zero()) {
                        eqs.push(row);
                    }
                }
            }
        }
        let sys = if eqs.is_empty() {
            ExactMatrix::zeros(0, n)
        } else {
            ExactMatrix::from_dense(eqs)
        };
        let ker = kernel_basis(&sys);
        let mut s = vec![BigInt::zero(); n];
        for (t, v) in ker.iter().enumerate() {
            for (x, y) in s.iter_mut().zip(v) {
                *x += y * BigInt::from(t + 1);
            }
        }
        (!ker.is_empty() && s.iter().all(|x| !x.is_zero())).then_some(s)
    }
}

/// Builds `Φ` from the kernel of `(j, l) -> c_l P_j` into degree `a+1`,
/// one torus weight `w = j + l` at a time.
pub fn phi_matrix(a: usize, b: usize) -> Result<PhiMatrix> {
    let gens = power_generators(a, b)?;
    let d = gens.d;
    let nv = b + 1;
    let target = MonomialBasis::new(nv, a + 1);
    let mut cols: Vec<(usize, Vec<MultiPoly>)> = Vec::new();
    for w in 0..=d + b {
        let pairs: Vec<(usize, usize)> = (0..=d)
            .filter_map(|j| w.checked_sub(j).filter(|&l| l <= b).map(|l| (j, l)))
            .collect();
        let products = pairs
            .iter()
            .map(|&(j, l)| gens.gens[j].mul(&MultiPoly::var(nv, l)).coords(&target))
            .collect::<Result<Vec<_>>>()?;
        let m = ExactMatrix::from_sparse_cols(target.len(), products);
        for v in kernel_basis(&m) {
            let mut col = vec![MultiPoly::zero(nv); d + 1];
            for (&(j, l), x) in pairs.iter().zip(&v) {
                if !x.is_zero() {
                    col[j] = col[j].add(&MultiPoly::var(nv, l).scale(&Rational::from_integer(x.clone())));
                }
            }
            cols.push((w, col));
        }
    }
    if cols.len() != d + b - 1 {
        return Err(Error::Convention(format!(
            "linear syzygy space has dimension {}, expected d+b-1 = {}",
            cols.len(),
            d + b - 1
        )));
    }
    let weights: Vec<usize> = cols.iter().map(|c| c.0).collect();
    let entries: Vec<Vec<MultiPoly>> = (0..=d).map(|j| cols.iter().map(|c| c.1[j].clone()).collect()).collect();
    Ok(PhiMatrix {
        a,
        b,
        matrix: LinearFormMatrix::new(nv, entries)?,
        weights,
        kernel_rank: b - 1,
        kernel_det_twist: -((d + b - a - 1) as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::is_primitive;

    #[test]
    fn shapes_and_syzygies() {
        for (a, b) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (2, 3), (3, 3), (2, 4)] {
            let phi = phi_matrix(a, b).unwrap();
            let d = a * b;
            assert_eq!((phi.rows(), phi.cols()), (d + 1, d + b - 1));
            let gens = power_generators(a, b).unwrap();
            assert!(phi.syzygy_residues(&gens).iter().all(MultiPoly::is_zero));
            let mut w = phi.weights.clone();
            w.sort_unstable();
            assert_eq!(w, phi.weights);
        }
    }

    #[test]
    fn linear_forms_have_too_many_syzygies() {
        // a = 1, b = 3: the syzygies of c_0..c_3 are all of Λ^2, dimension 6 > d+b-1.
        assert!(matches!(phi_matrix(1, 3), Err(Error::Convention(_))));
    }

    #[test]
    fn hilbert_burch_for_b_1() {
        // m^a in two variables: consecutive generators, syzygies c1 e_j - c0 e_(j+1) up to scale.
        let phi = phi_matrix(3, 1).unwrap();
        assert_eq!((phi.rows(), phi.cols()), (4, 3));
        for c in 0..3 {
            let nonzero: Vec<usize> = (0..4).filter(|&r| !phi.matrix.entry(r, c).is_zero()).collect();
            assert_eq!(nonzero, vec![c, c + 1]);
        }
    }

    #[test]
    fn columns_are_primitive() {
        let phi = phi_matrix(2, 3).unwrap();
        let nv = 4;
        for c in 0..phi.cols() {
            let mut v = Vec::new();
            for j in 0..phi.rows() {
                for l in 0..nv {
                    let x = phi.matrix.entry(j, c).coeff(&Monomial::var(nv, l));
                    if !x.is_zero() {
                        assert!(x.is_integer());
                        v.push(x.to_integer());
                    }
                }
            }
            assert!(is_primitive(&v));
        }
    }

    #[test]
    fn b_2_is_skew_symmetrizable() {
        for a in 1..=4 {
            let phi = phi_matrix(a, 2).unwrap();
            let s = phi.skew_scaling().expect("skew scaling");
            assert_eq!(s.len(), 2 * a + 1);
        }
        // b = 3 is not square.
        assert!(phi_matrix(2, 3).unwrap().skew_scaling().is_none());
    }
}
