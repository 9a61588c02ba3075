//! Scalars by which an equivariant map acts on matched highest-weight vectors.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{int, rat, ExactMatrix, Rational};
use crate::polyring::MultiPoly;
use crate::sl2rep::plethysm::PlethysmBasis;

/// Reference triple `(a_8, a_4, a_0)` of the classical Hermite isomorphism
/// `Sym^2 Sym^4 U -> Sym^4 Sym^2 U`. Stored, not computed.
pub fn classical_hermite_triple_24() -> [Rational; 3] {
    [int(1), rat(1, 4), rat(1, 2)]
}

/// `(v_8, v_4, v_0)` in `Sym^2(Sym^4 U)` (variables `z_0..z_4`) and
/// `(w_8, w_4, w_0)` in `Sym^4(Sym^2 U)` (variables `y_0..y_2`).
pub fn hw_vectors_2_2() -> (Vec<MultiPoly>, Vec<MultiPoly>) {
    let z = |i: usize| MultiPoly::var(5, i);
    let y = |i: usize| MultiPoly::var(3, i);
    let v8 = z(0).pow(2);
    let v4 = z(0).mul(&z(2)).sub(&z(1).pow(2));
    let v0 = z(0)
        .mul(&z(4))
        .sub(&z(1).mul(&z(3)).scale(&int(4)))
        .add(&z(2).pow(2).scale(&int(3)));
    let w8 = y(0).pow(4);
    let w4 = y(0).pow(2).mul(&y(1).pow(2)).sub(&y(0).pow(3).mul(&y(2)));
    let w0 = y(1)
        .pow(4)
        .sub(&y(0).mul(&y(1).pow(2)).mul(&y(2)).scale(&int(2)))
        .add(&y(0).pow(2).mul(&y(2).pow(2)));
    (vec![v8, v4, v0], vec![w8, w4, w0])
}

/// For each pair `(v, w)` returns `λ` with `θ(v) = λ w`, where `θ` has
/// columns indexed by `source` and rows by `target`.
pub fn hw_triple(
    theta: &ExactMatrix,
    source: &PlethysmBasis,
    target: &PlethysmBasis,
    pairs: &[(MultiPoly, MultiPoly)],
) -> Result<Vec<Rational>> {
    if theta.cols() != source.len() || theta.rows() != target.len() {
        return Err(Error::arg("map shape does not match the given bases"));
    }
    let mut out = Vec::with_capacity(pairs.len());
    for (k, (v, w)) in pairs.iter().enumerate() {
        let image = theta.mul_vec(&v.coords(source.monomials())?);
        let w = w.coords(target.monomials())?;
        let Some((lead_col, lead)) = w.first().cloned() else {
            return Err(Error::arg("target vector is zero"));
        };
        let lambda = image
            .iter()
            .find(|(c, _)| *c == lead_col)
            .map(|(_, x)| x / &lead)
            .unwrap_or_else(Rational::zero);
        let scaled: Vec<(usize, Rational)> = if lambda.is_zero() {
            Vec::new()
        } else {
            w.iter().map(|(c, x)| (*c, x * &lambda)).collect()
        };
        if scaled != image {
            return Err(Error::Equivariance(format!(
                "image of highest-weight vector {k} is not a multiple of its partner"
            )));
        }
        out.push(lambda);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::kernel_basis;

    #[test]
    fn identity_gives_ones() {
        let s = PlethysmBasis::new(2, 4);
        let (v, _) = hw_vectors_2_2();
        let pairs: Vec<_> = v.iter().map(|x| (x.clone(), x.clone())).collect();
        let t = hw_triple(&ExactMatrix::identity(15), &s, &s, &pairs).unwrap();
        assert_eq!(t, vec![int(1), int(1), int(1)]);
    }

    #[test]
    fn stored_vectors_are_highest_weight() {
        let (v, w) = hw_vectors_2_2();
        let s = PlethysmBasis::new(2, 4);
        let t = PlethysmBasis::new(4, 2);
        for x in &v {
            assert!(s.raise(&x.coords(s.monomials()).unwrap()).is_empty());
        }
        for x in &w {
            assert!(t.raise(&x.coords(t.monomials()).unwrap()).is_empty());
        }
    }

    #[test]
    fn non_proportional_images_are_rejected() {
        let s = PlethysmBasis::new(2, 4);
        let (v, _) = hw_vectors_2_2();
        let pairs = vec![(v[1].clone(), v[2].clone())];
        let err = hw_triple(&ExactMatrix::identity(15), &s, &s, &pairs).unwrap_err();
        assert!(matches!(err, Error::Equivariance(_)));
        assert!(kernel_basis(&ExactMatrix::identity(3)).is_empty());
    }
}
