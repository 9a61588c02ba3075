//! The coefficients `P_j` of `(sum_i c_i x1^(b-i) x2^i)^a`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{binom, int, Rational};
use crate::polyring::{MultiPoly, PolyRing};

/// How `z_j` is sent into `Sym^a(Sym^b U)`.
///
/// `Coefficient`: `z_j -> P_j(c)`, the plain coefficient of `x1^(d-j) x2^j`.
/// `Form`: `z_j -> P_j(binom(b,i) y_i) / binom(d,j)`, which commutes with the
/// lowering operator `u_i -> (n-i) u_(i+1)` on both sides. The two differ by
/// diagonal rescalings of the variables, so ranks and Betti numbers agree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    #[default]
    Coefficient,
    Form,
}

impl Normalization {
    pub fn tag(self) -> &'static str {
        match self {
            Normalization::Coefficient => "coef",
            Normalization::Form => "form",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PowerGenerators {
    pub a: usize,
    pub b: usize,
    pub d: usize,
    pub normalization: Normalization,
    /// `P_0 .. P_d`, homogeneous of degree `a` in `b+1` variables.
    pub gens: Vec<MultiPoly>,
}

impl PowerGenerators {
    pub fn ring(&self) -> PolyRing {
        match self.normalization {
            Normalization::Coefficient => PolyRing::c_ring(self.b),
            Normalization::Form => PolyRing::new((0..=self.b).map(|i| format!("y{i}")).collect()).unwrap(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.b + 1
    }
}

pub fn power_generators(a: usize, b: usize) -> Result<PowerGenerators> {
    power_generators_with(a, b, Normalization::Coefficient)
}

pub fn power_generators_with(a: usize, b: usize, normalization: Normalization) -> Result<PowerGenerators> {
    if a == 0 || b == 0 {
        return Err(Error::arg("a and b must be positive"));
    }
    let n = b + 1;
    let d = a * b;
    let scale = |i: usize| match normalization {
        Normalization::Coefficient => int(1),
        Normalization::Form => int(binom(b, i) as i64),
    };
    // Coefficients of G indexed by the power of x2.
    let g: Vec<MultiPoly> = (0..=b).map(|i| MultiPoly::var(n, i).scale(&scale(i))).collect();
    let mut power: Vec<MultiPoly> = vec![MultiPoly::one(n)];
    for _ in 0..a {
        let mut next = vec![MultiPoly::zero(n); power.len() + b];
        for (s, p) in power.iter().enumerate() {
            for (i, gi) in g.iter().enumerate() {
                next[s + i] = next[s + i].add(&p.mul(gi));
            }
        }
        power = next;
    }
    if normalization == Normalization::Form {
        for (j, p) in power.iter_mut().enumerate() {
            *p = p.scale(&Rational::new(1.into(), (binom(d, j) as i64).into()));
        }
    }
    Ok(PowerGenerators {
        a,
        b,
        d,
        normalization,
        gens: power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::sl2rep::BinaryForm;

    fn c(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn linear_case() {
        let p = power_generators(1, 4).unwrap();
        for (j, g) in p.gens.iter().enumerate() {
            assert_eq!(g, &c(5, j));
        }
    }

    #[test]
    fn square_of_quadratic() {
        let p = power_generators(2, 2).unwrap();
        let two = int(2);
        let expect = [
            c(3, 0).pow(2),
            c(3, 0).mul(&c(3, 1)).scale(&two),
            c(3, 1).pow(2).add(&c(3, 0).mul(&c(3, 2)).scale(&two)),
            c(3, 1).mul(&c(3, 2)).scale(&two),
            c(3, 2).pow(2),
        ];
        assert_eq!(p.gens, expect);
        let q = power_generators(2, 1).unwrap();
        assert_eq!(q.gens, vec![c(2, 0).pow(2), c(2, 0).mul(&c(2, 1)).scale(&two), c(2, 1).pow(2)]);
    }

    #[test]
    fn form_normalization() {
        let p = power_generators_with(2, 2, Normalization::Form).unwrap();
        // z2 -> (2 y1^2 + y0 y2) / 3.
        let z2 = c(3, 1).pow(2).scale(&rat(2, 3)).add(&c(3, 0).mul(&c(3, 2)).scale(&rat(1, 3)));
        assert_eq!(p.gens[2], z2);
        assert_eq!(p.gens[0], c(3, 0).pow(2));
    }

    #[test]
    fn endpoints_and_degrees() {
        for a in 1..4 {
            for b in 1..4 {
                let p = power_generators(a, b).unwrap();
                assert_eq!(p.gens.len(), a * b + 1);
                assert_eq!(p.gens[0], c(b + 1, 0).pow(a));
                assert_eq!(p.gens[a * b], c(b + 1, b).pow(a));
                for (j, g) in p.gens.iter().enumerate() {
                    assert_eq!(g.homogeneous_degree(), Some(a));
                    assert_eq!(g.weight(), Some(j));
                }
            }
        }
        assert!(power_generators(0, 2).is_err());
    }

    #[test]
    fn matches_numeric_power() {
        let pt = [int(3), rat(-1, 2), int(7), int(-2)];
        let g = BinaryForm::new(pt.to_vec());
        let p = power_generators(3, 3).unwrap();
        let ga = g.pow(3);
        for (j, pj) in p.gens.iter().enumerate() {
            assert_eq!(pj.eval(&pt), ga.coeffs()[j]);
        }
    }
}
