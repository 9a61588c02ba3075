//! Binary forms and the Jacobian transvectant.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactalg::{format_rational, int, parse_rational, Rational};

/// Degree-`n` form; `coeffs[i]` multiplies `x1^(n-i) x2^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a form of degree n has n+1 coefficients");
        BinaryForm { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        BinaryForm {
            coeffs: vec![Rational::zero(); n + 1],
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    /// `x1^(n-i) x2^i`.
    pub fn monomial(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.coeffs[i] = int(1);
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree());
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree());
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, c: &Rational) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = Self::zero(self.degree() + other.degree());
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] += x * y;
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> BinaryForm {
        let mut out = BinaryForm::from_ints(&[1]);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `None` for constants.
    pub fn d_x1(&self) -> Option<BinaryForm> {
        let n = self.degree();
        (n > 0).then(|| BinaryForm::new((0..n).map(|i| &self.coeffs[i] * int((n - i) as i64)).collect()))
    }

    pub fn d_x2(&self) -> Option<BinaryForm> {
        let n = self.degree();
        (n > 0).then(|| BinaryForm::new((1..=n).map(|i| &self.coeffs[i] * int(i as i64)).collect()))
    }

    /// `F(p x1 + q x2, r x1 + s x2)`.
    pub fn substitute(&self, g: &[Rational; 4]) -> BinaryForm {
        let [p, q, r, s] = g;
        let l1 = BinaryForm::new(vec![p.clone(), q.clone()]);
        let l2 = BinaryForm::new(vec![r.clone(), s.clone()]);
        let n = self.degree();
        let mut out = Self::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&l1.pow(n - i).mul(&l2.pow(i)).scale(c));
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings(s: &[String]) -> Result<Self> {
        Ok(Self::new(s.iter().map(|t| parse_rational(t)).collect::<Result<_>>()?))
    }
}

impl Serialize for BinaryForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        if v.is_empty() {
            return Err(serde::de::Error::custom("empty coefficient list"));
        }
        BinaryForm::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

/// `F_x1 G_x2 - F_x2 G_x1`, of degree `d + b - 2`.
pub fn transvectant_omega(f: &BinaryForm, g: &BinaryForm) -> BinaryForm {
    let out_deg = (f.degree() + g.degree()).saturating_sub(2);
    match (f.d_x1(), f.d_x2(), g.d_x1(), g.d_x2()) {
        (Some(f1), Some(f2), Some(g1), Some(g2)) => f1.mul(&g2).sub(&f2.mul(&g1)),
        _ => BinaryForm::zero(out_deg),
    }
}
