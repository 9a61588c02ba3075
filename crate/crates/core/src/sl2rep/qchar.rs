//! Characters specialized at `x1 -> q, x2 -> 1`, as integer polynomials in `q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sl2rep::plethysm::{PlethysmBasis, WedgeBasis};

/// `coeffs[k]` is the coefficient of `q^k`; no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QChar {
    coeffs: Vec<i64>,
}

impl QChar {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QChar { coeffs }
    }

    pub fn zero() -> Self {
        QChar { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QChar { coeffs: vec![1] }
    }

    /// Sum of `q^e` over the given exponents.
    pub fn from_exponents(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut c: Vec<i64> = Vec::new();
        for e in exps {
            if c.len() <= e {
                c.resize(e + 1, 0);
            }
            c[e] += 1;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero character.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn shift(&self, k: usize) -> QChar {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.coeffs);
        QChar { coeffs: c }
    }

    /// Divides out the lowest power of `q`.
    pub fn normalized(&self) -> QChar {
        match self.lowest_degree() {
            Some(l) => QChar::new(self.coeffs[l..].to_vec()),
            None => QChar::zero(),
        }
    }

    /// Symmetric about the midpoint of its support.
    pub fn is_palindromic(&self) -> bool {
        let n = self.normalized();
        n.coeffs.iter().eq(n.coeffs.iter().rev())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn mul(&self, other: &QChar) -> QChar {
        if self.is_zero() || other.is_zero() {
            return QChar::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        QChar::new(c)
    }

    /// Exact quotient, `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &QChar) -> Option<QChar> {
        let lead = *other.coeffs.last()?;
        let mut rem = self.coeffs.clone();
        if rem.len() < other.coeffs.len() {
            return rem.iter().all(|&c| c == 0).then(QChar::zero);
        }
        let qlen = rem.len() - other.coeffs.len() + 1;
        let mut quot = vec![0i64; qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + other.coeffs.len() - 1];
            if top % lead != 0 {
                return None;
            }
            let t = top / lead;
            quot[k] = t;
            for (j, y) in other.coeffs.iter().enumerate() {
                rem[k + j] -= t * y;
            }
        }
        rem.iter().all(|&c| c == 0).then(|| QChar::new(quot))
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: usize) -> QChar {
    QChar::new(vec![1; n])
}

pub fn q_factorial(n: usize) -> QChar {
    (1..=n).fold(QChar::one(), |acc, k| acc.mul(&q_int(k)))
}

/// `[n]_q! / ([m]_q! [n-m]_q!)`; zero when `m > n`.
pub fn q_binomial(n: usize, m: usize) -> QChar {
    if m > n {
        return QChar::zero();
    }
    let den = q_factorial(m).mul(&q_factorial(n - m));
    q_factorial(n)
        .div_exact(&den)
        .expect("q-binomial division is exact")
}

/// Both sides of the identity
/// `Λ^i Sym^(d+b-2) ⊗ Sym^(b-1-i) Sym^d  =  Sym^i Sym^d ⊗ Λ^(b-1-i) Sym^(d+b-2)`
/// as `SL_2` characters (each normalized to lowest degree 0), `d = ab`, each
/// obtained by enumerating basis weights.
pub fn char_identity_sides(i: usize, a: usize, b: usize) -> Result<(QChar, QChar)> {
    if a == 0 || b == 0 {
        return Err(Error::arg("a and b must be positive"));
    }
    if i > b - 1 {
        return Err(Error::arg(format!("index i = {i} must be at most b-1 = {}", b - 1)));
    }
    let d = a * b;
    let big = d + b - 2;
    let lhs = WedgeBasis::new(i, big)
        .character()
        .mul(&PlethysmBasis::new(b - 1 - i, d).character());
    let rhs = PlethysmBasis::new(i, d)
        .character()
        .mul(&WedgeBasis::new(b - 1 - i, big).character());
    Ok((lhs.normalized(), rhs.normalized()))
}

pub fn char_identity_check(i: usize, a: usize, b: usize) -> Result<bool> {
    let (l, r) = char_identity_sides(i, a, b)?;
    Ok(l == r && l.is_palindromic() && r.is_palindromic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::binom;
    use proptest::prelude::*;

    #[test]
    fn small_binomials() {
        assert_eq!(q_binomial(2, 1), QChar::new(vec![1, 1]));
        assert_eq!(q_binomial(4, 2), QChar::new(vec![1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(3, 5), QChar::zero());
        assert_eq!(q_binomial(8, 2), WedgeBasis::new(2, 7).character().normalized());
        assert_eq!(q_binomial(8, 2), PlethysmBasis::new(2, 6).character());
    }

    #[test]
    fn division() {
        let a = QChar::new(vec![1, 2, 1]);
        assert_eq!(a.div_exact(&QChar::new(vec![1, 1])), Some(QChar::new(vec![1, 1])));
        assert_eq!(a.div_exact(&QChar::new(vec![1, 0, 1])), None);
        assert_eq!(QChar::zero().div_exact(&a), Some(QChar::zero()));
        assert_eq!(a.div_exact(&QChar::zero()), None);
    }

    #[test]
    fn identity_examples() {
        assert!(char_identity_check(0, 1, 2).unwrap());
        assert!(char_identity_check(1, 2, 3).unwrap());
        assert!(char_identity_check(0, 3, 4).unwrap());
        assert!(char_identity_check(3, 2, 3).is_err());
        assert!(char_identity_check(0, 0, 3).is_err());
    }

    #[test]
    fn identity_is_not_vacuous() {
        // Swapping one Sym for a Λ on one side breaks the equality.
        let l = WedgeBasis::new(1, 5).character().mul(&PlethysmBasis::new(1, 4).character());
        let r = PlethysmBasis::new(1, 4).character().mul(&PlethysmBasis::new(2, 5).character());
        assert_ne!(l.normalized(), r.normalized());
    }

    #[test]
    fn serializes_as_list() {
        assert_eq!(serde_json::to_string(&q_binomial(3, 1)).unwrap(), "[1,1,1]");
    }

    proptest! {
        #[test]
        fn binomial_properties(n in 0usize..14, m in 0usize..14) {
            prop_assume!(m <= n);
            let c = q_binomial(n, m);
            prop_assert!(c.is_nonnegative());
            prop_assert!(c.is_palindromic());
            prop_assert_eq!(c.eval_at_one() as u64, binom(n, m));
            prop_assert_eq!(c.degree(), Some(m * (n - m)));
        }
    }
}
