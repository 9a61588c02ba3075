//! Sparse multivariate polynomials over the rationals.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{format_rational, parse_rational, Rational, SparseVec};
use crate::polyring::monomial::{Monomial, MonomialBasis, TermOrder};

/// Variable labels; every variable has degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    labels: Vec<String>,
}

impl PolyRing {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = labels.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != labels.len() {
            return Err(Error::arg("variable labels must be distinct"));
        }
        Ok(PolyRing { labels })
    }

    fn indexed(prefix: &str, n: usize) -> Self {
        PolyRing {
            labels: (0..n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    /// `Q[c_0..c_b]`, coordinates on `Sym^b U`.
    pub fn c_ring(b: usize) -> Self {
        Self::indexed("c", b + 1)
    }

    /// `Q[z_0..z_d]`, coordinates on `Sym^d U`.
    pub fn z_ring(d: usize) -> Self {
        Self::indexed("z", d + 1)
    }

    pub fn nvars(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MultiPoly {
            nvars: self.nvars,
            terms: acc,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> MultiPoly {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The common torus weight of all terms, if any.
    pub fn weight(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// ring of the images.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        let target = images.first().map_or(0, MultiPoly::nvars);
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(target), p.clone()]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Coordinates in a monomial basis; terms outside the basis are an error.
    pub fn coords(&self, basis: &MonomialBasis) -> Result<SparseVec<Rational>> {
        let mut v: SparseVec<Rational> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let i = basis
                .index_of(m)
                .ok_or_else(|| Error::arg("polynomial has a term outside the basis"))?;
            v.push((i, c.clone()));
        }
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    pub fn from_coords(basis: &MonomialBasis, v: &SparseVec<Rational>) -> MultiPoly {
        MultiPoly::from_terms(basis.nvars(), v.iter().map(|(i, c)| (basis.get(*i).clone(), c.clone())))
    }

    pub fn leading_monomial(&self, order: TermOrder) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| order.cmp(a, b))
    }

    pub fn render(&self, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = m.render(ring.labels());
            parts.push(if m.degree() == 0 {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -Rational::one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }

    pub fn to_json(&self, ring: &PolyRing) -> PolyJson {
        PolyJson {
            vars: ring.labels().to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.exps().to_vec(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<MultiPoly> {
        let n = j.vars.len();
        let mut p = MultiPoly::zero(n);
        for t in &j.terms {
            if t.exp.len() != n {
                return Err(Error::Parse("exponent length does not match vars".into()));
            }
            p.add_term(Monomial(t.exp.clone()), parse_rational(&t.coeff)?);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = PolyRing::indexed("x", self.nvars);
        f.write_str(&self.render(&ring))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u16>,
    pub coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn arithmetic() {
        let p = x(0).add(&x(1));
        let sq = p.pow(2);
        assert_eq!(sq.coeff(&Monomial(vec![1, 1, 0])), int(2));
        assert_eq!(sq.homogeneous_degree(), Some(2));
        assert!(sq.sub(&sq).is_zero());
        assert_eq!(p.add(&MultiPoly::one(3)).homogeneous_degree(), None);
        assert_eq!(sq.eval(&[int(1), int(2), int(5)]), int(9));
    }

    #[test]
    fn substitution() {
        // (x0 + x1)^2 at x0 -> x1 x2, x1 -> x2^2.
        let p = x(0).add(&x(1)).pow(2);
        let img = p.substitute(&[x(1).mul(&x(2)), x(2).mul(&x(2)), x(0)]);
        let expect = x(1).mul(&x(2)).add(&x(2).pow(2)).pow(2);
        assert_eq!(img, expect);
    }

    #[test]
    fn json_round_trip() {
        let ring = PolyRing::c_ring(2);
        let p = x(0).pow(2).scale(&rat(-3, 4)).add(&x(1).mul(&x(2)));
        let j = p.to_json(&ring);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"coeff\":\"-3/4\""));
        let back: PolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(MultiPoly::from_json(&back).unwrap(), p);
        assert_eq!(p.render(&ring), "-3/4*c0^2 + c1*c2");
    }

    #[test]
    fn coordinates() {
        let b = MonomialBasis::new(3, 2);
        let p = x(0).mul(&x(2)).sub(&x(1).pow(2));
        let v = p.coords(&b).unwrap();
        assert_eq!(v, vec![(2, int(1)), (3, int(-1))]);
        assert_eq!(MultiPoly::from_coords(&b, &v), p);
        assert!(x(0).coords(&b).is_err());
    }
}
