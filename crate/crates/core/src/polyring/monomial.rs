//! Exponent vectors, monomial bases of a fixed degree, and term orders.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::exactalg::binom;

/// Exponent vector. Variable `i` carries torus weight `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &e)| i * e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// `self / x_i`, if `x_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Largest variable index occurring, `None` for the unit monomial.
    pub fn last_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// Display with the given labels, e.g. `c0^2*c1`.
    pub fn render(&self, labels: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    labels[i].clone()
                } else {
                    format!("{}^{}", labels[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Graded lex with `x_0 > x_1 > ...`: the order of every `MonomialBasis`.
pub fn grlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0))
}

/// Graded reverse lex with `x_0 > x_1 > ...`.
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.0.iter().zip(&b.0).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    Grlex,
    Grevlex,
}

impl TermOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grlex => grlex_cmp(a, b),
            TermOrder::Grevlex => grevlex_cmp(a, b),
        }
    }
}

/// All monomials of one degree, lexicographically descending on exponents.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: usize,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> Self {
        let cap = if nvars == 0 { 1 } else { binom(nvars + degree - 1, degree) as usize };
        let mut monos = Vec::with_capacity(cap);
        let mut cur = vec![0u16; nvars];
        if nvars > 0 {
            fill(&mut cur, 0, degree, &mut monos);
        } else if degree == 0 {
            monos.push(Monomial(Vec::new()));
        }
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis {
            nvars,
            degree,
            monos,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monos[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Basis indices grouped by torus weight.
    pub fn weight_blocks(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, m) in self.monos.iter().enumerate() {
            out.entry(m.weight()).or_default().push(i);
        }
        out
    }
}

fn fill(cur: &mut Vec<u16>, pos: usize, left: usize, out: &mut Vec<Monomial>) {
    if pos + 1 == cur.len() {
        cur[pos] = left as u16;
        out.push(Monomial(cur.clone()));
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e as u16;
        fill(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes_and_order() {
        let b = MonomialBasis::new(3, 2);
        assert_eq!(b.len(), 6);
        let e: Vec<Vec<u16>> = b.monomials().iter().map(|m| m.0.clone()).collect();
        assert_eq!(
            e,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        for i in 1..b.len() {
            assert_eq!(grlex_cmp(b.get(i - 1), b.get(i)), Ordering::Greater);
        }
        assert_eq!(MonomialBasis::new(5, 4).len(), 70);
        assert_eq!(MonomialBasis::new(4, 0).len(), 1);
    }

    #[test]
    fn grevlex_differs_from_grlex() {
        let u0u2 = Monomial(vec![1, 0, 1]);
        let u1sq = Monomial(vec![0, 2, 0]);
        assert_eq!(grlex_cmp(&u0u2, &u1sq), Ordering::Greater);
        assert_eq!(grevlex_cmp(&u0u2, &u1sq), Ordering::Less);
    }

    #[test]
    fn weights_and_blocks() {
        let b = MonomialBasis::new(3, 2);
        let blocks = b.weight_blocks();
        assert_eq!(blocks.len(), 5);
        assert_eq!(blocks[&2].len(), 2);
        assert_eq!(Monomial(vec![0, 1, 3]).weight(), 7);
    }
}
