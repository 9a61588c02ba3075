//! Monomial ideals: minimal generators, standard monomials, and `J_{a,b}`.

use crate::error::{Error, Result};
use crate::polyring::monomial::{Monomial, TermOrder};
use crate::polyring::poly::MultiPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Keeps only generators not divisible by another one; sorted.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        let mut gens = gens;
        gens.sort_by(|x, y| y.degree().cmp(&x.degree()).reverse().then_with(|| y.0.cmp(&x.0)));
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for g in gens {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        MonomialIdeal { nvars, gens: minimal }
    }

    /// Leading monomials of `polys` under `order`.
    pub fn from_leading_terms(nvars: usize, polys: &[MultiPoly], order: TermOrder) -> Self {
        Self::new(nvars, polys.iter().filter_map(|p| p.leading_monomial(order).cloned()).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Standard monomials per degree `0..=k_max`, each degree grown from the
    /// previous one by multiplying with variables at or after the last one.
    pub fn standard_monomials(&self, k_max: usize) -> Vec<Vec<Monomial>> {
        let mut out: Vec<Vec<Monomial>> = Vec::with_capacity(k_max + 1);
        let one = Monomial::one(self.nvars);
        out.push(if self.contains(&one) { vec![] } else { vec![one] });
        for _ in 1..=k_max {
            let prev = out.last().unwrap();
            let mut next = Vec::new();
            for m in prev {
                let start = m.last_var().unwrap_or(0);
                for i in start..self.nvars {
                    let n = m.mul_var(i);
                    if !self.contains(&n) {
                        next.push(n);
                    }
                }
            }
            out.push(next);
        }
        out
    }

    /// `HF(S/J)(k)` for `k = 0..=k_max`.
    pub fn quotient_hf(&self, k_max: usize) -> Vec<usize> {
        self.standard_monomials(k_max).iter().map(Vec::len).collect()
    }

    /// Largest degree with a standard monomial, for Artinian quotients.
    /// `None` if standard monomials persist through degree `bound`.
    pub fn socle_degree(&self, bound: usize) -> Option<usize> {
        let hf = self.quotient_hf(bound + 1);
        if hf[bound + 1] != 0 {
            return None;
        }
        hf.iter().rposition(|&h| h > 0)
    }
}

/// `{u_i^a} ∪ {u_i^j u_{i+1}^{a-j} : 1 <= j <= a-1}` in `Q[u_0..u_b]`.
pub fn initial_ideal_jab(a: usize, b: usize) -> Result<MonomialIdeal> {
    if a == 0 || b == 0 {
        return Err(Error::arg("a and b must be positive"));
    }
    let n = b + 1;
    let mut gens = Vec::new();
    for i in 0..=b {
        let mut e = vec![0u16; n];
        e[i] = a as u16;
        gens.push(Monomial(e));
    }
    for i in 0..b {
        for j in 1..a {
            let mut e = vec![0u16; n];
            e[i] = j as u16;
            e[i + 1] = (a - j) as u16;
            gens.push(Monomial(e));
        }
    }
    Ok(MonomialIdeal::new(n, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_equals_one_is_maximal() {
        let j = initial_ideal_jab(1, 4).unwrap();
        assert_eq!(j.generators().len(), 5);
        assert!(j.generators().iter().all(|m| m.degree() == 1));
        assert_eq!(j.quotient_hf(3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn j22_by_hand() {
        let j = initial_ideal_jab(2, 2).unwrap();
        let mut g: Vec<Vec<u16>> = j.generators().iter().map(|m| m.0.clone()).collect();
        g.sort();
        assert_eq!(g, vec![vec![0, 0, 2], vec![0, 1, 1], vec![0, 2, 0], vec![1, 1, 0], vec![2, 0, 0]]);
        // 1; u0, u1, u2; u0 u2.
        assert_eq!(j.quotient_hf(4), vec![1, 3, 1, 0, 0]);
        let top = &j.standard_monomials(2)[2];
        assert_eq!(top, &vec![Monomial(vec![1, 0, 1])]);
    }

    #[test]
    fn j23_top_degree() {
        let j = initial_ideal_jab(2, 3).unwrap();
        assert_eq!(j.socle_degree(6), Some(2));
        assert!(j.standard_monomials(2)[2].contains(&Monomial(vec![1, 0, 1, 0])));
    }

    #[test]
    fn minimalization() {
        let j = MonomialIdeal::new(2, vec![Monomial(vec![1, 0]), Monomial(vec![2, 1]), Monomial(vec![1, 0])]);
        assert_eq!(j.generators(), &[Monomial(vec![1, 0])]);
        assert_eq!(j.quotient_hf(3), vec![1, 1, 1, 1]);
        assert_eq!(j.socle_degree(5), None);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        use crate::polyring::monomial::MonomialBasis;
        let j = initial_ideal_jab(3, 3).unwrap();
        let hf = j.quotient_hf(7);
        for (k, h) in hf.into_iter().enumerate() {
            let brute = MonomialBasis::new(4, k).monomials().iter().filter(|m| !j.contains(m)).count();
            assert_eq!(h, brute);
        }
    }
}
