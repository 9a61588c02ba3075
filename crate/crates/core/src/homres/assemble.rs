//! Resolutions of `I_{a,b}^{b-1}` assembled from the linear syzygy matrix `φ`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactalg::{Echelon, RankConfig};
use crate::fhmaps::{phi_matrix, power_generators};
use crate::homres::complex::{resolve, ComplexReport, ExplicitComplex};
use crate::polyring::{GradedIdeal, MonomialBasis, MultiPoly};

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Minimal resolution of `I_{a,b}^{b-1}` through degree `k_max`. The first
/// syzygies are seeded with `φ_k · P_L`: for each column `k` of `φ` and each
/// multiset `L` of `b-2` generators, `Σ_j φ_{jk} e_{{j} ∪ L}`. Later terms
/// come from kernel completion. Returns the complex and the number of seeds
/// kept at each position.
pub fn phi_resolution(a: usize, b: usize, k_max: i64) -> Result<(ExplicitComplex, Vec<usize>)> {
    if b < 2 {
        return Err(Error::arg("needs b >= 2"));
    }
    let gens = power_generators(a, b)?;
    let phi = phi_matrix(a, b)?;
    let n = b + 1;
    let combos = multisets(gens.d + 1, b - 1);
    let basis = MonomialBasis::new(n, a * (b - 1));
    let mut span = Echelon::new();
    let mut products = Vec::with_capacity(combos.len());
    for c in &combos {
        let p = c.iter().fold(MultiPoly::one(n), |acc, &j| acc.mul(&gens.gens[j]));
        if span.insert(p.coords(&basis)?).is_none() {
            return Err(Error::Convention(format!(
                "products of {} generators are dependent for (a, b) = ({a}, {b})",
                b - 1
            )));
        }
        products.push(p);
    }
    let index: HashMap<&Vec<usize>, usize> = combos.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut seeds = Vec::new();
    for l in multisets(gens.d + 1, b - 2) {
        for k in 0..phi.cols() {
            let mut col = vec![MultiPoly::zero(n); combos.len()];
            for j in 0..phi.rows() {
                let e = phi.matrix.entry(j, k);
                if e.is_zero() {
                    continue;
                }
                let mut key = l.clone();
                key.push(j);
                key.sort_unstable();
                let r = index[&key];
                col[r] = col[r].add(e);
            }
            if col.iter().any(|e| !e.is_zero()) {
                seeds.push(col);
            }
        }
    }
    resolve(n, &products, k_max, &[seeds])
}

/// Builds `phi_resolution(a, b, d + b)` and checks it degreewise: acyclic
/// away from `F_0 = S`, where homology is `S/I^{b-1}`.
pub fn phi_resolution_report(a: usize, b: usize, cfg: &RankConfig) -> Result<ComplexReport> {
    let k_max = (a * b + b) as i64;
    let (c, _) = phi_resolution(a, b, k_max)?;
    let ex = c.exactness_check(0, k_max, cfg)?;
    let gens = power_generators(a, b)?;
    let ideal = GradedIdeal::new(b + 1, gens.gens)?.power(b - 1)?;
    let hf = ideal.hilbert_function(k_max as usize);
    let expected = hf.iter().enumerate().map(|(k, &h)| (k as i64, h)).collect();
    Ok(ComplexReport::new(&format!("phi-resolution a={a} b={b}"), &c, ex, expected))
}
