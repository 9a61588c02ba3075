//! Numerators of Hilbert series: `(1-z)^n HS(z)` from Hilbert function values.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactalg::binomial;

/// `binom(n, k)` as a signed integer; zero outside `0 <= k <= n`.
pub fn binom_i(n: i64, k: i64) -> i128 {
    binomial(n, k).to_i128().expect("binomial coefficient overflows i128")
}

/// Coefficients of `(1-z)^nvars * Σ_k hf[k] z^k`, lowest degree first, with
/// trailing zeros removed. The last `nvars + 1` coefficients inside the
/// supplied window must vanish, certifying that `hf` agrees with a polynomial
/// of degree `< nvars` on its tail.
pub fn hilbert_numerator(hf: &[i128], nvars: usize) -> Result<Vec<i128>> {
    let n = nvars as i64;
    if hf.len() < nvars + 2 {
        return Err(Error::arg(format!("need at least {} Hilbert function values", nvars + 2)));
    }
    let mut out: Vec<i128> = (0..hf.len())
        .map(|m| {
            (0..=nvars.min(m))
                .map(|t| {
                    let s = if t % 2 == 0 { 1 } else { -1 };
                    s * binom_i(n, t as i64) * hf[m - t]
                })
                .sum()
        })
        .collect();
    if out[hf.len() - nvars - 1..].iter().any(|&c| c != 0) {
        return Err(Error::NonPolynomialTail);
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

/// Closed-form Hilbert function of `I(X)`: zero through degree `b`, then
/// `binom(d+k, d) - binom(ak+b, b)`.
pub fn ix_hilbert_function(a: usize, b: usize, k: usize) -> i128 {
    if k <= b {
        return 0;
    }
    let d = (a * b) as i64;
    binom_i(d + k as i64, d) - binom_i((a * k + b) as i64, b as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_ideal_of_x_22() {
        let hf: Vec<i128> = (0..16).map(|k| ix_hilbert_function(2, 2, k)).collect();
        let num = hilbert_numerator(&hf, 5).unwrap();
        assert_eq!(num, vec![0, 0, 0, 7, -10, 5, -1]);
    }

    #[test]
    fn powers_of_the_maximal_ideal_in_two_vars() {
        for d in 1..6i64 {
            let hf: Vec<i128> = (0..12).map(|k| if k < d { 0 } else { k as i128 + 1 }).collect();
            let num = hilbert_numerator(&hf, 2).unwrap();
            let nz: Vec<i128> = num.into_iter().filter(|&c| c != 0).collect();
            assert_eq!(nz, vec![d as i128 + 1, -(d as i128)]);
        }
    }

    #[test]
    fn exponential_tail_is_rejected() {
        let hf: Vec<i128> = (0..12).map(|k| 1i128 << k).collect();
        assert!(matches!(hilbert_numerator(&hf, 2), Err(Error::NonPolynomialTail)));
    }
}
