//! Scalars: arbitrary-precision rationals and residues modulo a word-sized prime.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serializes as `num/den` (the denominator is always written).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Reduces a rational modulo `p`; `None` if `p` divides the denominator.
pub fn rational_mod_p(q: &Rational, p: u64) -> Option<Fp> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let f = Fp::new(num, p);
    Some(f.mul(&Fp::new(den, p).inv()))
}

/// Elementary field operations used by the elimination routines.
///
/// Elements never need a standalone zero or one: sparse vectors omit zeros
/// and pivots are normalized by multiplying with their own inverse.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Residue modulo a prime below 2^63.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    pub value: u64,
    pub modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.value as u128 + o.value as u128;
        Fp {
            value: (s % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        let v = if self.value >= o.value {
            self.value - o.value
        } else {
            self.modulus - (o.value - self.value)
        };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp {
            value: mulmod(self.value, o.value, self.modulus),
            modulus: self.modulus,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero in F_{}", self.modulus);
        self.pow(self.modulus - 2)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Draws a uniformly random prime with exactly `bits` bits, 50 <= bits <= 62.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R, bits: u32) -> u64 {
    assert!((50..=62).contains(&bits), "prime size must be 50..=62 bits");
    let lo = 1u64 << (bits - 1);
    loop {
        let candidate = rng.gen_range(lo..(lo << 1)) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

/// Makes a rational vector integral and primitive: the gcd of the entries is 1
/// and the first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for q in v {
        lcm = lcm.lcm(q.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|q| (q * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    let first_negative = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if first_negative {
        g = -g;
    }
    for x in &mut ints {
        *x = &*x / &g;
    }
    ints
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient as u64; panics on overflow.
pub fn binom(n: usize, k: usize) -> u64 {
    binomial(n as i64, k as i64)
        .to_u64()
        .expect("binomial coefficient overflows u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rational_lowest_terms() {
        let q = rat(6, -4);
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&int(0)), "0/1");
        assert_eq!(parse_rational("-3/2").unwrap(), q);
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        // 2^61 - 1 is a Mersenne prime.
        assert!(is_prime_u64((1u64 << 61) - 1));
        // Carmichael number.
        assert!(!is_prime_u64(561));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for bits in [50, 56, 62] {
            let p = random_prime(&mut rng, bits);
            assert!(is_prime_u64(p));
            assert_eq!(64 - p.leading_zeros(), bits);
        }
    }

    #[test]
    fn modular_reduction() {
        let p = 1_000_000_007;
        let half = rational_mod_p(&rat(1, 2), p).unwrap();
        assert_eq!(half.mul(&Fp::new(2, p)).value, 1);
        assert_eq!(rational_mod_p(&rat(-1, 1), p).unwrap().value, p - 1);
        assert!(rational_mod_p(&rat(1, p as i64), p).is_none());
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[rat(-1, 2), rat(1, 3), int(0)]);
        assert_eq!(v, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(9, 3), 84);
        assert_eq!(binom(13, 4), 715);
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
