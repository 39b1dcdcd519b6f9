use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::qseries::{int, parse_rational, Rational};

/// A weight function on residues mod `N`, written out as `w(0), ..., w(N-1)`.
/// Need not be a character.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    values: Vec<Rational>,
}

impl WeightVector {
    pub fn new(values: Vec<Rational>) -> Option<Self> {
        if values.is_empty() {
            None
        } else {
            Some(WeightVector { values })
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        WeightVector { values: values.iter().map(|&v| int(v)).collect() }
    }

    /// The all-ones weight of modulus 1, so `sigma(k, n, ones) = sigma_k(n)`.
    pub fn ones() -> Self {
        Self::from_ints(&[1])
    }

    /// Parses a comma-separated list such as `"0,1,-1"` or `"-4/15, 1"`.
    pub fn parse(s: &str) -> Option<Self> {
        let vals: Option<Vec<Rational>> = s.split(',').map(parse_rational).collect();
        Self::new(vals?)
    }

    pub fn modulus(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `w(n mod N)` for any integer `n`.
    pub fn at(&self, n: i64) -> &Rational {
        &self.values[n.rem_euclid(self.values.len() as i64) as usize]
    }
}

/// Prime factorization by trial division, as `(p, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

fn power(d: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(d), k as usize)
}

/// `sigma_k(n; w) = sum over d | n of w(d mod N) d^k`.
pub fn sigma(k: u32, n: u64, w: &WeightVector) -> Rational {
    assert!(n > 0, "sigma needs n >= 1");
    let mut acc = Rational::zero();
    for d in divisors(n) {
        let c = w.at(d as i64);
        if !c.is_zero() {
            acc += c * Rational::from_integer(power(d, k));
        }
    }
    acc
}

/// Conjugate sum: the weight is applied to the codivisor, `sum w((n/d) mod N) d^k`.
pub fn sigma_conj(k: u32, n: u64, w: &WeightVector) -> Rational {
    assert!(n > 0, "sigma_conj needs n >= 1");
    let mut acc = Rational::zero();
    for d in divisors(n) {
        let c = w.at((n / d) as i64);
        if !c.is_zero() {
            acc += c * Rational::from_integer(power(d, k));
        }
    }
    acc
}

/// `sigma_k(n; w)` (or the conjugate) for every `n <= nmax`, by sieving; index 0 is zero.
pub fn sigma_table(k: u32, w: &WeightVector, conjugate: bool, nmax: usize) -> Vec<Rational> {
    let mut acc = vec![BigInt::zero(); nmax + 1];
    let mut den = BigInt::one();
    for v in w.values() {
        den = num_integer::Integer::lcm(&den, v.denom());
    }
    let scaled: Vec<BigInt> = w.values().iter().map(|v| v.numer() * (&den / v.denom())).collect();
    let m = scaled.len();
    for d in 1..=nmax {
        let dk = power(d as u64, k);
        for (j, n) in (d..=nmax).step_by(d).enumerate() {
            let residue = if conjugate { (j + 1) % m } else { d % m };
            if !scaled[residue].is_zero() {
                acc[n] += &scaled[residue] * &dk;
            }
        }
    }
    acc.into_iter().map(|a| Rational::new(a, den.clone())).collect()
}
