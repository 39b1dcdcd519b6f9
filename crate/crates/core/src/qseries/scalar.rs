//! Exact scalars: big rationals and elements `a + b*w` of a quadratic field `Q(w)`, `w^2 = d`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-4/15"` and similar.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Is `d` a legal field discriminant: zero, or square-free and not 1.
pub fn is_valid_discriminant(d: i64) -> bool {
    if d == 0 {
        return true;
    }
    if d == 1 {
        return false;
    }
    let m = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Exact `t`-th root of a nonnegative integer, if it is a perfect power.
fn exact_root(n: &BigInt, t: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(t);
    if num_traits::pow(r.clone(), t as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `t`-th root of a rational (odd `t` admits negative input).
pub fn rational_root(x: &Rational, t: u32) -> Option<Rational> {
    if t == 1 {
        return Some(x.clone());
    }
    let neg = x.is_negative();
    if neg && t.is_multiple_of(2) {
        return None;
    }
    let n = exact_root(&x.numer().abs(), t)?;
    let d = exact_root(x.denom(), t)?;
    let r = Rational::new(n, d);
    Some(if neg { -r } else { r })
}

/// An element `rational_part + radical_part * w` of `Q(w)`, `w^2 = d`.
///
/// The discriminant lives in the surrounding series (or is passed explicitly),
/// so products and inverses take `d` as an argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadExtScalar {
    pub rational_part: Rational,
    pub radical_part: Rational,
}

impl QuadExtScalar {
    pub fn new(rational_part: Rational, radical_part: Rational) -> Self {
        QuadExtScalar { rational_part, radical_part }
    }

    pub fn from_rational(r: Rational) -> Self {
        QuadExtScalar { rational_part: r, radical_part: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// The generator `w` itself.
    pub fn omega() -> Self {
        QuadExtScalar { rational_part: Rational::zero(), radical_part: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero() && self.radical_part.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational_part.is_one() && self.radical_part.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radical_part.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadExtScalar {
            rational_part: &self.rational_part + &o.rational_part,
            radical_part: &self.radical_part + &o.radical_part,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadExtScalar {
            rational_part: &self.rational_part - &o.rational_part,
            radical_part: &self.radical_part - &o.radical_part,
        }
    }

    pub fn neg(&self) -> Self {
        QuadExtScalar { rational_part: -&self.rational_part, radical_part: -&self.radical_part }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadExtScalar { rational_part: &self.rational_part * r, radical_part: &self.radical_part * r }
    }

    pub fn mul(&self, o: &Self, d: i64) -> Self {
        if self.radical_part.is_zero() {
            return o.scale(&self.rational_part);
        }
        if o.radical_part.is_zero() {
            return self.scale(&o.rational_part);
        }
        let rr = &self.radical_part * &o.radical_part * int(d);
        QuadExtScalar {
            rational_part: &self.rational_part * &o.rational_part + rr,
            radical_part: &self.rational_part * &o.radical_part + &self.radical_part * &o.rational_part,
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self, d: i64) -> Rational {
        &self.rational_part * &self.rational_part - &self.radical_part * &self.radical_part * int(d)
    }

    pub fn conj(&self) -> Self {
        QuadExtScalar { rational_part: self.rational_part.clone(), radical_part: -&self.radical_part }
    }

    /// Multiplicative inverse, `None` when the norm vanishes.
    pub fn inv(&self, d: i64) -> Option<Self> {
        if self.radical_part.is_zero() {
            if self.rational_part.is_zero() {
                return None;
            }
            return Some(Self::from_rational(self.rational_part.recip()));
        }
        let n = self.norm(d);
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }

    pub fn pow(&self, e: u64, d: i64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, d);
            }
            base = base.mul(&base, d);
            e >>= 1;
        }
        acc
    }

    /// `self^e` when it lies in the field: integer powers always, roots of rationals
    /// when they are perfect powers, and square roots `k*w` when `self / d` is a square.
    pub fn rational_power(&self, e: &Rational, d: i64) -> Option<Self> {
        let s = e.numer().to_i64()?;
        let t = e.denom().to_u32()?;
        let base = if t == 1 {
            self.clone()
        } else {
            if !self.is_rational() {
                return None;
            }
            let c = &self.rational_part;
            if let Some(r) = rational_root(c, t) {
                Self::from_rational(r)
            } else if t == 2 && d != 0 {
                let k = rational_root(&(c / int(d)), 2)?;
                QuadExtScalar::new(Rational::zero(), k)
            } else {
                return None;
            }
        };
        if s >= 0 {
            Some(base.pow(s as u64, d))
        } else {
            Some(base.inv(d)?.pow(s.unsigned_abs(), d))
        }
    }
}

impl From<Rational> for QuadExtScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for QuadExtScalar {
    /// ASCII rendering: `a` or `a+b*w` / `a-b*w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical_part.is_zero() {
            write!(f, "{}", self.rational_part)
        } else if self.radical_part.is_negative() {
            write!(f, "{}-{}*w", self.rational_part, -&self.radical_part)
        } else {
            write!(f, "{}+{}*w", self.rational_part, self.radical_part)
        }
    }
}

/// Least common multiple of two positive integers.
pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Smallest integer `n` with `n >= x`.
pub fn ceil_rational(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Smallest integer `n` with `n >= x`, as `i64`.
pub fn ceil_i64(x: &Rational) -> i64 {
    ceil_rational(x).to_i64().expect("exponent out of i64 range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_multiplication() {
        // (1 + w)(1 - w) = 1 - d
        let a = QuadExtScalar::new(int(1), int(1));
        let b = a.conj();
        assert_eq!(a.mul(&b, -3), QuadExtScalar::from_int(4));
        assert_eq!(a.mul(&b, 2), QuadExtScalar::from_int(-1));
    }

    #[test]
    fn inverse_round_trip() {
        let a = QuadExtScalar::new(rat(3, 2), rat(-5, 7));
        for d in [-1, -3, 2] {
            let inv = a.inv(d).unwrap();
            assert!(a.mul(&inv, d).is_one());
        }
        assert!(QuadExtScalar::zero().inv(2).is_none());
    }

    #[test]
    fn roots() {
        let c = QuadExtScalar::from_rational(rat(16, 81));
        assert_eq!(c.rational_power(&rat(1, 4), 0), Some(QuadExtScalar::from_rational(rat(2, 3))));
        assert_eq!(c.rational_power(&rat(-1, 2), 0), Some(QuadExtScalar::from_rational(rat(9, 4))));
        let eight = QuadExtScalar::from_int(8);
        assert_eq!(eight.rational_power(&rat(1, 2), 2), Some(QuadExtScalar::new(int(0), int(2))));
        assert_eq!(eight.rational_power(&rat(1, 2), 0), None);
        assert_eq!(QuadExtScalar::from_int(-27).rational_power(&rat(1, 3), 0), Some(QuadExtScalar::from_int(-3)));
    }

    #[test]
    fn discriminants() {
        for d in [0, -1, -3, 2, 5, -15] {
            assert!(is_valid_discriminant(d));
        }
        for d in [1, 4, -4, 8, 12] {
            assert!(!is_valid_discriminant(d));
        }
    }

    #[test]
    fn display_is_ascii() {
        assert_eq!(QuadExtScalar::new(rat(1, 2), int(-3)).to_string(), "1/2-3*w");
        assert_eq!(QuadExtScalar::new(int(0), int(24)).to_string(), "0+24*w");
        assert_eq!(QuadExtScalar::from_int(-7).to_string(), "-7");
    }
}
