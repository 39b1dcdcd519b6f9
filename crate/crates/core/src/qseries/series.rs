use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{ceil_i64, int, is_valid_discriminant, rat, QuadExtScalar, Rational};

/// Every exponent denominator must divide this.
pub const MAX_EXPONENT_DENOMINATOR: u64 = 48;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("field mismatch: d={0} vs d={1}")]
    FieldMismatch(i64, i64),
    #[error("invalid discriminant d={0} (must be 0 or square-free)")]
    InvalidDiscriminant(i64),
    #[error("division by a zero series or non-invertible leading coefficient")]
    DivisionByZero,
    #[error("root extraction: {0}")]
    RootExtraction(String),
    #[error("composition domain: {0}")]
    CompositionDomain(String),
    #[error("exponent denominator {0} does not divide 48")]
    ExponentDenominator(u64),
}

type Result<T> = std::result::Result<T, SeriesError>;

/// A truncated Puiseux series `sum c_n q^(n/D) + O(q^P)` over `Q(w)`, `w^2 = d`.
///
/// Stored exponents are strictly below the precision `P`, stored coefficients are
/// nonzero, and `D` is kept minimal. `P` is measured in whole powers of `q`.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    d: i64,
    denom: u64,
    terms: BTreeMap<i64, QuadExtScalar>,
    precision: Rational,
}

fn check_denominator(den: u64) -> Result<u64> {
    if MAX_EXPONENT_DENOMINATOR.is_multiple_of(den) {
        Ok(den)
    } else {
        Err(SeriesError::ExponentDenominator(den))
    }
}

/// Coefficients scaled to integers over one common denominator.
struct Integerized {
    keys: Vec<i64>,
    re: Vec<BigInt>,
    rad: Vec<BigInt>,
    has_rad: bool,
    den: BigInt,
}

/// `(m, c, g, u, slots)` from [`PuiseuxSeries::unit_decomposition`].
type UnitParts = (i64, QuadExtScalar, i64, Vec<(usize, QuadExtScalar)>, usize);

impl PuiseuxSeries {
    fn raw(d: i64, denom: u64, terms: BTreeMap<i64, QuadExtScalar>, precision: Rational) -> Self {
        let mut s = PuiseuxSeries { d, denom, terms, precision };
        s.normalize();
        s
    }

    /// Builds a series from `(n, c)` pairs meaning `c q^(n/denom)`. Zero coefficients and
    /// exponents at or beyond `precision` are dropped; repeated keys are summed.
    pub fn from_terms<I>(d: i64, denom: u64, terms: I, precision: Rational) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, QuadExtScalar)>,
    {
        if !is_valid_discriminant(d) {
            return Err(SeriesError::InvalidDiscriminant(d));
        }
        check_denominator(denom)?;
        let mut map: BTreeMap<i64, QuadExtScalar> = BTreeMap::new();
        for (n, c) in terms {
            if d == 0 && !c.is_rational() {
                return Err(SeriesError::FieldMismatch(0, d));
            }
            let e = map.entry(n).or_default();
            *e = e.add(&c);
        }
        Ok(Self::raw(d, denom, map, precision))
    }

    /// Like [`from_terms`](Self::from_terms) with rational coefficients.
    pub fn from_rationals<I>(d: i64, denom: u64, terms: I, precision: Rational) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        Self::from_terms(d, denom, terms.into_iter().map(|(n, c)| (n, QuadExtScalar::from_rational(c))), precision)
    }

    pub fn zero(d: i64, precision: Rational) -> Self {
        Self::raw(d, 1, BTreeMap::new(), precision)
    }

    pub fn constant(c: QuadExtScalar, d: i64, precision: Rational) -> Self {
        Self::raw(d, 1, BTreeMap::from([(0, c)]), precision)
    }

    pub fn one(d: i64, precision: Rational) -> Self {
        Self::constant(QuadExtScalar::one(), d, precision)
    }

    /// `c q^e` for a rational exponent `e` whose denominator divides 48.
    pub fn monomial(c: QuadExtScalar, e: &Rational, d: i64, precision: Rational) -> Result<Self> {
        let den = check_denominator(e.denom().to_u64().ok_or(SeriesError::ExponentDenominator(0))?)?;
        let n = e.numer().to_i64().expect("exponent out of range");
        Self::from_terms(d, den, [(n, c)], precision)
    }

    /// Builds a series from `(e, c)` pairs with rational exponents `e`; repeated exponents are summed.
    pub fn from_exponents<I>(d: i64, terms: I, precision: Rational) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, QuadExtScalar)>,
    {
        let terms: Vec<(Rational, QuadExtScalar)> = terms.into_iter().collect();
        let mut den = 1u64;
        for (e, _) in &terms {
            den = den.lcm(&e.denom().to_u64().ok_or(SeriesError::ExponentDenominator(0))?);
        }
        check_denominator(den)?;
        let scaled = terms.into_iter().map(|(e, c)| {
            let n = (e * int(den as i64)).to_integer().to_i64().expect("exponent out of range");
            (n, c)
        });
        Self::from_terms(d, den, scaled, precision)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn precision(&self) -> &Rational {
        &self.precision
    }

    /// Current (minimal) exponent denominator `D`.
    pub fn exponent_denominator(&self) -> u64 {
        self.denom
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// No stored coefficients: the series is `O(q^P)`.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every radical part vanishes.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(QuadExtScalar::is_rational)
    }

    fn exponent(&self, n: i64) -> Rational {
        rat(n, self.denom as i64)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (Rational, &QuadExtScalar)> + '_ {
        self.terms.iter().map(move |(&n, c)| (self.exponent(n), c))
    }

    pub fn coeff(&self, e: &Rational) -> QuadExtScalar {
        let scaled = e * int(self.denom as i64);
        if !scaled.is_integer() {
            return QuadExtScalar::zero();
        }
        let n = scaled.to_integer().to_i64().expect("exponent out of range");
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    /// Rational part of the coefficient of `q^n`, for integer `n`.
    pub fn coeff_at(&self, n: i64) -> Rational {
        self.coeff(&int(n)).rational_part
    }

    /// Exponent of the first stored term.
    pub fn valuation(&self) -> Option<Rational> {
        self.terms.keys().next().map(|&n| self.exponent(n))
    }

    /// Exponent below which the series is known to vanish: the valuation, or `P` if empty.
    pub fn order(&self) -> Rational {
        self.valuation().unwrap_or_else(|| self.precision.clone())
    }

    pub fn leading(&self) -> Option<(Rational, &QuadExtScalar)> {
        self.terms.iter().next().map(|(&n, c)| (self.exponent(n), c))
    }

    fn normalize(&mut self) {
        let cutoff = ceil_i64(&(&self.precision * int(self.denom as i64)));
        self.terms.retain(|&n, c| n < cutoff && !c.is_zero());
        let mut g = self.denom as i64;
        for &n in self.terms.keys() {
            g = g.gcd(&n);
            if g == 1 {
                return;
            }
        }
        if self.terms.is_empty() {
            self.denom = 1;
            return;
        }
        if g > 1 {
            self.denom /= g as u64;
            self.terms = std::mem::take(&mut self.terms).into_iter().map(|(n, c)| (n / g, c)).collect();
        }
    }

    fn common_field(&self, o: &Self) -> Result<i64> {
        if self.d == o.d {
            Ok(self.d)
        } else {
            Err(SeriesError::FieldMismatch(self.d, o.d))
        }
    }

    fn keys_at(&self, den: u64) -> impl Iterator<Item = (i64, &QuadExtScalar)> + '_ {
        let f = (den / self.denom) as i64;
        self.terms.iter().map(move |(&n, c)| (n * f, c))
    }

    /// Re-tags the series with discriminant `d`; fails if radical parts would change meaning.
    pub fn with_field(&self, d: i64) -> Result<Self> {
        if d == self.d {
            return Ok(self.clone());
        }
        if !is_valid_discriminant(d) {
            return Err(SeriesError::InvalidDiscriminant(d));
        }
        if !self.is_rational() {
            return Err(SeriesError::FieldMismatch(self.d, d));
        }
        let mut s = self.clone();
        s.d = d;
        Ok(s)
    }

    /// Same series with precision lowered to `min(P, p)`.
    pub fn truncate(&self, p: &Rational) -> Self {
        if *p >= self.precision {
            return self.clone();
        }
        Self::raw(self.d, self.denom, self.terms.clone(), p.clone())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let d = self.common_field(o)?;
        let den = check_denominator(self.denom.lcm(&o.denom))?;
        let mut terms: BTreeMap<i64, QuadExtScalar> = self.keys_at(den).map(|(n, c)| (n, c.clone())).collect();
        for (n, c) in o.keys_at(den) {
            let e = terms.entry(n).or_default();
            *e = e.add(c);
        }
        let p = std::cmp::min(&self.precision, &o.precision).clone();
        Ok(Self::raw(d, den, terms, p))
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(&n, c)| (n, c.neg())).collect();
        PuiseuxSeries { d: self.d, denom: self.denom, terms, precision: self.precision.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &QuadExtScalar) -> Self {
        let terms = self.terms.iter().map(|(&n, x)| (n, x.mul(c, self.d))).collect();
        Self::raw(self.d, self.denom, terms, self.precision.clone())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&QuadExtScalar::from_rational(r.clone()))
    }

    /// Multiplies by `q^e`; precision shifts by `e`.
    pub fn shift(&self, e: &Rational) -> Result<Self> {
        let eden = e.denom().to_u64().ok_or(SeriesError::ExponentDenominator(0))?;
        let den = check_denominator(self.denom.lcm(&eden))?;
        let off = (e * int(den as i64)).to_integer().to_i64().expect("exponent out of range");
        let terms = self.keys_at(den).map(|(n, c)| (n + off, c.clone())).collect();
        Ok(Self::raw(self.d, den, terms, &self.precision + e))
    }

    fn integerized(&self, den: u64) -> Integerized {
        let mut common = BigInt::one();
        for c in self.terms.values() {
            common = common.lcm(c.rational_part.denom());
            if !c.radical_part.is_zero() {
                common = common.lcm(c.radical_part.denom());
            }
        }
        let mut out = Integerized { keys: vec![], re: vec![], rad: vec![], has_rad: false, den: common.clone() };
        for (n, c) in self.keys_at(den) {
            out.keys.push(n);
            out.re.push(c.rational_part.numer() * (&common / c.rational_part.denom()));
            let r = c.radical_part.numer() * (&common / c.radical_part.denom());
            out.has_rad |= !r.is_zero();
            out.rad.push(r);
        }
        out
    }

    /// Cauchy product. Precision is `min(P_a + ord b, P_b + ord a)`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let d = self.common_field(o)?;
        let den = check_denominator(self.denom.lcm(&o.denom))?;
        let p = std::cmp::min(&self.precision + o.order(), &o.precision + self.order());
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(d, p));
        }
        let cutoff = ceil_i64(&(&p * int(den as i64)));
        let a = self.integerized(den);
        let b = o.integerized(den);
        let base = a.keys[0] + b.keys[0];
        if base >= cutoff {
            return Ok(Self::zero(d, p));
        }
        let len = (cutoff - base) as usize;
        let with_rad = a.has_rad || b.has_rad;
        let mut re = vec![BigInt::zero(); len];
        let mut rad = if with_rad { vec![BigInt::zero(); len] } else { vec![] };
        let dd = BigInt::from(d);
        for i in 0..a.keys.len() {
            if a.keys[i] + b.keys[0] >= cutoff {
                break;
            }
            for j in 0..b.keys.len() {
                let k = a.keys[i] + b.keys[j];
                if k >= cutoff {
                    break;
                }
                let idx = (k - base) as usize;
                re[idx] += &a.re[i] * &b.re[j];
                if with_rad {
                    if !a.rad[i].is_zero() && !b.rad[j].is_zero() {
                        re[idx] += &a.rad[i] * &b.rad[j] * &dd;
                    }
                    if !b.rad[j].is_zero() {
                        rad[idx] += &a.re[i] * &b.rad[j];
                    }
                    if !a.rad[i].is_zero() {
                        rad[idx] += &a.rad[i] * &b.re[j];
                    }
                }
            }
        }
        let q = &a.den * &b.den;
        let mut terms = BTreeMap::new();
        for (idx, r) in re.into_iter().enumerate() {
            let s = if with_rad { std::mem::take(&mut rad[idx]) } else { BigInt::zero() };
            if r.is_zero() && s.is_zero() {
                continue;
            }
            let c = QuadExtScalar::new(Rational::new(r, q.clone()), Rational::new(s, q.clone()));
            terms.insert(base + idx as i64, c);
        }
        Ok(Self::raw(d, den, terms, p))
    }

    /// Splits `self = c q^(m/D) (1 + v)`, returning `(m, c, g, u, slots)` where `u` lists the
    /// coefficients of `(1+v)` on the lattice `g/D` and `slots` is how many lattice points
    /// lie inside the relative precision.
    fn unit_decomposition(&self) -> Result<UnitParts> {
        let (&m, c) = self.terms.iter().next().ok_or(SeriesError::DivisionByZero)?;
        let cinv = c.inv(self.d).ok_or(SeriesError::DivisionByZero)?;
        let mut g = 0i64;
        for &n in self.terms.keys() {
            g = g.gcd(&(n - m));
        }
        let g = g.max(1);
        let rel = &self.precision - self.exponent(m);
        let slots = ceil_i64(&(rel * int(self.denom as i64) / int(g))).max(0) as usize;
        let u = self
            .terms
            .iter()
            .skip(1)
            .map(|(&n, x)| (((n - m) / g) as usize, x.mul(&cinv, self.d)))
            .take_while(|(j, _)| *j < slots)
            .collect();
        Ok((m, c.clone(), g, u, slots))
    }

    /// `(1 + v)^e` on a lattice, by the recurrence `k y_k = sum ((e+1) j - k) u_j y_{k-j}`.
    fn unit_power(u: &[(usize, QuadExtScalar)], e: &Rational, slots: usize, d: i64) -> Vec<QuadExtScalar> {
        let mut y = vec![QuadExtScalar::zero(); slots];
        if slots == 0 {
            return y;
        }
        y[0] = QuadExtScalar::one();
        let e1 = e + Rational::one();
        for k in 1..slots {
            let mut acc = QuadExtScalar::zero();
            for (j, uj) in u {
                if *j > k {
                    break;
                }
                let yk = &y[k - j];
                if yk.is_zero() {
                    continue;
                }
                let w = &e1 * int(*j as i64) - int(k as i64);
                if w.is_zero() {
                    continue;
                }
                acc = acc.add(&uj.mul(yk, d).scale(&w));
            }
            y[k] = acc.scale(&rat(1, k as i64));
        }
        y
    }

    pub fn invert(&self) -> Result<Self> {
        self.rational_pow(&int(-1))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.invert()?)
    }

    /// `self^e` for rational `e`, as `c^e q^(m e) (1+v)^e`. Fails with a root-extraction
    /// error when `c^e` is not in the field.
    pub fn rational_pow(&self, e: &Rational) -> Result<Self> {
        if self.is_zero() {
            return match e.cmp(&Rational::zero()) {
                Ordering::Greater => Ok(Self::zero(self.d, &self.precision * e)),
                Ordering::Equal => Ok(Self::one(self.d, self.precision.clone())),
                Ordering::Less => Err(SeriesError::DivisionByZero),
            };
        }
        let (m, c, g, u, slots) = self.unit_decomposition()?;
        let ce = c
            .rational_power(e, self.d)
            .ok_or_else(|| SeriesError::RootExtraction(format!("({c})^({e}) is not in Q(sqrt({}))", self.d)))?;
        let shift = self.exponent(m) * e;
        let sden = shift.denom().to_u64().ok_or(SeriesError::ExponentDenominator(0))?;
        let den = check_denominator(self.denom.lcm(&sden))?;
        let f = (den / self.denom) as i64;
        let off = (&shift * int(den as i64)).to_integer().to_i64().expect("exponent out of range");
        let y = Self::unit_power(&u, e, slots, self.d);
        let terms = y
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, yj)| (off + j as i64 * g * f, yj.mul(&ce, self.d)))
            .collect();
        let rel = &self.precision - self.exponent(m);
        Ok(Self::raw(self.d, den, terms, shift + rel))
    }

    /// Integer power by repeated squaring (negative powers go through [`invert`](Self::invert)).
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        if n == 0 {
            return Ok(Self::one(self.d, self.precision.clone()));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut n = n as u64;
        loop {
            if n & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base)?,
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(result.expect("n > 0"))
    }

    /// The derivation `q d/dq`: the coefficient of `q^e` is multiplied by `e`.
    pub fn derive(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&n, _)| n != 0)
            .map(|(&n, c)| (n, c.scale(&self.exponent(n))))
            .collect();
        Self::raw(self.d, self.denom, terms, self.precision.clone())
    }

    /// `q -> q^m`: exponents and precision are multiplied by `m`.
    pub fn substitute_power(&self, m: u64) -> Self {
        assert!(m > 0, "substitute_power needs a positive integer");
        let terms = self.terms.iter().map(|(&n, c)| (n * m as i64, c.clone())).collect();
        Self::raw(self.d, self.denom, terms, &self.precision * int(m as i64))
    }

    /// `q -> q^r` for positive rational `r` (e.g. `q^(1/2)`).
    pub fn rescale_exponents(&self, r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(SeriesError::CompositionDomain(format!("exponent scale {r} must be positive")));
        }
        let num = r.numer().to_i64().expect("scale out of range");
        let rden = r.denom().to_u64().expect("scale out of range");
        let terms = self.terms.iter().map(|(&n, c)| (n * num, c.clone())).collect();
        let s = Self::raw(self.d, self.denom * rden, terms, &self.precision * r);
        check_denominator(s.denom)?;
        Ok(s)
    }

    /// `f(g(q))` for a power series `f` (nonnegative integer exponents) and `ord g > 0`.
    /// Precision is `min(P_f ord g, P_g)`; the second bound only applies when `f` is nonconstant.
    pub fn compose(f: &Self, g: &Self) -> Result<Self> {
        let d = f.common_field(g)?;
        if f.denom != 1 || f.terms.keys().next().is_some_and(|&n| n < 0) {
            return Err(SeriesError::CompositionDomain("outer series must be a power series".into()));
        }
        let og = g.order();
        if !og.is_positive() {
            return Err(SeriesError::CompositionDomain(format!("inner series has order {og}, need > 0")));
        }
        let mut p = &f.precision * &og;
        if f.terms.keys().any(|&n| n > 0) && g.precision < p {
            p = g.precision.clone();
        }
        let top = f.terms.keys().rev().find(|&&n| int(n) * &og < p).copied();
        let Some(top) = top else {
            return Ok(Self::zero(d, p));
        };
        let gt = g.truncate(&p);
        let coeff = |n: i64| f.terms.get(&n).cloned().unwrap_or_default();
        let mut acc = Self::constant(coeff(top), d, p.clone());
        for n in (0..top).rev() {
            acc = acc.mul(&gt)?.truncate(&p);
            acc = acc.add(&Self::constant(coeff(n), d, p.clone()))?;
        }
        Ok(acc.truncate(&p))
    }

    /// First exponent below the shared precision where the two series differ.
    pub fn first_difference(&self, o: &Self) -> Option<(Rational, QuadExtScalar, QuadExtScalar)> {
        let p = std::cmp::min(&self.precision, &o.precision);
        let den = self.denom.lcm(&o.denom);
        let a: BTreeMap<i64, &QuadExtScalar> = self.keys_at(den).collect();
        let b: BTreeMap<i64, &QuadExtScalar> = o.keys_at(den).collect();
        let mut keys: Vec<i64> = a.keys().chain(b.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for n in keys {
            let e = rat(n, den as i64);
            if e >= *p {
                break;
            }
            let x = a.get(&n).map(|c| (*c).clone()).unwrap_or_default();
            let y = b.get(&n).map(|c| (*c).clone()).unwrap_or_default();
            if x != y {
                return Some((e, x, y));
            }
        }
        None
    }
}

impl PartialEq for PuiseuxSeries {
    /// Agreement on all exponents below the smaller precision.
    fn eq(&self, o: &Self) -> bool {
        self.first_difference(o).is_none()
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<&PuiseuxSeries> for &PuiseuxSeries {
            type Output = PuiseuxSeries;
            fn $m(self, o: &PuiseuxSeries) -> PuiseuxSeries {
                PuiseuxSeries::$m(self, o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}
panicking_op!(Add, add);
panicking_op!(Sub, sub);
panicking_op!(Mul, mul);
panicking_op!(Div, div);

impl std::ops::Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries::neg(self)
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in self.iter() {
            let cs = if c.is_rational() { c.to_string() } else { format!("({c})") };
            if e.is_zero() {
                write!(f, "{cs} + ")?;
            } else {
                write!(f, "{cs}*q^{e} + ")?;
            }
        }
        write!(f, "O(q^{})", self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64], p: i64) -> PuiseuxSeries {
        PuiseuxSeries::from_rationals(0, 1, coeffs.iter().enumerate().map(|(i, &c)| (i as i64, int(c))), int(p)).unwrap()
    }

    #[test]
    fn cancellation_and_precision() {
        let s = &poly(&[1, 1], 10) + &poly(&[1, -1], 5);
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff_at(0), int(2));
        assert_eq!(*s.precision(), int(5));
    }

    #[test]
    fn difference_of_squares() {
        let p = &poly(&[1, 1], 10) * &poly(&[1, -1], 10);
        assert_eq!(p, poly(&[1, 0, -1], 10));
        assert_eq!(*p.precision(), int(10));
    }

    #[test]
    fn geometric_inverse() {
        let inv = poly(&[1, -1], 8).invert().unwrap();
        assert_eq!(inv, poly(&[1; 8], 8));
        let qu = poly(&[0, 1, 3], 8).invert().unwrap();
        assert_eq!(qu.valuation(), Some(int(-1)));
        assert_eq!(*qu.precision(), int(6));
    }

    #[test]
    fn fractional_derivative() {
        let s = PuiseuxSeries::monomial(QuadExtScalar::one(), &rat(1, 2), 0, int(5)).unwrap();
        assert_eq!(s.derive().coeff(&rat(1, 2)).rational_part, rat(1, 2));
        assert!(poly(&[7], 5).derive().is_zero());
    }

    #[test]
    fn compose_geometric() {
        let f = poly(&[1; 10], 10);
        let q = PuiseuxSeries::monomial(QuadExtScalar::one(), &int(1), 0, int(10)).unwrap();
        assert_eq!(PuiseuxSeries::compose(&f, &q).unwrap(), poly(&[1; 10], 10));
        let z = PuiseuxSeries::zero(0, int(10));
        let c = PuiseuxSeries::compose(&poly(&[3, 5, 7], 10), &z).unwrap();
        assert_eq!(c, poly(&[3], 10));
        assert!(PuiseuxSeries::compose(&f, &poly(&[1, 1], 10)).is_err());
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = PuiseuxSeries::one(-1, int(4));
        let b = PuiseuxSeries::one(2, int(4));
        assert_eq!(a.add(&b).unwrap_err(), SeriesError::FieldMismatch(-1, 2));
    }

    #[test]
    fn root_extraction_error() {
        let s = poly(&[2, 1], 6);
        assert!(matches!(s.rational_pow(&rat(1, 2)), Err(SeriesError::RootExtraction(_))));
        let one = poly(&[1], 6);
        assert_eq!(one.rational_pow(&rat(1, 2)).unwrap(), one);
    }

    #[test]
    fn square_root_of_square() {
        let s = poly(&[1, 3, -2, 5], 12);
        let sq = &s * &s;
        assert_eq!(sq.rational_pow(&rat(1, 2)).unwrap(), s);
    }

    #[test]
    fn denominators_merge_and_cap() {
        let a = PuiseuxSeries::monomial(QuadExtScalar::one(), &rat(1, 16), 0, int(3)).unwrap();
        let b = PuiseuxSeries::monomial(QuadExtScalar::one(), &rat(1, 3), 0, int(3)).unwrap();
        assert_eq!((&a * &b).exponent_denominator(), 48);
        let c = PuiseuxSeries::monomial(QuadExtScalar::one(), &rat(1, 5), 0, int(3));
        assert_eq!(c.unwrap_err(), SeriesError::ExponentDenominator(5));
    }
}
