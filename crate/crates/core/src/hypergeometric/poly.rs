use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::qseries::{int, PuiseuxSeries, Rational, SeriesError};

/// Dense univariate polynomial in `t` over Q; no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// `t - a`.
    pub fn linear(a: &Rational) -> Self {
        Poly::new(vec![-a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = Rational::zero();
        Poly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn derive(&self) -> Self {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") / &lead;
            for (i, x) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * x;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn divides(&self, o: &Self) -> bool {
        o.div_rem(self).1.is_zero()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(c t)`.
    pub fn scale_var(&self, c: &Rational) -> Self {
        let mut f = Rational::one();
        Poly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let v = a * &f;
                    f = &f * c;
                    v
                })
                .collect(),
        )
    }

    /// Horner evaluation at a q-series.
    pub fn eval_series(&self, t: &PuiseuxSeries) -> Result<PuiseuxSeries, SeriesError> {
        let p = t.precision().clone();
        let mut acc = PuiseuxSeries::zero(t.d(), p.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t)?.add(&PuiseuxSeries::one(t.d(), p.clone()).scale_rational(c))?;
        }
        Ok(acc)
    }
}

fn fmt_terms(c: &[Rational], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, a) in c.iter().enumerate().rev().filter(|(_, a)| !a.is_zero()) {
        let sign = if a.is_negative() { "-" } else { "+" };
        if first {
            if a.is_negative() {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let m = a.abs();
        match (i, m.is_one()) {
            (0, _) => write!(f, "{m}")?,
            (_, true) => {}
            _ => write!(f, "{m}*")?,
        }
        match i {
            0 => {}
            1 => f.write_str("t")?,
            _ => write!(f, "t^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.coeffs, f)
    }
}

/// Reduced quotient of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalFunctionError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes at t = {0}")]
    Pole(Rational),
}

impl RationalFunction {
    /// Normalizes `num/den`: common factors cancelled, denominator monic.
    pub fn new(num: Poly, den: Poly) -> Result<Self, RationalFunctionError> {
        if den.is_zero() {
            return Err(RationalFunctionError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lead = den.leading().recip();
        Ok(RationalFunction { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    /// `c / (t - a)`.
    pub fn simple_pole(c: Rational, a: &Rational) -> Self {
        RationalFunction::new(Poly::constant(c), Poly::linear(a)).expect("nonzero denominator")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        RationalFunction::new(num, den).expect("denominators of nonzero functions are nonzero")
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        Self::reduce(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn div(&self, o: &Self) -> Result<Self, RationalFunctionError> {
        if o.is_zero() {
            return Err(RationalFunctionError::DivisionByZero);
        }
        RationalFunction::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn pow(&self, n: u32) -> Self {
        RationalFunction { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// `d/dt`.
    pub fn derive(&self) -> Self {
        Self::reduce(
            self.num.derive().mul(&self.den).sub(&self.num.mul(&self.den.derive())),
            self.den.mul(&self.den),
        )
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, RationalFunctionError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(RationalFunctionError::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// `f(c t)`.
    pub fn scale_var(&self, c: &Rational) -> Self {
        Self::reduce(self.num.scale_var(c), self.den.scale_var(c))
    }

    /// `f(t(q))` for a q-series `t`; the denominator series must be invertible.
    pub fn eval_series(&self, t: &PuiseuxSeries) -> Result<PuiseuxSeries, SeriesError> {
        self.num.eval_series(t)?.div(&self.den.eval_series(t)?)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::rat;

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = Poly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let c = Poly::from_ints(&[2, 3, 1]); // (t+1)(t+2)
        assert_eq!(a.gcd(&c), b);
        assert_eq!(a.to_string(), "t^2 - 1");
    }

    #[test]
    fn normalization() {
        let f = RationalFunction::new(Poly::from_ints(&[2, 2]), Poly::from_ints(&[-2, 0, 2])).unwrap();
        assert_eq!(f.numerator(), &Poly::one());
        assert_eq!(f.denominator(), &Poly::from_ints(&[-1, 1]));
        assert!(RationalFunction::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn calculus() {
        // d/dt 1/(t - 3) = -1/(t - 3)^2
        let f = RationalFunction::simple_pole(int(1), &int(3));
        assert_eq!(f.derive(), f.pow(2).neg());
        assert_eq!(f.eval(&int(5)).unwrap(), rat(1, 2));
        assert!(f.eval(&int(3)).is_err());
        // (1/(t-3))(2t) = 1/(2t - 3)
        assert_eq!(f.scale_var(&int(2)).eval(&int(2)).unwrap(), int(1));
    }
}
