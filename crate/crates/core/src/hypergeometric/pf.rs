use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::qseries::{int, rat, Rational};

use super::poly::{Poly, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PfError {
    #[error("singular point t* must be nonzero")]
    ZeroSingularPoint,
    #[error("ladder needs an even k_max >= 4, got {0}")]
    BadLadderLength(u32),
    #[error("polynomial is not homogeneous: weights {0} and {1}")]
    NotHomogeneous(u32, u32),
    #[error("no Picard-Fuchs operator is tabulated for Gamma0({0})")]
    UnknownLevel(u64),
}

/// `D_t^2 + P(t) D_t + Q(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFOperator {
    pub p: RationalFunction,
    pub q: RationalFunction,
}

impl PFOperator {
    /// The Fuchsian operator with exponent differences `alpha, beta, gamma` at `t = t*, infinity, 0`
    /// and one zero exponent at each of `t*` and infinity:
    /// `P = (alpha+beta)/t + (1-alpha)/(t-t*)`, `Q = [gamma^2 - (1-alpha-beta)^2] t* / (4 t^2 (t-t*))`.
    pub fn triangle(alpha: &Rational, beta: &Rational, gamma: &Rational, t_star: &Rational) -> Result<Self, PfError> {
        if t_star.is_zero() {
            return Err(PfError::ZeroSingularPoint);
        }
        let zero = Rational::zero();
        let p = RationalFunction::simple_pole(alpha + beta, &zero)
            .add(&RationalFunction::simple_pole(Rational::one() - alpha, t_star));
        let s = Rational::one() - alpha - beta;
        let c = (gamma * gamma - &s * &s) * t_star / int(4);
        let den = Poly::t().pow(2).mul(&Poly::linear(t_star));
        let q = RationalFunction::new(Poly::constant(c), den).expect("nonzero denominator");
        Ok(PFOperator { p, q })
    }

    /// The operators `L_N` annihilating the weight-1 form `B` as a function of the Hauptmodul
    /// `t_N` of `Gamma0(N)` (before the change of dependent variable that produces
    /// [`PFOperator::triangle`]).
    pub fn gamma0(n: u64) -> Result<Self, PfError> {
        let (ts, pc, qc) = match n {
            2 => (-64, rat(1, 2), rat(1, 16)),
            3 => (-27, rat(2, 3), rat(1, 9)),
            4 => (-16, int(1), rat(1, 4)),
            _ => return Err(PfError::UnknownLevel(n)),
        };
        let ts = int(ts);
        let p = RationalFunction::simple_pole(int(1), &int(0)).add(&RationalFunction::simple_pole(pc, &ts));
        let q = RationalFunction::new(Poly::constant(qc), Poly::t().mul(&Poly::linear(&ts))).expect("nonzero");
        Ok(PFOperator { p, q })
    }

    /// The modified operator annihilating `C` for `Gamma0(N)`; it is [`PFOperator::triangle`] at
    /// `(1/2,0,0)`, `(1/3,0,0)`, `(0,0,0)` with `t* = -64, -27, -16`.
    pub fn gamma0_modified(n: u64) -> Result<Self, PfError> {
        let (a, ts) = match n {
            2 => (rat(1, 2), -64),
            3 => (rat(1, 3), -27),
            4 => (int(0), -16),
            _ => return Err(PfError::UnknownLevel(n)),
        };
        PFOperator::triangle(&a, &int(0), &int(0), &int(ts))
    }
}

/// `u^_4 = -Q`, `u^_{k+2} = (u^_k)_t + (k/2) P u^_k`, returned for `k = 4, 6, ..., k_max`.
pub fn u_hat_ladder(op: &PFOperator, k_max: u32) -> Result<Vec<RationalFunction>, PfError> {
    if k_max < 4 || k_max % 2 == 1 {
        return Err(PfError::BadLadderLength(k_max));
    }
    let mut out = vec![op.q.neg()];
    let mut k = 4;
    while k < k_max {
        let u = out.last().expect("nonempty");
        let next = u.derive().add(&op.p.mul(u).scale(&int(k as i64 / 2)));
        out.push(next);
        k += 2;
    }
    Ok(out)
}

/// Exponents `(a, b, c)` of `u4^a u6^b u8^c`.
pub type Exponents = [u32; 3];

pub fn monomial_weight(e: &Exponents) -> u32 {
    4 * e[0] + 6 * e[1] + 8 * e[2]
}

/// Polynomial in `u4, u6, u8` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightedPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl WeightedPoly {
    pub fn new<I: IntoIterator<Item = (Rational, Exponents)>>(terms: I) -> Self {
        let mut p = WeightedPoly::default();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn from_ints(terms: &[(i64, Exponents)]) -> Self {
        WeightedPoly::new(terms.iter().map(|(c, e)| (int(*c), *e)))
    }

    fn add_term(&mut self, c: Rational, e: Exponents) {
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common weight of all monomials; `Ok(None)` for the zero polynomial.
    pub fn weight(&self) -> Result<Option<u32>, PfError> {
        let mut w = None;
        for e in self.terms.keys() {
            let x = monomial_weight(e);
            match w {
                None => w = Some(x),
                Some(y) if y != x => return Err(PfError::NotHomogeneous(y, x)),
                _ => {}
            }
        }
        Ok(w)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(c.clone(), *e);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WeightedPoly::new(self.terms.iter().map(|(e, x)| (x * c, *e)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = WeightedPoly::default();
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                out.add_term(a * b, [e[0] + f[0], e[1] + f[1], e[2] + f[2]]);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(WeightedPoly::from_ints(&[(1, [0, 0, 0])]), |acc, _| acc.mul(self))
    }

    /// `Some(c)` with `self = c * o`, when the two are proportional and `o` is nonzero.
    pub fn ratio_to(&self, o: &Self) -> Option<Rational> {
        let (e, b) = o.terms.iter().next()?;
        let c = self.coeff(e) / b;
        (*self == o.scale(&c)).then_some(c)
    }

    /// Substitutes rational functions for `u4, u6, u8`.
    pub fn eval(&self, u: &[RationalFunction; 3]) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for (e, c) in &self.terms {
            let m = (0..3).fold(RationalFunction::constant(c.clone()), |m, i| m.mul(&u[i].pow(e[i])));
            acc = acc.add(&m);
        }
        acc
    }
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (name, k) in [("u4", e[0]), ("u6", e[1]), ("u8", e[2])] {
                match k {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// The polynomial with `u_k` replaced by `u^_k`; the common factor `t_dot^(w/2)` is dropped,
/// so a zero result means the generalized Chazy equation holds for `op`.
pub fn chazy_residual(op: &PFOperator, poly: &WeightedPoly) -> Result<RationalFunction, PfError> {
    poly.weight()?;
    let u = u_hat_ladder(op, 8)?;
    // over the common denominator prod D_i^(max e_i), so only polynomial products are needed
    let top: Vec<u32> = (0..3).map(|i| poly.terms.keys().map(|e| e[i]).max().unwrap_or(0)).collect();
    let mut num = Poly::zero();
    for (e, c) in &poly.terms {
        let mut m = Poly::constant(c.clone());
        for i in 0..3 {
            m = m.mul(&u[i].numerator().pow(e[i])).mul(&u[i].denominator().pow(top[i] - e[i]));
        }
        num = num.add(&m);
    }
    if num.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let den = (0..3).fold(Poly::one(), |d, i| d.mul(&u[i].denominator().pow(top[i])));
    Ok(RationalFunction::new(num, den).expect("nonzero denominator"))
}

/// `p4 = u4 u8 - u6^2 + 8 u4^3`.
pub fn p4() -> WeightedPoly {
    WeightedPoly::from_ints(&[(1, [1, 0, 1]), (-1, [0, 2, 0]), (8, [3, 0, 0])])
}

/// `p3 = u4 u8^2 - u6^2 u8 + 24 u4^3 u8 - 15 u4^2 u6^2 + 144 u4^5`.
pub fn p3() -> WeightedPoly {
    WeightedPoly::from_ints(&[(1, [1, 0, 2]), (-1, [0, 2, 1]), (24, [3, 0, 1]), (-15, [2, 2, 0]), (144, [5, 0, 0])])
}

/// The classical Chazy polynomial `p12 = u8 + 24 u4^2`.
pub fn p12() -> WeightedPoly {
    WeightedPoly::from_ints(&[(1, [0, 0, 1]), (24, [2, 0, 0])])
}

/// `p8 = 2 u4 u8 - u6^2 + 32 u4^3`.
pub fn p8() -> WeightedPoly {
    WeightedPoly::from_ints(&[(2, [1, 0, 1]), (-1, [0, 2, 0]), (32, [3, 0, 0])])
}

/// `p6 = 4 u4 u8 - 3 u6^2 + 48 u4^3`.
pub fn p6() -> WeightedPoly {
    WeightedPoly::from_ints(&[(4, [1, 0, 1]), (-3, [0, 2, 0]), (48, [3, 0, 0])])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_closed_forms() {
        let op = PFOperator::triangle(&rat(2, 7), &rat(1, 5), &rat(1, 3), &int(-1)).unwrap();
        let u = u_hat_ladder(&op, 8).unwrap();
        let (p, q) = (&op.p, &op.q);
        assert_eq!(u[0], q.neg());
        assert_eq!(u[1], q.derive().add(&p.mul(q).scale(&int(2))).neg());
        let u8 = q
            .derive()
            .derive()
            .add(&p.mul(&q.derive()).scale(&int(5)))
            .add(&q.mul(&p.derive()).scale(&int(2)))
            .add(&p.pow(2).mul(q).scale(&int(6)))
            .neg();
        assert_eq!(u[2], u8);
        assert!(u_hat_ladder(&op, 7).is_err());
        assert!(u_hat_ladder(&op, 2).is_err());
    }

    #[test]
    fn homogeneity_is_enforced() {
        let op = PFOperator::triangle(&rat(1, 2), &int(0), &int(0), &int(-1)).unwrap();
        let bad = WeightedPoly::from_ints(&[(1, [1, 0, 0]), (1, [0, 1, 0])]);
        assert_eq!(chazy_residual(&op, &bad), Err(PfError::NotHomogeneous(6, 4)));
        assert_eq!(p3().weight(), Ok(Some(20)));
    }

    #[test]
    fn first_ladder_term() {
        // unbarred L_2 acts on B: u^_4 = -Q = -1/(16 t (t+64))
        let u = u_hat_ladder(&PFOperator::gamma0(2).unwrap(), 4).unwrap();
        let want = RationalFunction::new(Poly::constant(rat(-1, 16)), Poly::from_ints(&[0, 64, 1])).unwrap();
        assert_eq!(u[0], want);
        // the modified operator: u^_4 = -4/(t^2 (t+64))
        let u = u_hat_ladder(&PFOperator::gamma0_modified(2).unwrap(), 4).unwrap();
        let want = RationalFunction::new(Poly::constant(int(-4)), Poly::from_ints(&[0, 0, 64, 1])).unwrap();
        assert_eq!(u[0], want);
        assert_eq!(PFOperator::gamma0(5), Err(PfError::UnknownLevel(5)));
    }

    #[test]
    fn ladder_denominators() {
        let ts = rat(-27, 4);
        let op = PFOperator::triangle(&rat(3, 5), &rat(-1, 4), &rat(2, 9), &ts).unwrap();
        for (i, u) in u_hat_ladder(&op, 12).unwrap().iter().enumerate() {
            let h = i as u32 + 2;
            let bound = Poly::t().pow(h).mul(&Poly::linear(&ts).pow(h - 1));
            assert!(u.denominator().divides(&bound), "k = {}", 2 * h);
        }
    }

    #[test]
    fn display() {
        assert_eq!(p12().to_string(), "24*u4^2 + 1*u8");
    }
}
