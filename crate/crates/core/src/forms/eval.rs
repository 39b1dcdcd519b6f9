use std::collections::HashMap;

use num_traits::{One, Signed, ToPrimitive};

use crate::arithmetic::DirichletCharacter;
use crate::hypergeometric::{hypergeometric_series, HypergeometricSeriesError};
use crate::qseries::{ceil_i64, int, PuiseuxSeries, QuadExtScalar, Rational, SeriesError};

use super::eisenstein::{eisenstein_series, DivisorSeries};
use super::eta::eta_quotient_series;
use super::expr::Expr;
use super::registry::{FormError, Registry};

/// Brings two series into one field: a rational series adopts the other's discriminant.
pub fn unify(a: PuiseuxSeries, b: PuiseuxSeries) -> Result<(PuiseuxSeries, PuiseuxSeries), SeriesError> {
    if a.d() == b.d() {
        Ok((a, b))
    } else if a.is_rational() {
        Ok((a.with_field(b.d())?, b))
    } else if b.is_rational() {
        let d = a.d();
        Ok((a, b.with_field(d)?))
    } else {
        Err(SeriesError::FieldMismatch(a.d(), b.d()))
    }
}

/// `sum_{n>=1} q^n / (1 - s q^n)^2 = sum_{n,m>=1} m s^(m-1) q^(n m)`.
pub fn lambert_series(sign: i64, precision: &Rational) -> PuiseuxSeries {
    let nmax = ceil_i64(precision).max(1) - 1;
    let mut terms = vec![];
    for n in 1..=nmax {
        for m in 1..=nmax / n {
            let c = if sign < 0 && m % 2 == 0 { -m } else { m };
            terms.push((n * m, int(c)));
        }
    }
    PuiseuxSeries::from_rationals(0, 1, terms, precision.clone()).expect("integer exponents")
}

/// Ladder `u_4 = R E' - E^2`, `u_{k+2} = u_k' - (k/R) E u_k`.
pub fn ladder(e: &PuiseuxSeries, r: &Rational, k: u32) -> Result<PuiseuxSeries, SeriesError> {
    let mut u = e.derive().scale_rational(r).sub(&e.mul(e)?)?;
    let mut j = 4;
    while j < k {
        let coef = int(j as i64) / r;
        u = u.derive().sub(&e.mul(&u)?.scale_rational(&coef))?;
        j += 2;
    }
    Ok(u)
}

fn hyp_err(e: HypergeometricSeriesError) -> FormError {
    FormError::Hypergeometric(e.to_string())
}

/// Evaluates expression trees against a registry, caching every subtree by precision.
pub struct Evaluator<'a> {
    registry: &'a Registry,
    field: i64,
    cache: HashMap<(String, Rational), PuiseuxSeries>,
}

impl<'a> Evaluator<'a> {
    /// `field` is the meaning of `w` and the field rational leaves are lifted to.
    pub fn new(registry: &'a Registry, field: i64) -> Self {
        Evaluator { registry, field, cache: HashMap::new() }
    }

    fn lift(&self, s: PuiseuxSeries) -> PuiseuxSeries {
        if s.d() != self.field && s.is_rational() {
            s.with_field(self.field).unwrap_or(s)
        } else {
            s
        }
    }

    /// Evaluates with every leaf expanded to precision `p`; the result may have lower precision.
    pub fn eval(&mut self, e: &Expr, p: &Rational) -> Result<PuiseuxSeries, FormError> {
        if let Expr::Const(c) = e {
            return self.constant(c, p);
        }
        let key = (e.to_string(), p.clone());
        if let Some(s) = self.cache.get(&key) {
            return Ok(s.clone());
        }
        let s = self.eval_node(e, p)?;
        self.cache.insert(key, s.clone());
        Ok(s)
    }

    fn constant(&self, c: &QuadExtScalar, p: &Rational) -> Result<PuiseuxSeries, FormError> {
        if !c.is_rational() && self.field == 0 {
            return Err(FormError::RationalContext);
        }
        let d = if c.is_rational() { 0 } else { self.field };
        Ok(self.lift(PuiseuxSeries::constant(c.clone(), d, p.clone())))
    }

    fn binary(
        &mut self,
        a: &Expr,
        b: &Expr,
        p: &Rational,
        f: impl Fn(&PuiseuxSeries, &PuiseuxSeries) -> Result<PuiseuxSeries, SeriesError>,
    ) -> Result<PuiseuxSeries, FormError> {
        let x = self.eval(a, p)?;
        let y = self.eval(b, p)?;
        let (x, y) = unify(x, y)?;
        Ok(f(&x, &y)?)
    }

    fn eval_node(&mut self, e: &Expr, p: &Rational) -> Result<PuiseuxSeries, FormError> {
        let s = match e {
            Expr::Const(c) => self.constant(c, p)?,
            Expr::Form(name) => self.registry.eval_form(name, p)?,
            Expr::Add(items) | Expr::Mul(items) => {
                let is_add = matches!(e, Expr::Add(_));
                let mut acc = self.eval(&items[0], p)?;
                for it in &items[1..] {
                    let (x, y) = unify(acc, self.eval(it, p)?)?;
                    acc = if is_add { x.add(&y)? } else { x.mul(&y)? };
                }
                acc
            }
            Expr::Sub(a, b) => self.binary(a, b, p, |x, y| x.sub(y))?,
            Expr::Div(a, b) => self.binary(a, b, p, |x, y| x.div(y))?,
            Expr::Neg(a) => self.eval(a, p)?.neg(),
            Expr::Pow(a, n) => {
                let x = self.eval(a, p)?;
                if n.is_integer() && !n.is_negative() {
                    x.pow(n.to_integer().to_i64().expect("small exponent"))?
                } else {
                    x.rational_pow(n)?
                }
            }
            Expr::Subst(r, a) => {
                let x = self.eval(a, &(p / r))?;
                if r.is_integer() {
                    x.substitute_power(r.to_integer().to_u64().expect("small substitution"))
                } else {
                    x.rescale_exponents(r)?
                }
            }
            Expr::Deriv(a) => self.eval(a, p)?.derive(),
            Expr::Monomial(q) => PuiseuxSeries::monomial(QuadExtScalar::one(), q, 0, p.clone())?,
            Expr::Eta(factors) => eta_quotient_series(factors, &QuadExtScalar::one(), 0, p)?,
            Expr::Divisor { k, weights, conjugate } => DivisorSeries {
                k: *k,
                weights: weights.clone(),
                conjugate: *conjugate,
                constant: QuadExtScalar::zero(),
                scale: QuadExtScalar::one(),
                step: Rational::one(),
            }
            .expand(0, p)?,
            Expr::Eisenstein { k, psi, phi } => {
                let psi = DirichletCharacter::parse(psi)?;
                let phi = DirichletCharacter::parse(phi)?;
                eisenstein_series(*k, &psi, &phi, p)?
            }
            Expr::Lambert(sign) => lambert_series(*sign, p),
            Expr::Ladder { r, k, normalized, e } => {
                let x = self.eval(e, p)?;
                let u = ladder(&x, r, *k)?;
                if *normalized {
                    u.scale_rational(&(r * r).recip())
                } else {
                    u
                }
            }
            Expr::Hyp2F1 { a, b, c, x } => {
                let upper = [a.clone(), b.clone()];
                self.compose_hypergeometric(&upper, std::slice::from_ref(c), x, p)?
            }
            Expr::Hyp3F2 { a, b, x } => self.compose_hypergeometric(a, b, x, p)?,
            Expr::HypOde { a, b, x, f } => self.hypergeometric_residual(a, b, x, f, p)?,
        };
        Ok(self.lift(s))
    }

    fn hypergeometric_residual(
        &mut self,
        upper: &[Rational],
        lower: &[Rational],
        x: &Expr,
        f: &Expr,
        p: &Rational,
    ) -> Result<PuiseuxSeries, FormError> {
        let (xs, fs) = unify(self.eval(x, p)?, self.eval(f, p)?)?;
        let ratio = xs.div(&xs.derive())?;
        let theta_plus = |g: &PuiseuxSeries, c: &Rational| -> Result<PuiseuxSeries, SeriesError> {
            ratio.mul(&g.derive())?.add(&g.scale_rational(c))
        };
        let mut left = theta_plus(&fs, &int(0))?;
        for b in lower {
            left = theta_plus(&left, &(b - int(1)))?;
        }
        let mut right = fs;
        for a in upper {
            right = theta_plus(&right, a)?;
        }
        Ok(left.sub(&xs.mul(&right)?)?)
    }

    fn compose_hypergeometric(
        &mut self,
        upper: &[Rational],
        lower: &[Rational],
        x: &Expr,
        p: &Rational,
    ) -> Result<PuiseuxSeries, FormError> {
        let arg = self.eval(x, p)?;
        let og = arg.order();
        if !og.is_positive() {
            return Err(FormError::Series(SeriesError::CompositionDomain(format!(
                "hypergeometric argument {x} has order {og}"
            ))));
        }
        let outer = hypergeometric_series(upper, lower, &int(ceil_i64(&(p / &og))))
            .map_err(hyp_err)?
            .with_field(arg.d())?;
        Ok(PuiseuxSeries::compose(&outer, &arg)?)
    }
}
