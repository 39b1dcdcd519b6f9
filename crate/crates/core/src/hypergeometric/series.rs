use num_traits::{One, Signed, Zero};

use crate::qseries::{ceil_i64, int, PuiseuxSeries, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypergeometricSeriesError {
    #[error("lower parameter {0} is a nonpositive integer")]
    Pole(Rational),
}

fn check_lower(b: &Rational) -> Result<(), HypergeometricSeriesError> {
    if b.is_integer() && !b.is_positive() {
        Err(HypergeometricSeriesError::Pole(b.clone()))
    } else {
        Ok(())
    }
}

/// `pFq(upper; lower; x)` truncated below `x^P`, by the term ratio
/// `c_{n+1}/c_n = prod (a_i + n) / (prod (b_j + n) (n + 1))`.
pub fn hypergeometric_series(
    upper: &[Rational],
    lower: &[Rational],
    precision: &Rational,
) -> Result<PuiseuxSeries, HypergeometricSeriesError> {
    for b in lower {
        check_lower(b)?;
    }
    let len = ceil_i64(precision).max(0);
    let mut terms = Vec::with_capacity(len as usize);
    let mut c = Rational::one();
    for n in 0..len {
        if c.is_zero() {
            break;
        }
        terms.push((n, c.clone()));
        let nn = int(n);
        let num: Rational = upper.iter().map(|a| a + &nn).product();
        let den: Rational = lower.iter().map(|b| b + &nn).product::<Rational>() * (&nn + int(1));
        c = c * num / den;
    }
    Ok(PuiseuxSeries::from_rationals(0, 1, terms, precision.clone()).expect("integer exponents over Q"))
}

/// Gauss `2F1(a, b; c; x)` as an exact truncated Taylor series in `x`.
pub fn two_f_one_series(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    precision: &Rational,
) -> Result<PuiseuxSeries, HypergeometricSeriesError> {
    hypergeometric_series(&[a.clone(), b.clone()], std::slice::from_ref(c), precision)
}

/// `3F2(a1, a2, a3; b1, b2; x)`, only used for the specific Clausen-type identities.
pub fn three_f_two_series(
    a: &[Rational; 3],
    b: &[Rational; 2],
    precision: &Rational,
) -> Result<PuiseuxSeries, HypergeometricSeriesError> {
    hypergeometric_series(a, b, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::rat;

    #[test]
    fn binomial_degeneration() {
        // 2F1(a, b; b; x) = (1 - x)^(-a)
        let a = rat(2, 3);
        let b = rat(5, 7);
        let f = two_f_one_series(&a, &b, &b, &int(12)).unwrap();
        let one_minus_x = PuiseuxSeries::from_rationals(0, 1, [(0, int(1)), (1, int(-1))], int(12)).unwrap();
        assert_eq!(f, one_minus_x.rational_pow(&-a).unwrap());
    }

    #[test]
    fn constant_term_and_known_coefficients() {
        let f = two_f_one_series(&rat(1, 12), &rat(5, 12), &int(1), &int(3)).unwrap();
        assert_eq!(f.coeff_at(0), int(1));
        assert_eq!(f.coeff_at(1), rat(5, 144));
        assert_eq!(f.coeff_at(2), rat(1105, 82944));
    }

    #[test]
    fn terminating_and_poles() {
        let f = two_f_one_series(&int(-2), &int(1), &int(1), &int(10)).unwrap();
        assert_eq!(f.to_string(), "1 + -2*q^1 + 1*q^2 + O(q^10)");
        assert!(matches!(two_f_one_series(&int(1), &int(1), &int(-3), &int(5)), Err(HypergeometricSeriesError::Pole(_))));
    }
}
