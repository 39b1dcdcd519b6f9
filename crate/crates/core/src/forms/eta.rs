use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::qseries::{ceil_i64, int, PuiseuxSeries, QuadExtScalar, Rational, SeriesError};

/// `q^(sum delta r / 24)`: the leading exponent of `prod [delta]^r`.
pub fn eta_leading_exponent(factors: &[(u64, i64)]) -> Rational {
    factors.iter().map(|&(delta, r)| int(delta as i64 * r)).sum::<Rational>() / int(24)
}

/// Integer coefficients of `prod_delta prod_n (1 - q^(delta n))^(r_delta)` for exponents `< len`.
///
/// Uses the logarithmic derivative: with `g_m = -sum_delta r_delta delta sigma_1(m/delta)`,
/// `k f_k = sum_{j=1..k} g_j f_{k-j}`.
pub fn eta_product_coefficients(factors: &[(u64, i64)], len: usize) -> Vec<BigInt> {
    if len == 0 {
        return vec![];
    }
    let mut sigma1 = vec![0i64; len];
    for dd in 1..len {
        for m in (dd..len).step_by(dd) {
            sigma1[m] += dd as i64;
        }
    }
    let mut g = vec![BigInt::zero(); len];
    for (m, gm) in g.iter_mut().enumerate().skip(1) {
        let mut acc = 0i64;
        for &(delta, r) in factors {
            let delta = delta as usize;
            if m % delta == 0 {
                acc -= r * delta as i64 * sigma1[m / delta];
            }
        }
        *gm = BigInt::from(acc);
    }
    let mut f = vec![BigInt::zero(); len];
    f[0] = BigInt::from(1);
    for k in 1..len {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            if !g[j].is_zero() && !f[k - j].is_zero() {
                acc += &g[j] * &f[k - j];
            }
        }
        let (quo, rem) = acc.div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero());
        f[k] = quo;
    }
    f
}

/// `c * prod [delta]^(r_delta)` with `[delta] = eta(delta tau)`, to precision `P`.
pub fn eta_quotient_series(
    factors: &[(u64, i64)],
    prefactor: &QuadExtScalar,
    d: i64,
    precision: &Rational,
) -> Result<PuiseuxSeries, SeriesError> {
    let lead = eta_leading_exponent(factors);
    let len = ceil_i64(&(precision - &lead)).max(0) as usize;
    let coeffs = eta_product_coefficients(factors, len);
    let terms = coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (&lead + int(k as i64), prefactor.scale(&Rational::from_integer(c))));
    PuiseuxSeries::from_exponents(d, terms, precision.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn euler_pentagonal() {
        let c = eta_product_coefficients(&[(1, 1)], 16);
        assert_eq!(ints(&c), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]);
    }

    #[test]
    fn delta_coefficients() {
        let s = eta_quotient_series(&[(1, 24)], &QuadExtScalar::one(), 0, &int(6)).unwrap();
        let got: Vec<Rational> = (1..6).map(|n| s.coeff_at(n)).collect();
        assert_eq!(got, vec![int(1), int(-24), int(252), int(-1472), int(4830)]);
        assert_eq!(s.coeff_at(0), int(0));
    }

    #[test]
    fn theta2_quotient_has_quarter_exponents() {
        // 2[4]^2/[2] = 2q^(1/4)(1 + q^2 + q^6 + ...)
        let s = eta_quotient_series(&[(4, 2), (2, -1)], &QuadExtScalar::from_int(2), 0, &int(7)).unwrap();
        assert_eq!(s.exponent_denominator(), 4);
        assert_eq!(s.to_string(), "2*q^1/4 + 2*q^9/4 + 2*q^25/4 + O(q^7)");
    }
}
