use num_traits::{Signed, ToPrimitive};

use crate::qseries::{int, rat, PuiseuxSeries, QuadExtScalar, Rational, SeriesError};

/// A lattice whose generating function `sum q^(Q(x))` is a theta series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaRule {
    /// `sum_{m in Z} s^m q^((m+h)^2)` with `s = -1` when `alternating`.
    OneDim { shift: Rational, alternating: bool },
    /// `sum_{n,m in Z} z q^(a x^2 + b x y + c y^2)` with `x = n+h`, `y = m+h`,
    /// where `z = zeta_3^(n-m)` if `zeta3`, else 1. The `zeta3` weighting lives over `d = -3`.
    Binary { a: i64, b: i64, c: i64, shift: Rational, zeta3: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThetaError {
    #[error("quadratic form {a}x^2 + {b}xy + {c}y^2 is not positive definite")]
    Indefinite { a: i64, b: i64, c: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl ThetaRule {
    /// Natural coefficient field of the sum.
    pub fn field(&self) -> i64 {
        match self {
            ThetaRule::Binary { zeta3: true, .. } => -3,
            _ => 0,
        }
    }
}

/// `zeta_3^k` in `Q(sqrt(-3))`, `zeta_3 = (-1 + w)/2`.
fn zeta3_power(k: i64) -> QuadExtScalar {
    match k.rem_euclid(3) {
        0 => QuadExtScalar::one(),
        1 => QuadExtScalar::new(rat(-1, 2), rat(1, 2)),
        _ => QuadExtScalar::new(rat(-1, 2), rat(-1, 2)),
    }
}

/// Integer range covering every `m` with `|m + h| <= r`.
fn index_range(h: &Rational, r: f64) -> std::ops::RangeInclusive<i64> {
    let hf = h.to_f64().unwrap_or(0.0);
    let lo = (-r - hf).floor() as i64 - 1;
    let hi = (r - hf).ceil() as i64 + 1;
    lo..=hi
}

/// Expands a theta series to precision `P` by enumerating lattice points with `Q(x) < P`.
pub fn theta_sum(rule: &ThetaRule, precision: &Rational) -> Result<PuiseuxSeries, ThetaError> {
    let pf = precision.to_f64().unwrap_or(0.0).max(0.0);
    let mut terms: Vec<(Rational, QuadExtScalar)> = vec![];
    match rule {
        ThetaRule::OneDim { shift, alternating } => {
            for m in index_range(shift, pf.sqrt()) {
                let x = int(m) + shift;
                let e = &x * &x;
                if e < *precision {
                    let sign = if *alternating && m % 2 != 0 { -1 } else { 1 };
                    terms.push((e, QuadExtScalar::from_int(sign)));
                }
            }
        }
        &ThetaRule::Binary { a, b, c, ref shift, zeta3 } => {
            let disc = 4 * a * c - b * b;
            if a <= 0 || disc <= 0 {
                return Err(ThetaError::Indefinite { a, b, c });
            }
            // Q >= (disc / 4a) y^2 and Q >= (disc / 4c) x^2
            let ry = (4.0 * a as f64 * pf / disc as f64).sqrt();
            let rx = (4.0 * c as f64 * pf / disc as f64).sqrt();
            for n in index_range(shift, rx) {
                let x = int(n) + shift;
                for m in index_range(shift, ry) {
                    let y = int(m) + shift;
                    let e = int(a) * &x * &x + int(b) * &x * &y + int(c) * &y * &y;
                    debug_assert!(!e.is_negative());
                    if e < *precision {
                        let z = if zeta3 { zeta3_power(n - m) } else { QuadExtScalar::one() };
                        terms.push((e, z));
                    }
                }
            }
        }
    }
    Ok(PuiseuxSeries::from_exponents(rule.field(), terms, precision.clone())?)
}
