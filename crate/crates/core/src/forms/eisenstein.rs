use num_traits::Zero;

use crate::arithmetic::{l_value_at_one_minus, sigma_table, DirichletCharacter, WeightVector};
use crate::qseries::{ceil_i64, int, PuiseuxSeries, QuadExtScalar, Rational, SeriesError};

/// `c0 + scale * sum_{n>=1} sigma_k(n; w) q^(n step)`, or the conjugate sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSeries {
    pub k: u32,
    pub weights: WeightVector,
    pub conjugate: bool,
    pub constant: QuadExtScalar,
    pub scale: QuadExtScalar,
    pub step: Rational,
}

impl DivisorSeries {
    /// `1 + scale * sum sigma_k(n; w) q^n`, the shape of every golden monomial expansion.
    pub fn normalized(k: u32, weights: WeightVector, conjugate: bool, scale: Rational) -> Self {
        DivisorSeries {
            k,
            weights,
            conjugate,
            constant: QuadExtScalar::one(),
            scale: QuadExtScalar::from_rational(scale),
            step: int(1),
        }
    }

    pub fn expand(&self, d: i64, precision: &Rational) -> Result<PuiseuxSeries, SeriesError> {
        let nmax = ceil_i64(&(precision / &self.step)).max(1) as usize - 1;
        let table = sigma_table(self.k, &self.weights, self.conjugate, nmax);
        let mut terms = vec![(int(0), self.constant.clone())];
        for (n, s) in table.into_iter().enumerate().skip(1) {
            if !s.is_zero() {
                terms.push((int(n as i64) * &self.step, self.scale.scale(&s)));
            }
        }
        PuiseuxSeries::from_exponents(d, terms, precision.clone())
    }
}

/// The kernel `sum_{e,m >= 1} psi(e) phi(m) m^(k-1) q^(e m)`.
pub fn eisenstein_kernel(
    k: u32,
    psi: &DirichletCharacter,
    phi: &DirichletCharacter,
    precision: &Rational,
) -> Result<PuiseuxSeries, SeriesError> {
    let d = merged_field(psi, phi)?;
    let nmax = ceil_i64(precision).max(1) as usize - 1;
    let mut coeffs = vec![QuadExtScalar::zero(); nmax + 1];
    for m in 1..=nmax {
        let fm = phi.value(m as i64);
        if fm.is_zero() {
            continue;
        }
        let base = fm.scale(&Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(m), k as usize - 1)));
        for e in 1..=nmax / m {
            let pe = psi.value(e as i64);
            if !pe.is_zero() {
                coeffs[e * m] = coeffs[e * m].add(&pe.mul(&base, d));
            }
        }
    }
    let terms = coeffs.into_iter().enumerate().map(|(n, c)| (n as i64, c));
    PuiseuxSeries::from_terms(d, 1, terms, precision.clone())
}

fn merged_field(psi: &DirichletCharacter, phi: &DirichletCharacter) -> Result<i64, SeriesError> {
    match (psi.field(), phi.field()) {
        (a, b) if a == b => Ok(a),
        (0, b) => Ok(b),
        (a, 0) => Ok(a),
        (a, b) => Err(SeriesError::FieldMismatch(a, b)),
    }
}

/// `E_k^{psi,phi}`: `1 + (2/L(1-k, phi)) * kernel(1, phi)` when `psi` is the trivial
/// character of period 1, and `2 * kernel(psi, phi)` otherwise.
pub fn eisenstein_series(
    k: u32,
    psi: &DirichletCharacter,
    phi: &DirichletCharacter,
    precision: &Rational,
) -> Result<PuiseuxSeries, SeriesError> {
    assert!(k >= 1, "weight must be positive");
    let kernel = eisenstein_kernel(k, psi, phi, precision)?;
    let d = kernel.d();
    if psi.is_trivial() {
        let l = l_value_at_one_minus(k, phi);
        let c = QuadExtScalar::from_int(2).mul(&l.inv(d).ok_or(SeriesError::DivisionByZero)?, d);
        kernel.scale(&c).add(&PuiseuxSeries::one(d, precision.clone()))
    } else {
        Ok(kernel.scale_rational(&int(2)))
    }
}

/// Classical level-one `E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n` for even `k >= 2`.
pub fn classical_eisenstein(k: u32, precision: &Rational) -> Result<PuiseuxSeries, SeriesError> {
    assert!(k >= 2 && k.is_multiple_of(2), "classical Eisenstein series need even k >= 2");
    let a = crate::arithmetic::eisenstein_constant(k);
    DivisorSeries::normalized(k - 1, WeightVector::ones(), false, a).expand(0, precision)
}

/// Parses a weight of the form `E<k>`, returning `k`.
pub fn parse_classical_name(name: &str) -> Option<u32> {
    let k: u32 = name.strip_prefix('E')?.parse().ok()?;
    (k >= 2 && k.is_multiple_of(2)).then_some(k)
}
