use num_traits::Zero;

use crate::qseries::{int, PuiseuxSeries, QuadExtScalar, Rational};

use super::DirichletCharacter;

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

/// `x/(e^(N x) - 1)` to order `x^(k+1)`, by inverting `(e^(N x) - 1)/x`.
fn bernoulli_kernel(n: i64, k: u32, d: i64) -> PuiseuxSeries {
    let p = int(k as i64 + 1);
    let terms = (0..=k).map(|j| (j as i64, num_traits::pow(int(n), j as usize + 1) / factorial(j + 1)));
    PuiseuxSeries::from_rationals(d, 1, terms, p).expect("valid series").invert().expect("unit constant term")
}

/// Classical Bernoulli number `B_k` from `x/(e^x - 1)`, so `B_1 = -1/2`.
pub fn bernoulli(k: u32) -> Rational {
    bernoulli_kernel(1, k, 0).coeff_at(k as i64) * factorial(k)
}

/// Generalized Bernoulli number from
/// `sum B_{k,phi} x^k/k! = x/(e^(N x) - 1) * sum_{a=0}^{N-1} phi(a) e^(a x)`.
pub fn generalized_bernoulli(k: u32, phi: &DirichletCharacter) -> QuadExtScalar {
    let n = phi.modulus() as i64;
    let d = phi.field();
    let p = int(k as i64 + 1);
    let mut exps = vec![QuadExtScalar::zero(); k as usize + 1];
    for a in 0..n {
        let v = phi.value(a);
        if v.is_zero() {
            continue;
        }
        for (m, slot) in exps.iter_mut().enumerate() {
            let am = if m == 0 { int(1) } else { num_traits::pow(int(a), m) };
            *slot = slot.add(&v.scale(&(am / factorial(m as u32))));
        }
    }
    let g = PuiseuxSeries::from_terms(d, 1, exps.into_iter().enumerate().map(|(m, c)| (m as i64, c)), p)
        .expect("valid series");
    let prod = bernoulli_kernel(n, k, d).mul(&g).expect("same field");
    prod.coeff(&int(k as i64)).scale(&factorial(k))
}

/// `L(1-k, phi) = -B_{k,phi}/k`.
pub fn l_value_at_one_minus(k: u32, phi: &DirichletCharacter) -> QuadExtScalar {
    assert!(k >= 1);
    generalized_bernoulli(k, phi).scale(&Rational::new((-1).into(), (k as i64).into()))
}

/// Normalizing constant `a_k = -2k/B_k` of `E_k = 1 + a_k sum sigma_{k-1}(n) q^n`.
pub fn eisenstein_constant(k: u32) -> Rational {
    let b = bernoulli(k);
    assert!(!b.is_zero(), "B_{k} vanishes");
    int(-2 * k as i64) / b
}
