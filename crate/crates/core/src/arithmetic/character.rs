use num_integer::Integer;

use crate::qseries::{QuadExtScalar, Rational};

use super::modular::jacobi;
use super::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacterError {
    #[error("character table must have length equal to its modulus")]
    Length,
    #[error("value at {0} must vanish exactly when gcd(residue, N) > 1")]
    Support(u64),
    #[error("not multiplicative at {0}*{1}")]
    NotMultiplicative(u64, u64),
    #[error("chi(-1) must be +1 or -1")]
    Parity,
    #[error("unknown character name {0:?}")]
    UnknownName(String),
}

/// A Dirichlet character mod `N` with values in `Q(w)`, `w^2 = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<QuadExtScalar>,
    parity: i8,
    d: i64,
}

impl DirichletCharacter {
    /// Validates the table: zero exactly off the units, completely multiplicative on units,
    /// and `chi(-1) = +-1`.
    pub fn from_values(values: Vec<QuadExtScalar>, d: i64) -> Result<Self, CharacterError> {
        let n = values.len() as u64;
        if n == 0 {
            return Err(CharacterError::Length);
        }
        for r in 0..n {
            let unit = r.gcd(&n) == 1 || n == 1;
            if unit == values[r as usize].is_zero() {
                return Err(CharacterError::Support(r));
            }
        }
        for a in 0..n {
            for b in a..n {
                let ab = values[a as usize].mul(&values[b as usize], d);
                if ab != values[((a * b) % n) as usize] {
                    return Err(CharacterError::NotMultiplicative(a, b));
                }
            }
        }
        let m1 = &values[((n as i64 - 1).rem_euclid(n as i64)) as usize];
        let parity = if m1.is_one() {
            1
        } else if *m1 == QuadExtScalar::from_int(-1) {
            -1
        } else {
            return Err(CharacterError::Parity);
        };
        Ok(DirichletCharacter { modulus: n, values, parity, d })
    }

    /// The trivial character of period 1.
    pub fn trivial() -> Self {
        Self::from_values(vec![QuadExtScalar::one()], 0).expect("valid")
    }

    /// The principal character `1_N`.
    pub fn principal(n: u64) -> Self {
        let vals = (0..n).map(|r| QuadExtScalar::from_int(if r.gcd(&n) == 1 { 1 } else { 0 })).collect();
        Self::from_values(vals, 0).expect("valid")
    }

    /// The Kronecker symbol `(D/.)` for `D = -3` or `-4`.
    pub fn kronecker(disc: i64) -> Self {
        let n = disc.unsigned_abs();
        let vals = (0..n)
            .map(|r| {
                let v = if r.gcd(&n) != 1 {
                    0
                } else if disc == -4 {
                    if r % 4 == 1 {
                        1
                    } else {
                        -1
                    }
                } else {
                    // (-3/r) = (r/3) by reciprocity
                    jacobi(r as i64, 3)
                };
                QuadExtScalar::from_int(v)
            })
            .collect();
        Self::from_values(vals, 0).expect("valid")
    }

    /// Accepts `1`, `1_N`, `chi-3`, `chi-4`.
    pub fn parse(name: &str) -> Result<Self, CharacterError> {
        match name {
            "1" => Ok(Self::trivial()),
            "chi-3" => Ok(Self::kronecker(-3)),
            "chi-4" => Ok(Self::kronecker(-4)),
            _ => name
                .strip_prefix("1_")
                .and_then(|n| n.parse::<u64>().ok())
                .filter(|&n| n > 0)
                .map(Self::principal)
                .ok_or_else(|| CharacterError::UnknownName(name.to_string())),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn field(&self) -> i64 {
        self.d
    }

    pub fn values(&self) -> &[QuadExtScalar] {
        &self.values
    }

    pub fn value(&self, n: i64) -> &QuadExtScalar {
        &self.values[n.rem_euclid(self.modulus as i64) as usize]
    }

    /// Trivial of period 1 (the unit character `1`, as opposed to `1_N`).
    pub fn is_trivial(&self) -> bool {
        self.modulus == 1
    }

    /// The rational weight vector with the same values, if all values are rational.
    pub fn to_weights(&self) -> Option<WeightVector> {
        let vals: Option<Vec<Rational>> =
            self.values.iter().map(|v| v.is_rational().then(|| v.rational_part.clone())).collect();
        WeightVector::new(vals?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_characters() {
        let c3 = DirichletCharacter::kronecker(-3);
        assert_eq!(c3.to_weights().unwrap(), WeightVector::from_ints(&[0, 1, -1]));
        assert_eq!(c3.parity(), -1);
        let c4 = DirichletCharacter::kronecker(-4);
        assert_eq!(c4.to_weights().unwrap(), WeightVector::from_ints(&[0, 1, 0, -1]));
        assert_eq!(DirichletCharacter::principal(4).parity(), 1);
        assert!(DirichletCharacter::trivial().is_trivial());
    }

    #[test]
    fn rejects_non_characters() {
        let bad = [0, 1, 1, 1].iter().map(|&v| QuadExtScalar::from_int(v)).collect();
        assert_eq!(DirichletCharacter::from_values(bad, 0), Err(CharacterError::Support(2)));
        let bad = [0, 1, 2].iter().map(|&v| QuadExtScalar::from_int(v)).collect();
        assert!(DirichletCharacter::from_values(bad, 0).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!(DirichletCharacter::parse("1_3").unwrap().modulus(), 3);
        assert!(DirichletCharacter::parse("chi-5").is_err());
    }
}
