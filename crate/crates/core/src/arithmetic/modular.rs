use num_integer::Integer;

use crate::qseries::{int, rat, Rational};

/// Jacobi symbol `(a/n)` for odd `n`; negative `n` is replaced by `|n|`, so `(a/-n) = (a/n)`.
pub fn jacobi(a: i64, n: i64) -> i64 {
    let n = n.abs();
    assert!(n % 2 == 1, "Jacobi symbol needs odd n, got {n}");
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModularError {
    #[error("determinant of ({0},{1};{2},{3}) is not 1")]
    Determinant(i64, i64, i64, i64),
    #[error("multiplier formula needs c > 0 or a translation (c = 0, d = 1)")]
    NotNormalized,
    #[error("eta quotient has half-integral weight")]
    HalfIntegralWeight,
    #[error("matrix is not in Gamma0({0})")]
    NotInGroup(u64),
}

/// An element `(a, b; c, d)` of SL(2, Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GroupElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, ModularError> {
        if a * d - b * c != 1 {
            return Err(ModularError::Determinant(a, b, c, d));
        }
        Ok(GroupElement { a, b, c, d })
    }

    pub fn identity() -> Self {
        GroupElement { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GroupElement {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn neg(&self) -> Self {
        GroupElement { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn inverse(&self) -> Self {
        GroupElement { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn in_gamma0(&self, n: u64) -> bool {
        self.c % n as i64 == 0
    }

    /// Representative of `+-g` with `c > 0`, or `c = 0, d = 1`; the flag says whether `g` was negated.
    pub fn normalized(&self) -> (Self, bool) {
        if self.c < 0 || (self.c == 0 && self.d < 0) {
            (self.neg(), true)
        } else {
            (*self, false)
        }
    }
}

/// Automorphy factor accompanying the root of unity in `eta(g tau)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Automorphy {
    /// `g` is a translation; no factor.
    Translation,
    /// The factor `[-i(c tau + d)]^(1/2)` with the principal branch.
    HalfWeight,
}

/// `eta(g tau) = sign * zeta24^exponent * (automorphy) * eta(tau)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaMultiplier {
    pub sign: i64,
    pub zeta24_exponent: u32,
    pub automorphy: Automorphy,
}

impl EtaMultiplier {
    /// The whole root of unity as a power of `zeta24` (the sign folds in as `zeta24^12`).
    pub fn root_of_unity(&self) -> u32 {
        let s = if self.sign < 0 { 12 } else { 0 };
        (self.zeta24_exponent + s) % 24
    }
}

fn mod24(x: i128) -> u32 {
    x.rem_euclid(24) as u32
}

/// The eta multiplier by the two-branch formula (`c` odd / `d` odd), for `c > 0`,
/// plus the translation case `eta(tau + b) = zeta24^b eta(tau)`.
pub fn eta_multiplier(g: &GroupElement) -> Result<EtaMultiplier, ModularError> {
    let (a, b, c, d) = (g.a as i128, g.b as i128, g.c as i128, g.d as i128);
    if c == 0 {
        if d != 1 {
            return Err(ModularError::NotNormalized);
        }
        return Ok(EtaMultiplier { sign: 1, zeta24_exponent: mod24(b), automorphy: Automorphy::Translation });
    }
    if c < 0 {
        return Err(ModularError::NotNormalized);
    }
    let (sign, e) = if c % 2 != 0 {
        (jacobi(g.d, g.c), 3 * (1 - c) + b * d * (1 - c * c) + c * (a + d))
    } else {
        (jacobi(g.c, g.d), 3 * d + a * c * (1 - d * d) + d * (b - c))
    };
    Ok(EtaMultiplier { sign, zeta24_exponent: mod24(e), automorphy: Automorphy::HalfWeight })
}

/// Both branches of the formula when `c` and `d` are both odd (they must agree).
pub fn eta_multiplier_branches(g: &GroupElement) -> Option<(EtaMultiplier, EtaMultiplier)> {
    if g.c <= 0 || g.c % 2 == 0 || g.d % 2 == 0 {
        return None;
    }
    let (a, b, c, d) = (g.a as i128, g.b as i128, g.c as i128, g.d as i128);
    let odd_c = EtaMultiplier {
        sign: jacobi(g.d, g.c),
        zeta24_exponent: mod24(3 * (1 - c) + b * d * (1 - c * c) + c * (a + d)),
        automorphy: Automorphy::HalfWeight,
    };
    let odd_d = EtaMultiplier {
        sign: jacobi(g.c, g.d),
        zeta24_exponent: mod24(3 * d + a * c * (1 - d * d) + d * (b - c)),
        automorphy: Automorphy::HalfWeight,
    };
    Some((odd_c, odd_d))
}

/// An eta quotient `prod [delta]^r` as `(delta, r)` pairs.
pub type EtaFactors = [(u64, i64)];

/// Level of an eta quotient: lcm of the `delta`s.
pub fn eta_level(factors: &EtaFactors) -> u64 {
    factors.iter().fold(1, |l, &(delta, _)| l.lcm(&delta))
}

/// Character of an integral-weight eta quotient on `Gamma0(N)`, `N` divisible by every `delta`:
/// returns `e` with `f(g tau) = zeta24^e (c tau + d)^k f(tau)`.
///
/// Each `[delta](g tau)` equals `eta` at `(a, b delta; c/delta, d)` applied to `delta tau`; the
/// half-weight factors multiply to `(-i)^k (c tau + d)^k`.
pub fn eta_quotient_character(factors: &EtaFactors, g: &GroupElement) -> Result<u32, ModularError> {
    let twice_k: i64 = factors.iter().map(|&(_, r)| r).sum();
    if twice_k % 2 != 0 {
        return Err(ModularError::HalfIntegralWeight);
    }
    let k = twice_k / 2;
    let level = eta_level(factors);
    if !g.in_gamma0(level) {
        return Err(ModularError::NotInGroup(level));
    }
    let (h, flipped) = g.normalized();
    let mut e: i64 = 0;
    for &(delta, r) in factors {
        let gd = GroupElement { a: h.a, b: h.b * delta as i64, c: h.c / delta as i64, d: h.d };
        let m = eta_multiplier(&gd)?;
        e += r * m.root_of_unity() as i64;
    }
    if h.c != 0 {
        e += 18 * k; // (-i)^k
    }
    if flipped && k % 2 != 0 {
        e += 12;
    }
    Ok(e.rem_euclid(24) as u32)
}

/// A cusp `a/d` of `Gamma0(N)` with its width `N / (d * gcd(d, N/d))`; `1/N` stands for infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspData {
    pub level: u64,
    pub a: i64,
    pub d: u64,
    pub width: u64,
}

impl CuspData {
    pub fn new(level: u64, a: i64, d: u64) -> Self {
        assert!(level.is_multiple_of(d), "cusp denominator must divide the level");
        let width = level / (d * d.gcd(&(level / d)));
        CuspData { level, a, d, width }
    }

    pub fn infinity(level: u64) -> Self {
        Self::new(level, 1, level)
    }

    pub fn is_infinity(&self) -> bool {
        self.d == self.level
    }
}

/// Inequivalent cusps of `Gamma0(N)`: for each `d | N`, residues `a` mod `gcd(d, N/d)` coprime to it.
pub fn cusps_of_gamma0(n: u64) -> Vec<CuspData> {
    let mut out = vec![];
    for d in crate::arithmetic::divisors(n) {
        let g = d.gcd(&(n / d));
        for a in 1..=g.max(1) {
            if a.gcd(&g) == 1 && a.gcd(&d) == 1 {
                out.push(CuspData::new(n, a as i64, d));
            }
        }
    }
    out
}

/// `ord_s([delta]) = gcd(delta, d)^2 / (24 delta)` at a cusp with denominator `d`.
pub fn eta_order_at_cusp(delta: u64, d: u64) -> Rational {
    let g = delta.gcd(&d) as i64;
    rat(g * g, 24 * delta as i64)
}

/// Order of an eta quotient at a cusp of `Gamma0(N)`, in that cusp's local parameter
/// (the `Gamma(1)` order scaled by the width).
pub fn eta_quotient_order_at_cusp(factors: &EtaFactors, cusp: &CuspData) -> Rational {
    let mut acc = int(0);
    for &(delta, r) in factors {
        assert!(cusp.level.is_multiple_of(delta), "delta must divide the level");
        acc += int(r) * eta_order_at_cusp(delta, cusp.d);
    }
    acc * int(cusp.width as i64)
}

/// `[Gamma(1) : Gamma0(N)] = N prod_{p | N} (1 + 1/p)`.
pub fn gamma0_index(n: u64) -> u64 {
    let mut idx = n;
    for (p, _) in crate::arithmetic::factorize(n) {
        idx = idx / p * (p + 1);
    }
    idx
}

/// Generating sets, each listed up to sign. The `Gamma0(3)` set is the minimal one
/// `+-(1,1;0,1), +-(1,1;-3,-2)`; for levels 2 and 4 the standard sets are used.
pub fn gamma0_generators(n: u64) -> Vec<GroupElement> {
    let t = GroupElement::new(1, 1, 0, 1).expect("det 1");
    let second = match n {
        1 => GroupElement::new(0, -1, 1, 0),
        2 => GroupElement::new(1, -1, 2, -1),
        3 => GroupElement::new(1, 1, -3, -2),
        4 => GroupElement::new(1, -1, 4, -3),
        _ => panic!("no generating set recorded for level {n}"),
    }
    .expect("det 1");
    vec![t, t.neg(), second, second.neg()]
}
