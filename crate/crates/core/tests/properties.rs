use modforms::arithmetic::{
    eta_quotient_character, eta_quotient_order_at_cusp, gamma0_generators, gamma0_index, sigma, sigma_conj,
    sigma_table, CuspData, DirichletCharacter, WeightVector,
};
use modforms::forms::Registry;
use modforms::identity::catalog;
use modforms::qseries::{int, rat, PuiseuxSeries, QuadExtScalar, Rational};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// A series over `Q(sqrt(d))` in `q^(1/denom)` with a few terms and its own precision.
fn series(d: i64) -> impl Strategy<Value = PuiseuxSeries> {
    (
        prop::sample::select(vec![1u64, 2, 4]),
        prop::collection::vec((0i64..12, small_rational(), small_rational()), 0..6),
        6i64..10,
    )
        .prop_map(move |(denom, terms, p)| {
            let terms = terms.into_iter().map(|(n, a, b)| (n, QuadExtScalar::new(a, if d == 0 { int(0) } else { b })));
            PuiseuxSeries::from_terms(d, denom, terms, int(p)).unwrap()
        })
}

/// A unit: nonzero rational constant term.
fn unit_series() -> impl Strategy<Value = PuiseuxSeries> {
    (series(0), small_rational().prop_filter("nonzero", |c| *c != int(0))).prop_map(|(s, c)| {
        let head = PuiseuxSeries::constant(QuadExtScalar::from_rational(c), 0, s.precision().clone());
        let tail = s.truncate(s.precision()).shift(&int(1)).unwrap().truncate(s.precision());
        head.add(&tail).unwrap()
    })
}

fn same(a: &PuiseuxSeries, b: &PuiseuxSeries) -> bool {
    a.first_difference(b).is_none() && a.precision() == b.precision()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(
        (a, b, c) in prop::sample::select(vec![0i64, -1, -3, 2]).prop_flat_map(|d| (series(d), series(d), series(d)))
    ) {
        prop_assert!(same(&a.add(&b).unwrap(), &b.add(&a).unwrap()));
        prop_assert!(same(&a.add(&b).unwrap().add(&c).unwrap(), &a.add(&b.add(&c).unwrap()).unwrap()));
        prop_assert!(same(&a.mul(&b).unwrap(), &b.mul(&a).unwrap()));
        prop_assert!(same(&a.mul(&b).unwrap().mul(&c).unwrap(), &a.mul(&b.mul(&c).unwrap()).unwrap()));
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(left.first_difference(&right).is_none());
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule(a in series(0), b in series(0)) {
        let lhs = a.mul(&b).unwrap().derive();
        let rhs = a.derive().mul(&b).unwrap().add(&a.mul(&b.derive()).unwrap()).unwrap();
        prop_assert!(lhs.first_difference(&rhs).is_none());
    }

    #[test]
    fn inverse_of_a_unit(u in unit_series()) {
        let one = PuiseuxSeries::one(0, u.precision().clone());
        prop_assert!(u.mul(&u.invert().unwrap()).unwrap().first_difference(&one).is_none());
    }

    #[test]
    fn powers_add(u in unit_series(), m in -3i64..4, n in -3i64..4) {
        let lhs = u.pow(m + n).unwrap();
        let rhs = u.pow(m).unwrap().mul(&u.pow(n).unwrap()).unwrap();
        prop_assert!(lhs.first_difference(&rhs).is_none());
    }

    #[test]
    fn rational_powers_add(s in series(0), a in 1i64..4, b in 1i64..4) {
        // constant term 1 keeps every rational power inside Q
        let one = PuiseuxSeries::one(0, s.precision().clone());
        let u = one.add(&s.shift(&int(1)).unwrap().truncate(s.precision())).unwrap();
        let (x, y) = (rat(a, 3), rat(b, 2));
        let lhs = u.rational_pow(&(&x + &y)).unwrap();
        let rhs = u.rational_pow(&x).unwrap().mul(&u.rational_pow(&y).unwrap()).unwrap();
        prop_assert!(lhs.first_difference(&rhs).is_none());
    }

    #[test]
    fn sigma_matches_enumeration(k in 0u32..5, n in 1u64..400, w in prop::collection::vec(-3i64..4, 1..7)) {
        let wv = WeightVector::from_ints(&w);
        let m = w.len() as u64;
        let mut direct = int(0);
        let mut conj = int(0);
        for d in 1..=n {
            if n % d == 0 {
                let pk = int(d.pow(k) as i64);
                direct += int(w[(d % m) as usize]) * &pk;
                conj += int(w[((n / d) % m) as usize]) * &pk;
            }
        }
        prop_assert_eq!(sigma(k, n, &wv), direct);
        prop_assert_eq!(sigma_conj(k, n, &wv), conj);
    }

    #[test]
    fn sigma_table_matches_pointwise(k in 0u32..4, w in prop::collection::vec(-3i64..4, 1..6), conjugate: bool) {
        let wv = WeightVector::from_ints(&w);
        let t = sigma_table(k, &wv, conjugate, 60);
        for n in 1..=60u64 {
            let want = if conjugate { sigma_conj(k, n, &wv) } else { sigma(k, n, &wv) };
            prop_assert_eq!(&t[n as usize], &want);
        }
    }

    #[test]
    fn sigma_multiplicative_for_characters(k in 0u32..4, a in 1u64..60, b in 1u64..60) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        let chi = DirichletCharacter::kronecker(-4).to_weights().unwrap();
        prop_assert_eq!(sigma(k, a * b, &chi), sigma(k, a, &chi) * sigma(k, b, &chi));
    }
}

#[test]
fn precision_doubling_keeps_coefficients() {
    let reg = Registry::global();
    for name in ["A4", "E4", "Delta", "theta2", "C3", "j", "Khat", "2a.A", "g0p_2.E"] {
        let low = reg.eval_form(name, &int(15)).unwrap();
        let high = reg.eval_form(name, &int(30)).unwrap();
        assert_eq!(low.precision(), &int(15));
        assert!(low.first_difference(&high).is_none(), "{name}");
        assert_eq!(high.truncate(&int(15)), low, "{name}");
    }
}

/// Level, eta factors and the Dirichlet character of the form (`None` for trivial).
type CharacterCase = (u64, &'static [(u64, i64)], Option<i64>);

/// Residue of `zeta24^e`: 0 for +1, 12 for -1.
fn sign_exponent(s: i64) -> u32 {
    if s == 1 {
        0
    } else {
        12
    }
}

#[test]
fn characters_on_generators() {
    // (level, eta factors, Dirichlet character of the form);
    // A4^2, A4^4, A3^k are not eta quotients; A3^3 = B3^3 + C3^3 inherits its character
    let cases: [CharacterCase; 8] = [
        (2, &[(1, 16), (2, -8)], None),
        (2, &[(2, 16), (1, -8)], None),
        (3, &[(1, 9), (3, -3)], Some(-3)),
        (3, &[(3, 9), (1, -3)], Some(-3)),
        (4, &[(2, 10), (1, -4), (4, -4)], Some(-4)),
        (4, &[(2, 20), (1, -8), (4, -8)], None),
        (4, &[(1, 8), (2, -4)], None),
        (4, &[(4, 8), (2, -4)], None),
    ];
    for (level, factors, chi) in cases {
        for g in gamma0_generators(level) {
            let want = match chi {
                None => 0,
                Some(disc) => {
                    let c = DirichletCharacter::kronecker(disc);
                    sign_exponent(if c.value(g.d).rational_part == int(1) { 1 } else { -1 })
                }
            };
            assert_eq!(eta_quotient_character(factors, &g).unwrap(), want, "level {level} {factors:?} at {g:?}");
        }
    }
}

/// `B_r` and `A_2` as eta quotients; `A_4`, `A_3` vanish only at the elliptic point.
fn b_factors(r: u32) -> Vec<(u64, i64)> {
    match r {
        4 | 2 => vec![(1, 4), (2, -2)],
        3 => vec![(1, 3), (3, -1)],
        _ => unreachable!(),
    }
}

#[test]
fn valence_totals_for_monomials() {
    let reg = Registry::global();
    let mut seen = 0;
    for rec in catalog() {
        let Some(m) = rec.monomial else { continue };
        seen += 1;
        let r = m.r as i64;
        let level = match m.r {
            4 => 2,
            3 => 3,
            _ => 4,
        };
        // infinity: read off the q-series
        let field = if m.r == 4 { 2 } else { 0 };
        let src = format!("(* (^ A{r} {}) (^ B{r} {}) (^ C{r} {}))", m.a, m.b, m.c);
        let s = reg.eval_str(&src, &int(4), field).unwrap();
        let at_infinity = s.valuation().unwrap();
        assert_eq!(at_infinity, rat(m.c as i64, r), "{}", rec.id);
        // cusp 0: only B vanishes there
        let b: Vec<(u64, i64)> = b_factors(m.r).into_iter().map(|(d, e)| (d, e * m.b as i64)).collect();
        let at_zero = eta_quotient_order_at_cusp(&b, &CuspData::new(level, 1, 1));
        assert_eq!(at_zero, rat(m.b as i64, r), "{}", rec.id);
        // A's zero: the cusp 1/2 for r = 2, the elliptic point otherwise (declared)
        let at_a = if m.r == 2 {
            let a = [(2, 10 * m.a as i64), (1, -4 * m.a as i64), (4, -4 * m.a as i64)];
            eta_quotient_order_at_cusp(&a, &CuspData::new(4, 1, 2))
        } else {
            rat(m.a as i64, r)
        };
        let total = at_infinity + at_zero + at_a;
        assert_eq!(total, rat(m.weight() as i64 * gamma0_index(level) as i64, 12), "{}", rec.id);
    }
    assert!(seen >= 30);
}
