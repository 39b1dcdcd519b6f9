use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_traits::Signed;
use rayon::prelude::*;

use crate::arithmetic::{eisenstein_constant, l_value_at_one_minus, CharacterError, DirichletCharacter, WeightVector};
use crate::qseries::{int, rat, PuiseuxSeries, QuadExtScalar, Rational, SeriesError};

use super::eisenstein::{eisenstein_series, parse_classical_name, DivisorSeries};
use super::eta::eta_quotient_series;
use super::eval::Evaluator;
use super::expr::{parse_expr, Expr, ParseError};
use super::groups::TRIANGLE_GROUPS;
use super::theta::{theta_sum, ThetaError, ThetaRule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("unknown form {0:?}")]
    UnknownForm(String),
    #[error("precision must be positive, got {0}")]
    BadPrecision(Rational),
    #[error("could not reach precision {target} (stuck at {reached})")]
    PrecisionLoss { target: Box<Rational>, reached: Box<Rational> },
    #[error("the generator w appears in an expression over Q")]
    RationalContext,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("hypergeometric: {0}")]
    Hypergeometric(String),
}

/// One term `c * E_k^{psi,phi}(q^m)` of an Eisenstein combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinTerm {
    pub coeff: Rational,
    pub k: u32,
    pub psi: String,
    pub phi: String,
    pub subst: u64,
}

/// A way of producing a form's q-expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constructor {
    EtaQuotient { factors: Vec<(u64, i64)>, prefactor: QuadExtScalar },
    ThetaSum(ThetaRule),
    Divisor(DivisorSeries),
    EisensteinCombo(Vec<EisensteinTerm>),
    Expr(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormDescriptor {
    pub name: String,
    /// The first route is the canonical one; the others exist to be cross-checked against it.
    pub routes: Vec<Constructor>,
    pub weight: Rational,
    pub group: String,
    pub d: i64,
    /// Order of vanishing at infinity, in powers of `q`.
    pub order: Rational,
}

/// Outcome of comparing one alternative route with the canonical route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckOutcome {
    pub name: String,
    pub route: usize,
    pub pass: bool,
    pub first_difference: Option<(Rational, QuadExtScalar, QuadExtScalar)>,
    pub error: Option<String>,
}

/// The named-form vocabulary with a shared memo table.
pub struct Registry {
    descriptors: BTreeMap<String, FormDescriptor>,
    memo: RwLock<HashMap<String, PuiseuxSeries>>,
}

fn ex(src: &str) -> Constructor {
    Constructor::Expr(parse_expr(src).unwrap_or_else(|e| panic!("built-in expression {src:?}: {e}")))
}

fn eta(factors: &[(u64, i64)], prefactor: QuadExtScalar) -> Constructor {
    Constructor::EtaQuotient { factors: factors.to_vec(), prefactor }
}

fn eis(coeff: Rational, k: u32, psi: &str, phi: &str, subst: u64) -> EisensteinTerm {
    EisensteinTerm { coeff, k, psi: psi.into(), phi: phi.into(), subst }
}

fn divisor(k: u32, w: &str, conjugate: bool, scale: Rational) -> Constructor {
    Constructor::Divisor(DivisorSeries::normalized(k, WeightVector::parse(w).expect("weights"), conjugate, scale))
}

fn c(n: i64) -> QuadExtScalar {
    QuadExtScalar::from_int(n)
}

struct Builder(BTreeMap<String, FormDescriptor>);

impl Builder {
    fn add(&mut self, name: &str, weight: Rational, group: &str, d: i64, order: Rational, routes: Vec<Constructor>) {
        let desc = FormDescriptor { name: name.into(), routes, weight, group: group.into(), d, order };
        assert!(self.0.insert(name.into(), desc).is_none(), "duplicate form {name}");
    }
}

fn classical_routes(k: u32) -> Vec<Constructor> {
    vec![
        divisor(k - 1, "1", false, eisenstein_constant(k)),
        Constructor::EisensteinCombo(vec![eis(int(1), k, "1", "1", 1)]),
    ]
}

fn standard_descriptors() -> BTreeMap<String, FormDescriptor> {
    let mut b = Builder(BTreeMap::new());
    let half = rat(1, 2);

    b.add("theta2", half.clone(), "Gamma0(4)", 0, rat(1, 4), vec![
        Constructor::ThetaSum(ThetaRule::OneDim { shift: rat(1, 2), alternating: false }),
        eta(&[(4, 2), (2, -1)], c(2)),
    ]);
    b.add("theta3", half.clone(), "Gamma0(4)", 0, int(0), vec![
        Constructor::ThetaSum(ThetaRule::OneDim { shift: int(0), alternating: false }),
        eta(&[(2, 5), (1, -2), (4, -2)], c(1)),
    ]);
    b.add("theta4", half, "Gamma0(4)", 0, int(0), vec![
        Constructor::ThetaSum(ThetaRule::OneDim { shift: int(0), alternating: true }),
        eta(&[(1, 2), (2, -1)], c(1)),
    ]);

    let mut e2 = classical_routes(2);
    e2.push(ex("(/ (d Delta) Delta)"));
    b.add("E2", int(2), "Gamma(1)", 0, int(0), e2);
    let mut e4 = classical_routes(4);
    e4.push(ex("(subst 1/2 (* 1/2 (+ (^ theta2 8) (^ theta3 8) (^ theta4 8))))"));
    b.add("E4", int(4), "Gamma(1)", 0, int(0), e4);
    let mut e6 = classical_routes(6);
    e6.push(ex(
        "(subst 1/2 (* 1/2 (+ (^ theta3 4) (^ theta4 4)) (+ (^ theta2 4) (^ theta3 4)) (- (^ theta4 4) (^ theta2 4))))",
    ));
    b.add("E6", int(6), "Gamma(1)", 0, int(0), e6);
    b.add("Delta", int(12), "Gamma(1)", 0, int(1), vec![
        eta(&[(1, 24)], c(1)),
        ex("(* 1/1728 (- (^ E4 3) (^ E6 2)))"),
    ]);
    b.add("j", int(0), "Gamma(1)", 0, int(-1), vec![
        ex("(/ (^ E4 3) Delta)"),
        ex("(+ 1728 (/ (^ E6 2) Delta))"),
    ]);

    // signature-4 theory on Gamma0(2)
    b.add("A4", int(1), "Gamma0(2)", 0, int(0), vec![
        ex("(/ (^ (+ (* 64 (eta 2 24)) (eta 1 24)) 1/4) (eta 1 2 2 2))"),
        ex("(^ (+ (^ theta2 4) (^ theta3 4)) 1/2)"),
    ]);
    b.add("B4", int(1), "Gamma0(2)", 0, int(0), vec![
        eta(&[(1, 4), (2, -2)], c(1)),
        ex("(^ theta4 2)"),
        ex("B2"),
    ]);
    b.add("C4", int(1), "Gamma0(2)", 2, rat(1, 4), vec![
        eta(&[(2, 4), (1, -2)], QuadExtScalar::new(int(0), int(2))),
        ex("(* w theta2 theta3)"),
        ex("(* 1/2 w (subst 1/2 C2))"),
        ex("(^ (* 2 A2 C2) 1/2)"),
    ]);

    // signature-3 theory on Gamma0(3)
    b.add("A3", int(1), "Gamma0(3)", 0, int(0), vec![
        ex("(/ (^ (+ (* 27 (eta 3 12)) (eta 1 12)) 1/3) (eta 1 1 3 1))"),
        Constructor::ThetaSum(ThetaRule::Binary { a: 1, b: 1, c: 1, shift: int(0), zeta3: false }),
        Constructor::EisensteinCombo(vec![eis(int(1), 1, "1", "chi-3", 1)]),
        divisor(0, "0,1,-1", false, int(6)),
    ]);
    b.add("B3", int(1), "Gamma0(3)", 0, int(0), vec![
        eta(&[(1, 3), (3, -1)], c(1)),
        Constructor::ThetaSum(ThetaRule::Binary { a: 1, b: 1, c: 1, shift: int(0), zeta3: true }),
    ]);
    b.add("C3", int(1), "Gamma0(3)", 0, rat(1, 3), vec![
        eta(&[(3, 3), (1, -1)], c(3)),
        Constructor::ThetaSum(ThetaRule::Binary { a: 1, b: 1, c: 1, shift: rat(1, 3), zeta3: false }),
    ]);

    // signature-2 theory on Gamma0(4)
    b.add("A2", int(1), "Gamma0(4)", 0, int(0), vec![
        ex("(/ (^ (+ (* 16 (eta 4 8)) (eta 1 8)) 1/2) (eta 2 2))"),
        eta(&[(2, 10), (1, -4), (4, -4)], c(1)),
        ex("(^ theta3 2)"),
        Constructor::EisensteinCombo(vec![eis(int(1), 1, "1", "chi-4", 1)]),
    ]);
    b.add("B2", int(1), "Gamma0(4)", 0, int(0), vec![eta(&[(1, 4), (2, -2)], c(1)), ex("(^ theta4 2)")]);
    b.add("C2", int(1), "Gamma0(4)", 0, rat(1, 2), vec![eta(&[(4, 4), (2, -2)], c(4)), ex("(^ theta2 2)")]);

    b.add("Er.4", int(2), "Gamma0(2)", 0, int(0), vec![
        ex("(/ (d (^ C4 4)) (^ C4 4))"),
        ex("(* 1/3 (- (* 4 (subst 2 E2)) E2))"),
        ex("(+ 1 (* 8 (sigma 1 -1,1)))"),
        ex("(+ 1 (* 8 (sigmac 1 -3,1)))"),
    ]);
    b.add("Er.3", int(2), "Gamma0(3)", 0, int(0), vec![
        ex("(/ (d (^ C3 3)) (^ C3 3))"),
        ex("(* 1/8 (- (* 9 (subst 3 E2)) E2))"),
        ex("(+ 1 (* 3 (sigma 1 -2,1,1)))"),
        ex("(+ 1 (* 3 (sigmac 1 -8,1,1)))"),
    ]);
    b.add("Er.2", int(2), "Gamma0(4)", 0, int(0), vec![
        ex("(/ (d (^ C2 2)) (^ C2 2))"),
        ex("(* 1/3 (- (* 4 (subst 4 E2)) (subst 2 E2)))"),
        ex("(+ 1 (* 4 (sigma 1 -1,0,1,0)))"),
        ex("(+ 1 (* 8 (sigmac 1 -3,0,1,0)))"),
        ex("(subst 2 Er.4)"),
    ]);

    b.add("t2", int(0), "Gamma0(2)", 0, int(1), vec![
        eta(&[(2, 24), (1, -24)], c(4096)),
        ex("(* 64 (/ (^ C4 4) (^ B4 4)))"),
    ]);
    b.add("t3", int(0), "Gamma0(3)", 0, int(1), vec![
        eta(&[(3, 12), (1, -12)], c(729)),
        ex("(* 27 (/ (^ C3 3) (^ B3 3)))"),
    ]);
    b.add("t4", int(0), "Gamma0(4)", 0, int(1), vec![
        eta(&[(4, 8), (1, -8)], c(256)),
        ex("(* 16 (/ (^ C2 2) (^ B2 2)))"),
    ]);

    // theta-function forms
    b.add("Khat", int(1), "Gamma0(4)", 0, int(0), vec![ex("A2"), ex("(+ 1 (* 4 (sigma 0 0,1,0,-1)))")]);
    b.add("KhatEhat", int(2), "Gamma0(4)", 0, int(0), vec![
        ex("(/ (d (^ theta2 4)) (^ theta2 4))"),
        ex("(+ 1 (* 8 (subst 2 (lambert -1))))"),
        ex("(+ 1 (* 4 (sigma 1 -1,0,1,0)))"),
        ex("(* 1/3 (- (* 4 (subst 4 E2)) (subst 2 E2)))"),
    ]);
    b.add("Ehat", int(1), "Gamma0(4)", 0, int(0), vec![ex("(/ KhatEhat Khat)")]);
    b.add("KhatGhat", int(2), "Gamma0(4)", 0, int(1), vec![
        ex("(/ (d (^ theta3 4)) (^ theta3 4))"),
        ex("(- KhatEhat (^ theta4 4))"),
    ]);
    b.add("KhatIhat", int(2), "Gamma0(4)", 0, int(1), vec![
        ex("(/ (d (^ theta4 4)) (^ theta4 4))"),
        ex("(- KhatEhat (^ theta3 4))"),
    ]);

    // weight-2 forms E for the Type II groups (and, identically, Type III)
    b.add("Erho.12", int(2), "Gamma(1)", 0, int(0), vec![ex("E2"), ex("(/ (d g1.Crho) g1.Crho)")]);
    b.add("Erho.8", int(2), "Gamma0+(2)", 0, int(0), vec![
        ex("(* 1/3 (+ (* 2 (subst 2 E2)) E2))"),
        ex("(- 1 (* 8 (sigma 1 2,1)))"),
        ex("(- 1 (* 8 (sigmac 1 3,1)))"),
        ex("(/ (d g0p_2.Crho) g0p_2.Crho)"),
    ]);
    b.add("Erho.6", int(2), "Gamma0+(3)", 0, int(0), vec![
        ex("(* 1/4 (+ (* 3 (subst 3 E2)) E2))"),
        ex("(- 1 (* 6 (sigma 1 2,1,1)))"),
        ex("(- 1 (* 6 (sigmac 1 4,1,1)))"),
        ex("(/ (d g0p_3.Crho) g0p_3.Crho)"),
    ]);

    add_triangle_triples(&mut b);
    b.0
}

/// Power-cleared triples `A^rho, B^rho, C^rho`, the weight-2 form `E`, and the weight-one roots.
fn add_triangle_triples(b: &mut Builder) {
    let triples: [(&str, &str, &str, &str, &str); 9] = [
        ("g0_2", "(^ A4 4)", "(^ B4 4)", "(^ C4 4)", "Er.4"),
        ("g0_3", "(^ A3 3)", "(^ B3 3)", "(^ C3 3)", "Er.3"),
        ("g0_4", "(^ A2 2)", "(^ B2 2)", "(^ C2 2)", "Er.2"),
        ("g1", "(^ E4 3)", "(^ E6 2)", "(* 1728 Delta)", "E2"),
        ("g0p_2", "(^ A4 8)", "(^ (- (^ B4 4) (^ C4 4)) 2)", "(* 4 (^ B4 4) (^ C4 4))", "Erho.8"),
        ("g0p_3", "(^ A3 6)", "(^ (- (^ B3 3) (^ C3 3)) 2)", "(* 4 (^ B3 3) (^ C3 3))", "Erho.6"),
        ("2a", "(+ E6 (* 24 w (eta 1 12)))", "(- E6 (* 24 w (eta 1 12)))", "(* 48 w (eta 1 12))", "Erho.12"),
        ("4a", "(^ 4a.Asq 2)", "(^ 4a.Bsq 2)", "(* 4 w (^ B4 2) (^ C4 2))", "Erho.8"),
        (
            "6a",
            "(+ (- (^ B3 3) (^ C3 3)) (* 6 w (eta 1 3 3 3)))",
            "(- (- (^ B3 3) (^ C3 3)) (* 6 w (eta 1 3 3 3)))",
            "(* 12 w (eta 1 3 3 3))",
            "Erho.6",
        ),
    ];
    for (g, (id, a, bb, cc, e)) in TRIANGLE_GROUPS.iter().zip(triples) {
        assert_eq!(g.id, id);
        let rho = int(g.rho as i64);
        let c_order = rat(1, g.upsilon as i64);
        let mut a_routes = vec![ex(a), ex(&format!("(+ {id}.Brho {id}.Crho)"))];
        if id == "4a" {
            a_routes.push(ex("(^ (+ A2 (* w C2)) 4)"));
        }
        b.add(&g.a_rho(), rho.clone(), g.label, g.d, int(0), a_routes);
        b.add(&g.b_rho(), rho.clone(), g.label, g.d, int(0), vec![ex(bb), ex(&format!("(- {id}.Arho {id}.Crho)"))]);
        b.add(&g.c_rho(), rho.clone(), g.label, g.d, c_order, vec![ex(cc)]);
        let e_alt = format!("(* {} (/ (d {id}.Crho) {id}.Crho))", g.upsilon);
        b.add(&g.e(), int(2), g.label, 0, int(0), vec![ex(e), ex(&e_alt)]);
        let root = |x: &str| ex(&format!("(^ {id}.{x}rho 1/{})", g.rho));
        b.add(&format!("{id}.A"), int(1), g.label, g.d, int(0), vec![root("A")]);
        b.add(&format!("{id}.B"), int(1), g.label, g.d, int(0), vec![root("B")]);
    }
    b.add("4a.Asq", int(2), "4a'", -1, int(0), vec![
        ex("(+ (^ B4 2) (* w (^ C4 2)))"),
        ex("(^ (+ A2 (* w C2)) 2)"),
    ]);
    b.add("4a.Bsq", int(2), "4a'", -1, int(0), vec![
        ex("(- (^ B4 2) (* w (^ C4 2)))"),
        ex("(^ (- A2 (* w C2)) 2)"),
    ]);
    // A^2, B^2 on 2a' against the caption's (B2^2 - zeta C2^2)(q^(1/2)), zeta = (-1 +- w)/2
    b.add("2a.Asq", int(2), "2a'", -3, int(0), vec![
        ex("(^ 2a.Arho 1/3)"),
        ex("(subst 1/2 (- (^ B2 2) (* (+ -1/2 (* -1/2 w)) (^ C2 2))))"),
    ]);
    b.add("2a.Bsq", int(2), "2a'", -3, int(0), vec![
        ex("(^ 2a.Brho 1/3)"),
        ex("(subst 1/2 (- (^ B2 2) (* (+ -1/2 (* 1/2 w)) (^ C2 2))))"),
    ]);
}

/// Descriptors synthesized from the name: `eta.<delta>`, `E<k>`, `E<k>.<psi>.<phi>.<N>`.
fn dynamic_descriptor(name: &str) -> Option<FormDescriptor> {
    if let Some(delta) = name.strip_prefix("eta.") {
        let delta: u64 = delta.parse().ok().filter(|&x| x > 0)?;
        return Some(FormDescriptor {
            name: name.into(),
            routes: vec![eta(&[(delta, 1)], c(1))],
            weight: rat(1, 2),
            group: format!("Gamma0({delta})"),
            d: 0,
            order: rat(delta as i64, 24),
        });
    }
    if let Some(k) = parse_classical_name(name) {
        return Some(FormDescriptor {
            name: name.into(),
            routes: classical_routes(k),
            weight: int(k as i64),
            group: "Gamma(1)".into(),
            d: 0,
            order: int(0),
        });
    }
    let parts: Vec<&str> = name.split('.').collect();
    if parts.len() != 4 {
        return None;
    }
    let k: u32 = parts[0].strip_prefix('E')?.parse().ok().filter(|&k| k > 0)?;
    let psi = DirichletCharacter::parse(parts[1]).ok()?;
    let phi = DirichletCharacter::parse(parts[2]).ok()?;
    let level: u64 = parts[3].parse().ok()?;
    if level == 0 || !level.is_multiple_of(psi.modulus() * phi.modulus()) {
        return None;
    }
    // E_k^{psi,phi} is nonzero only when psi(-1) phi(-1) = (-1)^k
    if (psi.parity() * phi.parity()) as i64 != if k.is_multiple_of(2) { 1 } else { -1 } {
        return None;
    }
    let mut routes = vec![Constructor::EisensteinCombo(vec![eis(int(1), k, parts[1], parts[2], 1)])];
    if psi.is_trivial() {
        let l = l_value_at_one_minus(k, &phi);
        if let (Some(w), true) = (phi.to_weights(), l.is_rational()) {
            routes.push(Constructor::Divisor(DivisorSeries::normalized(k - 1, w, false, int(2) / l.rational_part)));
        }
    } else if phi.is_trivial() {
        if let Some(w) = psi.to_weights() {
            let mut ds = DivisorSeries::normalized(k - 1, w, true, int(2));
            ds.constant = QuadExtScalar::zero();
            routes.push(Constructor::Divisor(ds));
        }
    }
    Some(FormDescriptor {
        name: name.into(),
        routes,
        weight: int(k as i64),
        group: format!("Gamma0({level})"),
        d: 0,
        order: if psi.is_trivial() { int(0) } else { int(1) },
    })
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}

impl Registry {
    pub fn standard() -> Self {
        Registry { descriptors: standard_descriptors(), memo: RwLock::new(HashMap::new()) }
    }

    /// A process-wide registry, so memoized expansions are shared.
    pub fn global() -> &'static Registry {
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        REGISTRY.get_or_init(Registry::standard)
    }

    /// The fixed vocabulary (dynamic `eta.*`, `E<k>`, `E<k>.psi.phi.N` names are not listed).
    pub fn names(&self) -> Vec<String> {
        self.descriptors.keys().cloned().collect()
    }

    pub fn descriptor(&self, name: &str) -> Result<FormDescriptor, FormError> {
        self.descriptors
            .get(name)
            .cloned()
            .or_else(|| dynamic_descriptor(name))
            .ok_or_else(|| FormError::UnknownForm(name.into()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.descriptor(name).is_ok()
    }

    /// The canonical expansion of `name` to precision `P`, memoized.
    pub fn eval_form(&self, name: &str, precision: &Rational) -> Result<PuiseuxSeries, FormError> {
        if !precision.is_positive() {
            return Err(FormError::BadPrecision(precision.clone()));
        }
        if let Some(s) = self.memo.read().expect("memo lock").get(name) {
            if s.precision() >= precision {
                return Ok(s.truncate(precision));
            }
        }
        let s = self.eval_route(name, 0, precision)?;
        let mut memo = self.memo.write().expect("memo lock");
        let keep = memo.get(name).is_some_and(|old| old.precision() >= s.precision());
        if !keep {
            memo.insert(name.into(), s.clone());
        }
        Ok(s)
    }

    /// Expansion of `name` by route `idx`, not memoized.
    pub fn eval_route(&self, name: &str, idx: usize, precision: &Rational) -> Result<PuiseuxSeries, FormError> {
        let desc = self.descriptor(name)?;
        let route = desc.routes.get(idx).ok_or_else(|| FormError::UnknownForm(format!("{name} route {idx}")))?;
        let s = self.eval_constructor(route, desc.d, precision)?;
        Ok(s.with_field(desc.d)?.truncate(precision))
    }

    fn eval_constructor(&self, route: &Constructor, d: i64, p: &Rational) -> Result<PuiseuxSeries, FormError> {
        Ok(match route {
            Constructor::EtaQuotient { factors, prefactor } => eta_quotient_series(factors, prefactor, d, p)?,
            Constructor::ThetaSum(rule) => theta_sum(rule, p)?,
            Constructor::Divisor(ds) => ds.expand(d, p)?,
            Constructor::EisensteinCombo(terms) => {
                let mut acc = PuiseuxSeries::zero(d, p.clone());
                for t in terms {
                    let psi = DirichletCharacter::parse(&t.psi)?;
                    let phi = DirichletCharacter::parse(&t.phi)?;
                    let e = eisenstein_series(t.k, &psi, &phi, &(p / int(t.subst as i64)))?;
                    let e = e.substitute_power(t.subst).scale_rational(&t.coeff).with_field(d)?;
                    acc = acc.add(&e)?;
                }
                acc
            }
            Constructor::Expr(e) => self.eval_expr(e, p, d)?,
        })
    }

    /// Evaluates `e` to precision at least `P`, raising the working precision when
    /// division or differentiation loses terms.
    pub fn eval_expr(&self, e: &Expr, precision: &Rational, field: i64) -> Result<PuiseuxSeries, FormError> {
        if !precision.is_positive() {
            return Err(FormError::BadPrecision(precision.clone()));
        }
        let mut work = precision.clone();
        let mut last = None;
        for _ in 0..6 {
            let s = Evaluator::new(self, field).eval(e, &work)?;
            if s.precision() >= precision {
                return Ok(s.truncate(precision));
            }
            let deficit = precision - s.precision();
            if last.as_ref() == Some(s.precision()) {
                break;
            }
            last = Some(s.precision().clone());
            work += deficit.ceil();
        }
        Err(FormError::PrecisionLoss { target: Box::new(precision.clone()), reached: Box::new(last.unwrap_or_else(|| int(0))) })
    }

    /// Parses and evaluates an expression string.
    pub fn eval_str(&self, src: &str, precision: &Rational, field: i64) -> Result<PuiseuxSeries, FormError> {
        self.eval_expr(&parse_expr(src)?, precision, field)
    }

    /// Compares every alternative route of every listed form with its canonical route.
    pub fn crosschecks(&self, precision: &Rational) -> Vec<CrosscheckOutcome> {
        let jobs: Vec<(String, usize)> = self
            .descriptors
            .values()
            .flat_map(|d| (1..d.routes.len()).map(move |i| (d.name.clone(), i)))
            .collect();
        let mut out: Vec<CrosscheckOutcome> = jobs
            .par_iter()
            .map(|(name, i)| {
                let a = self.eval_form(name, precision);
                let b = self.eval_route(name, *i, precision);
                match (a, b) {
                    (Ok(a), Ok(b)) => {
                        let diff = a.first_difference(&b);
                        CrosscheckOutcome {
                            name: name.clone(),
                            route: *i,
                            pass: diff.is_none(),
                            first_difference: diff,
                            error: None,
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => CrosscheckOutcome {
                        name: name.clone(),
                        route: *i,
                        pass: false,
                        first_difference: None,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect();
        out.sort_by(|x, y| (&x.name, x.route).cmp(&(&y.name, y.route)));
        out
    }
}

/// [`Registry::eval_form`] on the global registry.
pub fn eval_form(name: &str, precision: &Rational) -> Result<PuiseuxSeries, FormError> {
    Registry::global().eval_form(name, precision)
}

/// [`Registry::crosschecks`] on the global registry.
pub fn registry_crosschecks(precision: &Rational) -> Vec<CrosscheckOutcome> {
    Registry::global().crosschecks(precision)
}
