use std::fmt;

use serde::Deserialize;

use crate::arithmetic::WeightVector;
use crate::forms::{parse_expr, Expr};
use crate::qseries::{int, is_valid_discriminant, parse_rational, Rational};

/// The bundled catalog source.
pub const CATALOG_TOML: &str = include_str!("../../data/catalog.toml");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog is not valid TOML: {0}")]
    Toml(String),
    #[error("record {id}: {message}")]
    Record { id: String, message: String },
    #[error("duplicate record id {0}")]
    Duplicate(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Golden,
    System,
    Chazy,
    Hypergeometric,
    Agm,
    Counting,
}

impl Tier {
    pub const ALL: [Tier; 6] = [Tier::Golden, Tier::System, Tier::Chazy, Tier::Hypergeometric, Tier::Agm, Tier::Counting];

    pub fn name(self) -> &'static str {
        match self {
            Tier::Golden => "golden",
            Tier::System => "system",
            Tier::Chazy => "chazy",
            Tier::Hypergeometric => "hypergeometric",
            Tier::Agm => "agm",
            Tier::Counting => "counting",
        }
    }

    /// Order (or largest `n` for counting) used when a record states none.
    pub fn default_precision(self) -> i64 {
        match self {
            Tier::Golden | Tier::System | Tier::Agm => 50,
            Tier::Chazy => 40,
            Tier::Hypergeometric => 30,
            Tier::Counting => 200,
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single residual statement inside a record.
#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    /// Every later expression equals the first.
    Equal(Vec<Expr>),
    /// The expression is the zero series.
    Zero(Expr),
    /// Leading coefficients of `expr` at exponents `offset, offset + 1, ...`.
    Prefix { expr: Expr, coeffs: Vec<Rational>, offset: Rational },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledCheck {
    pub label: Option<String>,
    pub check: Check,
}

/// `A^a B^b C^c` in the signature-`r` triple, used by the valence test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub struct Monomial {
    pub r: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    /// Weight of the monomial; each of `A, B, C` has weight 1.
    pub fn weight(&self) -> u32 {
        self.a + self.b + self.c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountKind {
    Squares,
    Triangles,
}

impl CountKind {
    pub fn name(self) -> &'static str {
        match self {
            CountKind::Squares => "squares",
            CountKind::Triangles => "triangles",
        }
    }
}

/// `c * sigma_k(a n + b; w)`, or the conjugate sum.
#[derive(Clone, Debug, PartialEq)]
pub struct CountTerm {
    pub c: Rational,
    pub k: u32,
    pub weights: WeightVector,
    pub conjugate: bool,
    pub arg: (u64, u64),
}

/// Brute-force counting oracle for `r_{2s}` or `t_{2s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CountingOracle {
    pub kind: CountKind,
    pub s: u32,
    pub max_n: u64,
    /// Each formula is a sum of terms; all formulas must agree with the lattice count.
    pub formulas: Vec<Vec<CountTerm>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityRecord {
    pub id: String,
    pub tier: Tier,
    /// Discriminant of the coefficient field (`w^2 = d`).
    pub field: i64,
    pub precision: Rational,
    pub citation: String,
    pub quote: String,
    pub group: Option<String>,
    pub monomial: Option<Monomial>,
    pub checks: Vec<LabeledCheck>,
    pub counting: Option<CountingOracle>,
}

impl IdentityRecord {
    /// A record stating `lhs = rhs` over the field `d`.
    pub fn equation(id: &str, tier: Tier, lhs: Expr, rhs: Expr, field: i64) -> Self {
        IdentityRecord {
            id: id.to_string(),
            tier,
            field,
            precision: int(tier.default_precision()),
            citation: String::new(),
            quote: String::new(),
            group: None,
            monomial: None,
            checks: vec![LabeledCheck { label: None, check: Check::Equal(vec![lhs, rhs]) }],
            counting: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    #[serde(default)]
    record: Vec<RawRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    id: String,
    tier: Tier,
    #[serde(default)]
    field: i64,
    precision: Option<i64>,
    citation: String,
    #[serde(default)]
    quote: String,
    group: Option<String>,
    monomial: Option<Monomial>,
    #[serde(default)]
    check: Vec<RawCheck>,
    kind: Option<CountKind>,
    s: Option<u32>,
    max_n: Option<u64>,
    #[serde(default)]
    formulas: Vec<Vec<RawTerm>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCheck {
    label: Option<String>,
    equal: Option<Vec<String>>,
    zero: Option<String>,
    expr: Option<String>,
    coeffs: Option<Vec<String>>,
    offset: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    c: String,
    k: u32,
    w: String,
    #[serde(default)]
    conj: bool,
    arg: [u64; 2],
}

fn rational(id: &str, s: &str) -> Result<Rational, CatalogError> {
    parse_rational(s).ok_or_else(|| bad(id, format!("not a rational: {s:?}")))
}

fn bad(id: &str, message: String) -> CatalogError {
    CatalogError::Record { id: id.to_string(), message }
}

fn expr(id: &str, s: &str) -> Result<Expr, CatalogError> {
    parse_expr(s).map_err(|e| bad(id, e.to_string()))
}

fn convert_check(id: &str, c: RawCheck) -> Result<LabeledCheck, CatalogError> {
    let check = match (c.equal, c.zero, c.expr, c.coeffs) {
        (Some(eq), None, None, None) => {
            if eq.len() < 2 {
                return Err(bad(id, "an equality needs at least two expressions".into()));
            }
            Check::Equal(eq.iter().map(|s| expr(id, s)).collect::<Result<_, _>>()?)
        }
        (None, Some(z), None, None) => Check::Zero(expr(id, &z)?),
        (None, None, Some(e), Some(cs)) => Check::Prefix {
            expr: expr(id, &e)?,
            coeffs: cs.iter().map(|s| rational(id, s)).collect::<Result<_, _>>()?,
            offset: c.offset.as_deref().map(|s| rational(id, s)).transpose()?.unwrap_or_else(|| int(0)),
        },
        _ => return Err(bad(id, "a check is exactly one of `equal`, `zero` or `expr` + `coeffs`".into())),
    };
    Ok(LabeledCheck { label: c.label, check })
}

fn convert(r: RawRecord) -> Result<IdentityRecord, CatalogError> {
    let id = r.id;
    if !is_valid_discriminant(r.field) {
        return Err(bad(&id, format!("unsupported field discriminant {}", r.field)));
    }
    let precision = int(r.precision.unwrap_or_else(|| r.tier.default_precision()));
    if precision <= int(0) {
        return Err(bad(&id, "precision must be positive".into()));
    }
    let counting = if r.tier == Tier::Counting {
        let (Some(kind), Some(s)) = (r.kind, r.s) else {
            return Err(bad(&id, "counting records need `kind` and `s`".into()));
        };
        if !(1..=4).contains(&s) {
            return Err(bad(&id, format!("s = {s} outside 1..4")));
        }
        let formulas = r
            .formulas
            .into_iter()
            .map(|f| {
                f.into_iter()
                    .map(|t| {
                        Ok(CountTerm {
                            c: rational(&id, &t.c)?,
                            k: t.k,
                            weights: WeightVector::parse(&t.w).ok_or_else(|| bad(&id, format!("bad weights {:?}", t.w)))?,
                            conjugate: t.conj,
                            arg: (t.arg[0], t.arg[1]),
                        })
                    })
                    .collect::<Result<Vec<_>, CatalogError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Some(CountingOracle { kind, s, max_n: r.max_n.unwrap_or(200), formulas })
    } else {
        if r.kind.is_some() || r.s.is_some() || !r.formulas.is_empty() {
            return Err(bad(&id, "counting fields on a non-counting record".into()));
        }
        if r.check.is_empty() {
            return Err(bad(&id, "record has no checks".into()));
        }
        None
    };
    let checks = r.check.into_iter().map(|c| convert_check(&id, c)).collect::<Result<_, _>>()?;
    Ok(IdentityRecord {
        id,
        tier: r.tier,
        field: r.field,
        precision,
        citation: r.citation,
        quote: r.quote,
        group: r.group,
        monomial: r.monomial,
        checks,
        counting,
    })
}

/// Parses a catalog in the bundled TOML layout; ids must be unique.
pub fn parse_catalog(src: &str) -> Result<Vec<IdentityRecord>, CatalogError> {
    let raw: RawCatalog = toml::from_str(src).map_err(|e| CatalogError::Toml(e.to_string()))?;
    let mut out: Vec<IdentityRecord> = raw.record.into_iter().map(convert).collect::<Result<_, _>>()?;
    out.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = out.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(CatalogError::Duplicate(w[0].id.clone()));
    }
    Ok(out)
}

/// The bundled catalog, sorted by id.
pub fn catalog() -> &'static [IdentityRecord] {
    static CATALOG: std::sync::OnceLock<Vec<IdentityRecord>> = std::sync::OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(CATALOG_TOML).expect("bundled catalog parses"))
}
