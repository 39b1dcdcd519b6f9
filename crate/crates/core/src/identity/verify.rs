use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use wildmatch::WildMatch;

use crate::forms::{unify, Expr, FormError, Registry};
use crate::qseries::{int, PuiseuxSeries, QuadExtScalar, Rational};

use super::counting::verify_counting;
use super::record::{Check, IdentityRecord, Tier};

fn as_string<S: Serializer, T: std::fmt::Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Where a residual first fails to vanish.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    #[serde(serialize_with = "as_string")]
    pub exponent: Rational,
    pub lhs: String,
    pub rhs: String,
    /// For quadratic fields: which coordinate (`rational`, `radical` or `both`) disagrees.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckVerdict {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub id: String,
    pub tier: Tier,
    pub citation: String,
    pub pass: bool,
    #[serde(serialize_with = "as_string")]
    pub precision: Rational,
    pub checks: Vec<CheckVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl VerdictReport {
    pub(crate) fn from_checks(record: &IdentityRecord, precision: Rational, checks: Vec<CheckVerdict>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        let first_failure = checks.iter().find_map(|c| c.failure.clone());
        let error = checks.iter().find_map(|c| c.error.clone());
        VerdictReport {
            id: record.id.clone(),
            tier: record.tier,
            citation: record.citation.clone(),
            pass,
            precision,
            checks,
            first_failure,
            error,
            millis: None,
        }
    }
}

fn failure(e: Rational, lhs: &QuadExtScalar, rhs: &QuadExtScalar, d: i64) -> Failure {
    let component = (d != 0).then(|| {
        match (lhs.rational_part != rhs.rational_part, lhs.radical_part != rhs.radical_part) {
            (true, true) => "both",
            (true, false) => "rational",
            _ => "radical",
        }
        .to_string()
    });
    Failure { exponent: e, lhs: lhs.to_string(), rhs: rhs.to_string(), component }
}

fn eval(reg: &Registry, e: &Expr, p: &Rational, d: i64) -> Result<PuiseuxSeries, FormError> {
    reg.eval_expr(e, p, d)
}

fn run_check(reg: &Registry, check: &Check, p: &Rational, d: i64) -> Result<Option<Failure>, FormError> {
    match check {
        Check::Equal(items) => {
            let first = eval(reg, &items[0], p, d)?;
            for other in &items[1..] {
                let (a, b) = unify(first.clone(), eval(reg, other, p, d)?)?;
                if let Some((e, x, y)) = a.first_difference(&b) {
                    return Ok(Some(failure(e, &x, &y, d)));
                }
            }
            Ok(None)
        }
        Check::Zero(e) => {
            let s = eval(reg, e, p, d)?;
            Ok(s.leading().map(|(e, c)| failure(e, c, &QuadExtScalar::zero(), d)))
        }
        Check::Prefix { expr, coeffs, offset } => {
            let top = offset + int(coeffs.len() as i64);
            let s = eval(reg, expr, &top, d)?;
            for (i, want) in coeffs.iter().enumerate() {
                let e = offset + int(i as i64);
                let got = s.coeff(&e);
                let want = QuadExtScalar::from_rational(want.clone());
                if got != want {
                    return Ok(Some(failure(e, &got, &want, d)));
                }
            }
            Ok(None)
        }
    }
}

/// Verifies every check of `record` at its own precision, or at `precision` when given.
///
/// A pass means every residual vanishes below the stated order; it is not a proof.
pub fn verify(record: &IdentityRecord, precision: Option<&Rational>) -> VerdictReport {
    verify_with(Registry::global(), record, precision)
}

/// [`verify`] against an explicit registry.
pub fn verify_with(reg: &Registry, record: &IdentityRecord, precision: Option<&Rational>) -> VerdictReport {
    if let Some(oracle) = &record.counting {
        return verify_counting(record, oracle, precision);
    }
    let p = precision.cloned().unwrap_or_else(|| record.precision.clone());
    if !p.is_integer() || p <= Rational::zero() {
        let mut r = VerdictReport::from_checks(record, p.clone(), vec![]);
        r.pass = false;
        r.error = Some(FormError::BadPrecision(p).to_string());
        return r;
    }
    let checks = record
        .checks
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let (failure, error) = match run_check(reg, &c.check, &p, record.field) {
                Ok(f) => (f, None),
                Err(e) => (None, Some(e.to_string())),
            };
            CheckVerdict { index, label: c.label.clone(), pass: failure.is_none() && error.is_none(), failure, error }
        })
        .collect();
    VerdictReport::from_checks(record, p, checks)
}

/// Runner settings shared by the CLI and the suites.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Globs over record ids and tier names; empty selects everything.
    pub filters: Vec<String>,
    pub precision: Option<Rational>,
    /// Worker threads; `None` uses every core.
    pub jobs: Option<usize>,
    /// Attach wall-clock milliseconds to each report.
    pub timings: bool,
}

/// Records whose id or tier matches any of the globs.
pub fn select<'a>(records: &'a [IdentityRecord], filters: &[String]) -> Vec<&'a IdentityRecord> {
    if filters.is_empty() {
        return records.iter().collect();
    }
    let pats: Vec<WildMatch> = filters.iter().map(|f| WildMatch::new(f)).collect();
    records
        .iter()
        .filter(|r| pats.iter().any(|p| p.matches(&r.id) || p.matches(r.tier.name())))
        .collect()
}

/// Verifies the selected records in parallel; reports come back sorted by id.
pub fn run(records: &[IdentityRecord], opts: &RunOptions) -> Vec<VerdictReport> {
    let chosen = select(records, &opts.filters);
    let work = || -> Vec<VerdictReport> {
        chosen
            .par_iter()
            .map(|r| {
                let t = Instant::now();
                let mut rep = verify(r, opts.precision.as_ref());
                if opts.timings {
                    rep.millis = Some(t.elapsed().as_millis() as u64);
                }
                rep
            })
            .collect()
    };
    let mut out = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(work))
            .unwrap_or_else(|_| work()),
        None => work(),
    };
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}
