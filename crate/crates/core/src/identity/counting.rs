use serde::Serialize;

use crate::arithmetic::{sigma, sigma_conj};
use crate::forms::Registry;
use crate::qseries::{int, Rational};

use super::record::{CountKind, CountTerm, CountingOracle, IdentityRecord};
use super::verify::{CheckVerdict, Failure, VerdictReport};

/// Values `x` in `Z` with `f(x) <= max`, where `f(x) = x^2` or `x(x+1)/2`, as a histogram.
fn single_coordinate(kind: CountKind, max: u64) -> Vec<u128> {
    let mut h = vec![0u128; max as usize + 1];
    let mut x: i64 = -(2 * (max as i64) + 2);
    while x <= 2 * max as i64 + 2 {
        let v = match kind {
            CountKind::Squares => x * x,
            CountKind::Triangles => x * (x + 1) / 2,
        };
        if v >= 0 && v as u64 <= max {
            h[v as usize] += 1;
        }
        x += 1;
    }
    h
}

/// Lattice counts `#{x in Z^(2s) : sum f(x_i) = n}` for `n = 0..=max_n`, built by adding one
/// coordinate at a time; no q-series are involved.
pub fn lattice_counts(kind: CountKind, s: u32, max_n: u64) -> Vec<u128> {
    let one = single_coordinate(kind, max_n);
    let mut acc = vec![0u128; max_n as usize + 1];
    acc[0] = 1;
    for _ in 0..2 * s {
        let mut next = vec![0u128; acc.len()];
        for (i, a) in acc.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, b) in one.iter().enumerate().take(acc.len() - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

/// Direct enumeration of every tuple; only practical for small `n`, used to test [`lattice_counts`].
pub fn brute_force_count(kind: CountKind, s: u32, n: u64) -> u128 {
    let bound = match kind {
        CountKind::Squares => (n as f64).sqrt() as i64 + 1,
        CountKind::Triangles => (2.0 * n as f64).sqrt() as i64 + 2,
    };
    let f = |x: i64| match kind {
        CountKind::Squares => x * x,
        CountKind::Triangles => x * (x + 1) / 2,
    };
    fn rec(depth: u32, left: i64, bound: i64, f: &dyn Fn(i64) -> i64) -> u128 {
        if depth == 0 {
            return (left == 0) as u128;
        }
        (-bound..=bound).filter(|&x| f(x) <= left).map(|x| rec(depth - 1, left - f(x), bound, f)).sum()
    }
    rec(2 * s, n as i64, bound, &f)
}

/// Counts read off theta powers: `A2^s` for squares, `(q^(-1/2) C2)^s` at `q^(2n)` for triangles.
pub fn theta_counts(kind: CountKind, s: u32, max_n: u64) -> Result<Vec<Rational>, String> {
    let reg = Registry::global();
    let (src, step, p) = match kind {
        CountKind::Squares => (format!("(^ A2 {s})"), 1, max_n as i64 + 1),
        CountKind::Triangles => (format!("(* (q -{s}/2) (^ C2 {s}))"), 2, 2 * max_n as i64 + 1),
    };
    let series = reg.eval_str(&src, &int(p), 0).map_err(|e| e.to_string())?;
    Ok((0..=max_n as i64).map(|n| series.coeff_at(step * n)).collect())
}

/// Value of one divisor-sum formula at `n`.
pub fn formula_value(terms: &[CountTerm], n: u64) -> Rational {
    terms
        .iter()
        .map(|t| {
            let m = t.arg.0 * n + t.arg.1;
            let v = if t.conjugate { sigma_conj(t.k, m, &t.weights) } else { sigma(t.k, m, &t.weights) };
            &t.c * v
        })
        .sum()
}

/// One line of a counting table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRow {
    pub n: u64,
    pub lattice: String,
    pub theta: String,
    /// Formula values, or `None` where the formula does not apply (`n = 0` for squares).
    pub formulas: Vec<Option<String>>,
    pub agree: bool,
}

/// Three-way comparison table: lattice enumeration, theta coefficients and every divisor formula.
pub fn counting_table(oracle: &CountingOracle, max_n: u64) -> Result<Vec<CountRow>, String> {
    let lattice = lattice_counts(oracle.kind, oracle.s, max_n);
    let theta = theta_counts(oracle.kind, oracle.s, max_n)?;
    Ok((0..=max_n)
        .map(|n| {
            let count = int(lattice[n as usize] as i64);
            let applies = n > 0 || oracle.kind == CountKind::Triangles;
            let values: Vec<Option<Rational>> =
                oracle.formulas.iter().map(|f| applies.then(|| formula_value(f, n))).collect();
            let agree = theta[n as usize] == count && values.iter().flatten().all(|v| *v == count);
            CountRow {
                n,
                lattice: count.to_string(),
                theta: theta[n as usize].to_string(),
                formulas: values.iter().map(|v| v.as_ref().map(|x| x.to_string())).collect(),
                agree,
            }
        })
        .collect())
}

type Column = (String, Box<dyn Fn(&CountRow) -> Option<String>>);

/// Checks theta coefficients and every formula against the lattice count for `n <= max_n`.
///
/// A precision override, when integral, replaces `max_n`.
pub fn verify_counting(record: &IdentityRecord, oracle: &CountingOracle, precision: Option<&Rational>) -> VerdictReport {
    let max_n = precision
        .filter(|p| p.is_integer() && *p > &int(0))
        .and_then(|p| p.to_integer().try_into().ok())
        .unwrap_or(oracle.max_n);
    let mut checks = vec![];
    match counting_table(oracle, max_n) {
        Ok(rows) => {
            let mut columns: Vec<Column> =
                vec![("theta coefficients".into(), Box::new(|r: &CountRow| Some(r.theta.clone())))];
            for i in 0..oracle.formulas.len() {
                columns.push((format!("divisor formula {}", i + 1), Box::new(move |r: &CountRow| r.formulas[i].clone())));
            }
            for (index, (label, get)) in columns.iter().enumerate() {
                let failure = rows.iter().find_map(|r| {
                    get(r).filter(|v| *v != r.lattice).map(|v| Failure {
                        exponent: int(r.n as i64),
                        lhs: r.lattice.clone(),
                        rhs: v,
                        component: None,
                    })
                });
                checks.push(CheckVerdict { index, label: Some(label.clone()), pass: failure.is_none(), failure, error: None });
            }
        }
        Err(e) => checks.push(CheckVerdict { index: 0, label: None, pass: false, failure: None, error: Some(e) }),
    }
    VerdictReport::from_checks(record, int(max_n as i64), checks)
}
