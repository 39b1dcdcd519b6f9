//! A small prefix language for series expressions over registry names.
//!
//! ```text
//! atom    := form-name | rational | w
//! expr    := atom | "(" op expr* ")"
//! (+ a b ...)  (- a b)  (- a)  (* a b ...)  (/ a b)  (^ a e)
//! (subst r a)        q -> q^r
//! (d a)              q d/dq
//! (q e)              the monomial q^e
//! (eta D1 R1 D2 R2 ...)             prod [D]^R
//! (sigma k w0,w1,...)               sum_{n>=1} sigma_k(n; w) q^n
//! (sigmac k w0,w1,...)              the conjugate divisor sum
//! (eis k psi phi)                   E_k^{psi,phi}
//! (lambert s)                       sum_{n>=1} q^n / (1 - s q^n)^2
//! (ul R k E) / (un R k E)           ladder u_k from E, or u_k / R^2
//! (2f1 a b c x) / (3f2 a1 a2 a3 b1 b2 x)
//! (2f1-ode a b c x f)               hypergeometric operator in x applied to f
//! (3f2-ode a1 a2 a3 b1 b2 x f)
//! ```

use std::fmt;

use crate::arithmetic::WeightVector;
use crate::qseries::{parse_rational, QuadExtScalar, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Form(String),
    Const(QuadExtScalar),
    Add(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Rational),
    Subst(Rational, Box<Expr>),
    Deriv(Box<Expr>),
    Monomial(Rational),
    Eta(Vec<(u64, i64)>),
    Divisor { k: u32, weights: WeightVector, conjugate: bool },
    Eisenstein { k: u32, psi: String, phi: String },
    Lambert(i64),
    Ladder { r: Rational, k: u32, normalized: bool, e: Box<Expr> },
    Hyp2F1 { a: Rational, b: Rational, c: Rational, x: Box<Expr> },
    Hyp3F2 { a: [Rational; 3], b: [Rational; 2], x: Box<Expr> },
    /// `theta prod(theta + b - 1) f - x prod(theta + a) f` with `theta = x d/dx`; lower list includes 1.
    HypOde { a: Vec<Rational>, b: Vec<Rational>, x: Box<Expr>, f: Box<Expr> },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expression parse error: {0}")]
pub struct ParseError(pub String);

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(src: &str) -> Vec<String> {
    src.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

fn read_sexp(tokens: &[String], pos: &mut usize) -> Result<Sexp, ParseError> {
    let tok = tokens.get(*pos).ok_or_else(|| ParseError("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = vec![];
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    None => return Err(ParseError("unbalanced '('".into())),
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read_sexp(tokens, pos)?),
                }
            }
        }
        ")" => Err(ParseError("unexpected ')'".into())),
        _ => Ok(Sexp::Atom(tok.clone())),
    }
}

fn atom(s: &Sexp) -> Result<&str, ParseError> {
    match s {
        Sexp::Atom(a) => Ok(a),
        Sexp::List(_) => Err(ParseError("expected an atom, found a list".into())),
    }
}

fn rational(s: &Sexp) -> Result<Rational, ParseError> {
    let a = atom(s)?;
    parse_rational(a).ok_or_else(|| ParseError(format!("expected a rational, found {a:?}")))
}

fn integer<T: std::str::FromStr>(s: &Sexp) -> Result<T, ParseError> {
    let a = atom(s)?;
    a.parse().map_err(|_| ParseError(format!("expected an integer, found {a:?}")))
}

fn arity(op: &str, args: &[Sexp], n: usize) -> Result<(), ParseError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(ParseError(format!("({op} ...) takes {n} arguments, got {}", args.len())))
    }
}

fn is_name(a: &str) -> bool {
    a.chars().any(|c| c.is_ascii_alphabetic())
        && a.chars().next().is_some_and(|c| c.is_ascii_alphanumeric())
        && a.chars().all(|c| c.is_ascii_alphanumeric() || "._-".contains(c))
}

fn convert(s: &Sexp) -> Result<Expr, ParseError> {
    let items = match s {
        Sexp::Atom(a) if a == "w" => return Ok(Expr::Const(QuadExtScalar::omega())),
        Sexp::Atom(a) => {
            if let Some(r) = parse_rational(a) {
                return Ok(Expr::Const(QuadExtScalar::from_rational(r)));
            }
            if is_name(a) {
                return Ok(Expr::Form(a.clone()));
            }
            return Err(ParseError(format!("bad atom {a:?}")));
        }
        Sexp::List(items) => items,
    };
    let (head, args) = items.split_first().ok_or_else(|| ParseError("empty list".into()))?;
    let op = atom(head)?;
    let sub = |i: usize| convert(&args[i]).map(Box::new);
    let all = || args.iter().map(convert).collect::<Result<Vec<_>, _>>();
    Ok(match op {
        "+" | "*" => {
            if args.is_empty() {
                return Err(ParseError(format!("({op}) needs arguments")));
            }
            if op == "+" {
                Expr::Add(all()?)
            } else {
                Expr::Mul(all()?)
            }
        }
        "-" => match args.len() {
            1 => Expr::Neg(sub(0)?),
            2 => Expr::Sub(sub(0)?, sub(1)?),
            n => return Err(ParseError(format!("(- ...) takes 1 or 2 arguments, got {n}"))),
        },
        "/" => {
            arity(op, args, 2)?;
            Expr::Div(sub(0)?, sub(1)?)
        }
        "^" => {
            arity(op, args, 2)?;
            Expr::Pow(sub(0)?, rational(&args[1])?)
        }
        "subst" => {
            arity(op, args, 2)?;
            let r = rational(&args[0])?;
            if r <= Rational::from_integer(0.into()) {
                return Err(ParseError("substitution exponent must be positive".into()));
            }
            Expr::Subst(r, sub(1)?)
        }
        "d" => {
            arity(op, args, 1)?;
            Expr::Deriv(sub(0)?)
        }
        "q" => {
            arity(op, args, 1)?;
            Expr::Monomial(rational(&args[0])?)
        }
        "eta" => {
            if args.is_empty() || args.len() % 2 != 0 {
                return Err(ParseError("(eta ...) takes delta/exponent pairs".into()));
            }
            let mut factors = vec![];
            for pair in args.chunks(2) {
                let delta: u64 = integer(&pair[0])?;
                if delta == 0 {
                    return Err(ParseError("eta level must be positive".into()));
                }
                factors.push((delta, integer(&pair[1])?));
            }
            Expr::Eta(factors)
        }
        "sigma" | "sigmac" => {
            arity(op, args, 2)?;
            let w = atom(&args[1])?;
            let weights = WeightVector::parse(w).ok_or_else(|| ParseError(format!("bad weight vector {w:?}")))?;
            Expr::Divisor { k: integer(&args[0])?, weights, conjugate: op == "sigmac" }
        }
        "eis" => {
            arity(op, args, 3)?;
            let k: u32 = integer(&args[0])?;
            if k == 0 {
                return Err(ParseError("Eisenstein weight must be positive".into()));
            }
            Expr::Eisenstein { k, psi: atom(&args[1])?.to_string(), phi: atom(&args[2])?.to_string() }
        }
        "lambert" => {
            arity(op, args, 1)?;
            let s: i64 = integer(&args[0])?;
            if s != 1 && s != -1 {
                return Err(ParseError("lambert sign must be 1 or -1".into()));
            }
            Expr::Lambert(s)
        }
        "ul" | "un" => {
            arity(op, args, 3)?;
            let k: u32 = integer(&args[1])?;
            if k < 4 || !k.is_multiple_of(2) {
                return Err(ParseError("ladder index must be even and at least 4".into()));
            }
            Expr::Ladder { r: rational(&args[0])?, k, normalized: op == "un", e: sub(2)? }
        }
        "2f1" => {
            arity(op, args, 4)?;
            Expr::Hyp2F1 { a: rational(&args[0])?, b: rational(&args[1])?, c: rational(&args[2])?, x: sub(3)? }
        }
        "3f2" => {
            arity(op, args, 6)?;
            let r = |i| rational(&args[i]);
            Expr::Hyp3F2 { a: [r(0)?, r(1)?, r(2)?], b: [r(3)?, r(4)?], x: sub(5)? }
        }
        "2f1-ode" => {
            arity(op, args, 5)?;
            Expr::HypOde {
                a: vec![rational(&args[0])?, rational(&args[1])?],
                b: vec![rational(&args[2])?],
                x: sub(3)?,
                f: sub(4)?,
            }
        }
        "3f2-ode" => {
            arity(op, args, 7)?;
            let r = |i| rational(&args[i]);
            Expr::HypOde { a: vec![r(0)?, r(1)?, r(2)?], b: vec![r(3)?, r(4)?], x: sub(5)?, f: sub(6)? }
        }
        _ => return Err(ParseError(format!("unknown operator {op:?}"))),
    })
}

/// Parses one expression; trailing input is an error.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(src);
    let mut pos = 0;
    let s = read_sexp(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(ParseError(format!("trailing input after expression in {src:?}")));
    }
    convert(&s)
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

impl Expr {
    /// Every registry name referenced by the expression.
    pub fn form_names(&self) -> Vec<String> {
        let mut out = vec![];
        self.collect_names(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Form(n) => out.push(n.clone()),
            Expr::Add(v) | Expr::Mul(v) => v.iter().for_each(|e| e.collect_names(out)),
            Expr::Sub(a, b) | Expr::Div(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Subst(_, a) | Expr::Deriv(a) => a.collect_names(out),
            Expr::Ladder { e, .. } => e.collect_names(out),
            Expr::Hyp2F1 { x, .. } | Expr::Hyp3F2 { x, .. } => x.collect_names(out),
            Expr::HypOde { x, f, .. } => {
                x.collect_names(out);
                f.collect_names(out);
            }
            _ => {}
        }
    }
}

fn join(f: &mut fmt::Formatter<'_>, op: &str, items: &[&dyn fmt::Display]) -> fmt::Result {
    write!(f, "({op}")?;
    for it in items {
        write!(f, " {it}")?;
    }
    write!(f, ")")
}

impl fmt::Display for Expr {
    /// Canonical prefix form; `parse_expr(e.to_string()) == e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Form(n) => write!(f, "{n}"),
            Expr::Const(c) if c.is_rational() => write!(f, "{}", c.rational_part),
            Expr::Const(c) if c.rational_part == Rational::from_integer(0.into()) => {
                if c.radical_part == Rational::from_integer(1.into()) {
                    write!(f, "w")
                } else {
                    write!(f, "(* {} w)", c.radical_part)
                }
            }
            Expr::Const(c) => write!(f, "(+ {} (* {} w))", c.rational_part, c.radical_part),
            Expr::Add(v) | Expr::Mul(v) => {
                let op = if matches!(self, Expr::Add(_)) { "+" } else { "*" };
                let items: Vec<&dyn fmt::Display> = v.iter().map(|e| e as &dyn fmt::Display).collect();
                join(f, op, &items)
            }
            Expr::Sub(a, b) => join(f, "-", &[a, b]),
            Expr::Neg(a) => join(f, "-", &[a]),
            Expr::Div(a, b) => join(f, "/", &[a, b]),
            Expr::Pow(a, e) => join(f, "^", &[a, e]),
            Expr::Subst(r, a) => join(f, "subst", &[r, a]),
            Expr::Deriv(a) => join(f, "d", &[a]),
            Expr::Monomial(e) => join(f, "q", &[e]),
            Expr::Eta(factors) => {
                write!(f, "(eta")?;
                for (d, r) in factors {
                    write!(f, " {d} {r}")?;
                }
                write!(f, ")")
            }
            Expr::Divisor { k, weights, conjugate } => {
                let w: Vec<String> = weights.values().iter().map(|v| v.to_string()).collect();
                let op = if *conjugate { "sigmac" } else { "sigma" };
                write!(f, "({op} {k} {})", w.join(","))
            }
            Expr::Eisenstein { k, psi, phi } => write!(f, "(eis {k} {psi} {phi})"),
            Expr::Lambert(s) => write!(f, "(lambert {s})"),
            Expr::Ladder { r, k, normalized, e } => {
                write!(f, "({} {r} {k} {e})", if *normalized { "un" } else { "ul" })
            }
            Expr::Hyp2F1 { a, b, c, x } => write!(f, "(2f1 {a} {b} {c} {x})"),
            Expr::Hyp3F2 { a, b, x } => write!(f, "(3f2 {} {} {} {} {} {x})", a[0], a[1], a[2], b[0], b[1]),
            Expr::HypOde { a, b, x, f: g } => {
                write!(f, "({}-ode", if a.len() == 2 { "2f1" } else { "3f2" })?;
                for p in a.iter().chain(b) {
                    write!(f, " {p}")?;
                }
                write!(f, " {x} {g})")
            }
        }
    }
}
