//! `modforms`: expand forms, verify the identity catalog, print counting tables and run the
//! Picard-Fuchs checks.
//!
//! Exit codes: 0 success, 1 internal error or failed verification, 2 unknown form,
//! 3 catalog parse error.

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use modforms::forms::{parse_expr, registry_crosschecks, FormError, Registry};
use modforms::hypergeometric::verify_theorem_general;
use modforms::identity::{catalog, counting_table, parse_catalog, run, CountKind, IdentityRecord, RunOptions};
use modforms::qseries::{int, PuiseuxSeries};

use config::{FlagValues, Format, RunConfig};

const EXIT_INTERNAL: u8 = 1;
const EXIT_UNKNOWN_FORM: u8 = 2;
const EXIT_CATALOG: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "modforms", version, about = "Exact q-expansions and identity verification")]
struct Cli {
    /// Config file of key=value lines; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Precision in powers of q.
    #[arg(long, global = true)]
    order: Option<String>,
    /// Quadratic field discriminant for `expand`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    field: Option<i64>,
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Squares,
    Triangles,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the q-expansion of a registered form or an expression such as `(^ A2 2)`.
    Expand { name: String },
    /// Verify catalog records matching the suite globs (all records when none are given).
    Verify {
        /// Glob over record ids or tier names; repeatable.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Alternative catalog file in the bundled TOML layout.
        #[arg(long)]
        catalog: Option<String>,
        /// Attach wall-clock milliseconds to each record.
        #[arg(long)]
        timings: bool,
    },
    /// Lattice counts against theta coefficients and the divisor formulas.
    Counts {
        kind: Kind,
        /// Half the number of coordinates.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        s: u32,
        #[arg(long = "max-n", default_value_t = 20)]
        max_n: u64,
    },
    /// Seeded check of the weight-24 relation, the parametrized families and their limits.
    PfCheck {
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Compare every alternative construction route in the form registry.
    Crosscheck,
}

struct Failed(u8, String);

impl From<FormError> for Failed {
    fn from(e: FormError) -> Self {
        match e {
            FormError::UnknownForm(_) => Failed(EXIT_UNKNOWN_FORM, e.to_string()),
            _ => Failed(EXIT_INTERNAL, e.to_string()),
        }
    }
}

fn internal(e: impl std::fmt::Display) -> Failed {
    Failed(EXIT_INTERNAL, e.to_string())
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn to_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

fn expand(name: &str, cfg: &RunConfig) -> Result<u8, Failed> {
    let reg = Registry::global();
    let p = cfg.precision.clone().unwrap_or_else(|| int(10));
    let s: PuiseuxSeries = if name.trim_start().starts_with('(') {
        let e = parse_expr(name).map_err(|e| Failed(EXIT_INTERNAL, e.to_string()))?;
        reg.eval_expr(&e, &p, cfg.field.unwrap_or(0))?
    } else {
        let s = reg.eval_form(name, &p)?;
        match cfg.field {
            Some(d) => s.with_field(d).map_err(internal)?,
            None => s,
        }
    };
    let terms: Vec<(String, String)> = s.iter().map(|(e, c)| (e.to_string(), c.to_string())).collect();
    match cfg.format {
        Format::Json => {
            let terms: Vec<_> = terms.iter().map(|(e, c)| json!({"exponent": e, "coeff": c})).collect();
            emit(&to_json(&json!({"name": name, "d": s.d(), "order": s.precision().to_string(), "terms": terms})));
        }
        Format::Text => {
            let mut out = format!("# {name} d={} order={}\n", s.d(), s.precision());
            for (e, c) in terms {
                out.push_str(&format!("{e} {c}\n"));
            }
            emit(&out);
        }
    }
    Ok(0)
}

fn verify(cfg: &RunConfig) -> Result<u8, Failed> {
    let owned: Vec<IdentityRecord>;
    let records: &[IdentityRecord] = match &cfg.catalog {
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| Failed(EXIT_CATALOG, format!("{path}: {e}")))?;
            owned = parse_catalog(&src).map_err(|e| Failed(EXIT_CATALOG, e.to_string()))?;
            &owned
        }
        None => catalog(),
    };
    let opts = RunOptions {
        filters: cfg.suites.clone(),
        precision: cfg.precision.clone(),
        jobs: cfg.jobs,
        timings: cfg.timings,
    };
    let reports = run(records, &opts);
    if reports.is_empty() {
        eprintln!("warning: no records match {:?}", cfg.suites);
    }
    let pass = reports.iter().all(|r| r.pass);
    match cfg.format {
        Format::Json => emit(&(serde_json::to_string_pretty(&reports).map_err(internal)? + "\n")),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let tag = if r.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("[{tag}] {} (order {}) {}", r.id, r.precision, r.citation));
                if let Some(ms) = r.millis {
                    out.push_str(&format!(" {ms} ms"));
                }
                out.push('\n');
                if let Some(f) = &r.first_failure {
                    out.push_str(&format!("    first difference at q^{}: {} vs {}\n", f.exponent, f.lhs, f.rhs));
                }
                if let Some(e) = &r.error {
                    out.push_str(&format!("    error: {e}\n"));
                }
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            out.push_str(&format!("{passed}/{} records passed\n", reports.len()));
            emit(&out);
        }
    }
    Ok(if pass { 0 } else { EXIT_INTERNAL })
}

fn counts(kind: Kind, s: u32, max_n: u64, cfg: &RunConfig) -> Result<u8, Failed> {
    let (kind, prefix) = match kind {
        Kind::Squares => (CountKind::Squares, 'r'),
        Kind::Triangles => (CountKind::Triangles, 't'),
    };
    let id = format!("counting.{prefix}{}", 2 * s);
    let oracle = catalog()
        .iter()
        .find(|r| r.id == id)
        .and_then(|r| r.counting.as_ref())
        .filter(|o| o.kind == kind)
        .ok_or_else(|| internal(format!("no counting record {id}")))?;
    let rows = counting_table(oracle, max_n).map_err(internal)?;
    let pass = rows.iter().all(|r| r.agree);
    match cfg.format {
        Format::Json => emit(&(serde_json::to_string_pretty(&rows).map_err(internal)? + "\n")),
        Format::Text => {
            let mut out = format!("# {} s={s} ({} coordinates)\nn lattice theta", kind.name(), 2 * s);
            for i in 0..oracle.formulas.len() {
                out.push_str(&format!(" formula{}", i + 1));
            }
            out.push_str(" agree\n");
            for r in &rows {
                out.push_str(&format!("{} {} {}", r.n, r.lattice, r.theta));
                for f in &r.formulas {
                    out.push(' ');
                    out.push_str(f.as_deref().unwrap_or("-"));
                }
                out.push_str(if r.agree { " yes\n" } else { " NO\n" });
            }
            emit(&out);
        }
    }
    Ok(if pass { 0 } else { EXIT_INTERNAL })
}

fn pf_check(cfg: &RunConfig) -> Result<u8, Failed> {
    let report = verify_theorem_general(cfg.samples, cfg.seed).map_err(internal)?;
    match cfg.format {
        Format::Json => emit(&(serde_json::to_string_pretty(&report).map_err(internal)? + "\n")),
        Format::Text => {
            let mut out = format!("seed {} samples {}\n", report.seed, report.samples);
            let zero = |v: &[modforms::hypergeometric::TripleVerdict]| v.iter().filter(|t| t.pass).count();
            out.push_str(&format!(
                "special triples: {}/{} zero\n",
                zero(&report.proposition),
                report.proposition.len()
            ));
            out.push_str(&format!("random triples: {}/{} zero\n", zero(&report.random), report.random.len()));
            out.push_str(&format!("degenerate draws set aside: {}\n", report.degenerate.len()));
            let mut names: Vec<&str> = vec![];
            for t in &report.families {
                if !names.contains(&t.source.as_str()) {
                    names.push(&t.source);
                }
            }
            for name in names {
                let rows: Vec<_> = report.families.iter().filter(|t| t.source == name).collect();
                let live: Vec<_> = rows.iter().filter(|t| !t.degenerate).collect();
                let ok = live.iter().filter(|t| t.pass).count();
                out.push_str(&format!(
                    "{name}: {ok}/{} zero, {} degenerate\n",
                    live.len(),
                    rows.len() - live.len()
                ));
                for t in live.iter().filter(|t| !t.pass) {
                    out.push_str(&format!("    nonzero at ({}, {}, {})\n", t.alpha, t.beta, t.gamma));
                }
            }
            for v in &report.identities {
                out.push_str(&format!("[{}] {}\n", if v.pass { "PASS" } else { "FAIL" }, v.name));
            }
            out.push_str(if report.pass { "all residuals zero\n" } else { "nonzero residuals found\n" });
            emit(&out);
        }
    }
    Ok(if report.pass { 0 } else { EXIT_INTERNAL })
}

fn crosscheck(cfg: &RunConfig) -> Result<u8, Failed> {
    let p = cfg.precision.clone().unwrap_or_else(|| int(50));
    let outcomes = registry_crosschecks(&p);
    let pass = outcomes.iter().all(|o| o.pass);
    let rows: Vec<_> = outcomes
        .iter()
        .map(|o| {
            let diff = o.first_difference.as_ref().map(|(e, a, b)| {
                json!({"exponent": e.to_string(), "lhs": a.to_string(), "rhs": b.to_string()})
            });
            json!({"name": o.name, "route": o.route, "pass": o.pass, "first_difference": diff, "error": o.error})
        })
        .collect();
    match cfg.format {
        Format::Json => emit(&to_json(&serde_json::Value::Array(rows))),
        Format::Text => {
            let mut out = String::new();
            for o in &outcomes {
                out.push_str(&format!("[{}] {} route {}\n", if o.pass { "PASS" } else { "FAIL" }, o.name, o.route));
                if let Some((e, a, b)) = &o.first_difference {
                    out.push_str(&format!("    first difference at q^{e}: {a} vs {b}\n"));
                }
                if let Some(e) = &o.error {
                    out.push_str(&format!("    error: {e}\n"));
                }
            }
            let ok = outcomes.iter().filter(|o| o.pass).count();
            out.push_str(&format!("{ok}/{} routes agree at order {p}\n", outcomes.len()));
            emit(&out);
        }
    }
    Ok(if pass { 0 } else { EXIT_INTERNAL })
}

fn dispatch(cli: Cli) -> Result<u8, Failed> {
    let mut flags = FlagValues {
        order: cli.order,
        field: cli.field,
        jobs: cli.jobs,
        format: cli.format,
        seed: cli.seed,
        ..Default::default()
    };
    match &cli.command {
        Command::Verify { suites, catalog, timings } => {
            flags.suites = suites.clone();
            flags.catalog = catalog.clone();
            flags.timings = *timings;
        }
        Command::PfCheck { samples } => flags.samples = *samples,
        _ => {}
    }
    let cfg = RunConfig::load(flags, cli.config.as_deref()).map_err(internal)?;
    if let Some(j) = cfg.jobs {
        // read by the global thread pool on first use
        std::env::set_var("RAYON_NUM_THREADS", j.to_string());
    }
    match cli.command {
        Command::Expand { name } => expand(&name, &cfg),
        Command::Verify { .. } => verify(&cfg),
        Command::Counts { kind, s, max_n } => counts(kind, s, max_n, &cfg),
        Command::PfCheck { .. } => {
            if cfg.samples == 0 {
                return Err(internal("--samples must be at least 1"));
            }
            pf_check(&cfg)
        }
        Command::Crosscheck => crosscheck(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the internal-error code; 2 is reserved for unknown forms
            return ExitCode::from(if e.use_stderr() { EXIT_INTERNAL } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failed(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
