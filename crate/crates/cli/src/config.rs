use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use modforms::qseries::{parse_rational, Rational};

/// Output format of every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected text or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Settings shared by the subcommands after flags and the config file are merged.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub precision: Option<Rational>,
    pub field: Option<i64>,
    pub suites: Vec<String>,
    pub jobs: Option<usize>,
    pub format: Format,
    pub seed: u64,
    pub samples: usize,
    pub catalog: Option<String>,
    pub timings: bool,
}

/// Values given on the command line; `None` falls back to the config file.
#[derive(Clone, Debug, Default)]
pub struct FlagValues {
    pub order: Option<String>,
    pub field: Option<i64>,
    pub suites: Vec<String>,
    pub jobs: Option<usize>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub catalog: Option<String>,
    pub timings: bool,
}

const KEYS: [&str; 9] = ["order", "field", "suite", "jobs", "format", "seed", "samples", "catalog", "timings"];

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_text(src: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| ConfigError(format!("line {}: expected key=value", i + 1)))?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(ConfigError(format!("line {}: unknown key {k:?}", i + 1)));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError(format!("bad value {v:?} for {key}")))
}

fn positive_precision(v: &str) -> Result<Rational, ConfigError> {
    parse_rational(v)
        .filter(|p| *p > Rational::from_integer(0.into()))
        .ok_or_else(|| ConfigError(format!("order must be a positive rational, got {v:?}")))
}

impl RunConfig {
    /// Merges flags over the file at `path` (if any); flags win.
    pub fn load(flags: FlagValues, path: Option<&Path>) -> Result<Self, ConfigError> {
        let file = match path {
            Some(p) => {
                let src = std::fs::read_to_string(p).map_err(|e| ConfigError(format!("{}: {e}", p.display())))?;
                parse_config_text(&src)?
            }
            None => BTreeMap::new(),
        };
        Self::merge(flags, &file)
    }

    pub fn merge(flags: FlagValues, file: &BTreeMap<String, String>) -> Result<Self, ConfigError> {
        let get = |k: &str| file.get(k).map(String::as_str);
        let order = flags.order.as_deref().or(get("order"));
        let precision = order.map(positive_precision).transpose()?;
        let field = match flags.field {
            Some(d) => Some(d),
            None => get("field").map(|v| parse("field", v)).transpose()?,
        };
        let suites = if flags.suites.is_empty() {
            get("suite").map(|v| v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
                .unwrap_or_default()
        } else {
            flags.suites
        };
        let jobs = match flags.jobs {
            Some(j) => Some(j),
            None => get("jobs").map(|v| parse("jobs", v)).transpose()?,
        };
        if jobs == Some(0) {
            return Err(ConfigError("jobs must be at least 1".into()));
        }
        let format = match flags.format {
            Some(f) => f,
            None => get("format").map(|v| parse("format", v)).transpose()?.unwrap_or_default(),
        };
        let seed = match flags.seed {
            Some(s) => s,
            None => get("seed").map(|v| parse("seed", v)).transpose()?.unwrap_or(0),
        };
        let samples = match flags.samples {
            Some(s) => s,
            None => get("samples").map(|v| parse("samples", v)).transpose()?.unwrap_or(100),
        };
        let catalog = flags.catalog.or_else(|| get("catalog").map(String::from));
        let timings = flags.timings || get("timings").map(|v| parse::<bool>("timings", v)).transpose()?.unwrap_or(false);
        Ok(RunConfig { precision, field, suites, jobs, format, seed, samples, catalog, timings })
    }
}
