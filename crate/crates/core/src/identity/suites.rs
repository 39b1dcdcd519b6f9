use serde::Serialize;

use crate::forms::triangle_group;

use super::record::{catalog, Tier};
use super::verify::{run, RunOptions, VerdictReport};

/// Verdicts of a named group of records.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub pass: bool,
    pub records: Vec<VerdictReport>,
}

impl SuiteReport {
    fn new(name: &str, records: Vec<VerdictReport>) -> Self {
        // An empty suite is a selection error, never a pass.
        let pass = !records.is_empty() && records.iter().all(|r| r.pass);
        SuiteReport { name: name.to_string(), pass, records }
    }
}

fn suite(name: &str, filters: &[String]) -> SuiteReport {
    if filters.is_empty() {
        return SuiteReport::new(name, vec![]);
    }
    SuiteReport::new(name, run(catalog(), &RunOptions { filters: filters.to_vec(), ..Default::default() }))
}

/// Differential systems: a triangle-group id (system and gDH), `ramanujan`, `theta`, or `r4`/`r3`/`r2`.
pub fn verify_system(group: &str) -> SuiteReport {
    let filters = match group {
        "ramanujan" => vec!["system.ramanujan".to_string()],
        "theta" => vec!["system.theta.*".to_string()],
        "r4" | "r3" | "r2" => vec![format!("system.sig{}", &group[1..])],
        g if triangle_group(g).is_some() => vec![format!("system.triangle.{g}"), format!("system.gdh.{g}")],
        _ => vec![],
    };
    suite(group, &filters)
}

/// Chazy-tier records: a triangle-group id (its generalized Chazy equation and the general
/// polynomial), `r4`/`r3`/`r2` (ladder polynomials and test vectors), or `classical`.
pub fn verify_chazy(group: &str) -> SuiteReport {
    let filters = match group {
        "classical" => vec!["chazy.delta".to_string(), "chazy.E2".to_string(), "chazy.jacobi.*".to_string()],
        "r4" | "r3" | "r2" => vec![format!("chazy.sig{}", &group[1..])],
        g if triangle_group(g).is_some() => vec![format!("chazy.p*.{g}"), format!("chazy.general.{g}")],
        _ => vec![],
    };
    suite(group, &filters)
}

/// All twelve AGM identities.
pub fn verify_agm() -> SuiteReport {
    suite("agm", &[Tier::Agm.name().to_string()])
}

/// Every counting record (`s = 1..4`, squares and triangles).
pub fn verify_counting_suite() -> SuiteReport {
    suite("counting", &[Tier::Counting.name().to_string()])
}
