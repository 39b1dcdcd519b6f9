//! The identity catalog and its verifier.
//!
//! Records live in `data/catalog.toml`. Each states one or more residuals in the prefix
//! expression language; a record passes when every residual vanishes to the stated order.
//! Differential identities use `' = q d/dq`, so every `2 pi i` is scaled out: the ladder
//! `u_k = (2 pi i)^(k/2) u~_k / R^2` appears as `(un R k E)`, and the Darboux-Halphen
//! functions appear as `v_X = (X^rho)'/(rho X^rho)`.
//!
//! Counting records compare a lattice enumeration against theta-power coefficients and the
//! divisor formulas, so the oracle never passes through the formulas it checks.

mod counting;
mod record;
mod suites;
mod verify;

pub use counting::{brute_force_count, counting_table, formula_value, lattice_counts, theta_counts, CountRow};
pub use record::{
    catalog, parse_catalog, CatalogError, Check, CountKind, CountTerm, CountingOracle, IdentityRecord, LabeledCheck,
    Monomial, Tier, CATALOG_TOML,
};
pub use suites::{verify_agm, verify_chazy, verify_counting_suite, verify_system, SuiteReport};
pub use verify::{run, select, verify, verify_with, CheckVerdict, Failure, RunOptions, VerdictReport};

/// Every source statement the catalog must cover; each record cites exactly one of these.
pub const COVERAGE: &[&str] = &[
    "divisor-sum and Eisenstein expansions of A,B,C monomials",
    "supplementary expansions of B and C powers",
    "weight-3 Eisenstein basis on Gamma0(8)",
    "Lambert form of KhatEhat",
    "Kaneko-Koike generators of even-weight forms on Gamma0(2)",
    "Eisenstein form on Gamma0(2) vanishing at zero",
    "printed expansions of A4, E4^(1/4) and E6^(1/6)",
    "theta double sums for the cubic triple",
    "quadratic signature-2 AGM",
    "quartic signature-2 AGM",
    "cubic signature-3 AGM",
    "quadratic signature-4 AGM",
    "Ramanujan's P-Q-R system",
    "signature-r system for A,B,C,E",
    "theta-null system",
    "triangle-group system",
    "generalized Darboux-Halphen system",
    "Chazy-type equation for Delta",
    "Chazy equation for E2",
    "Jacobi's third-order theta equation",
    "signature-r Chazy polynomial",
    "generalized Chazy equations of the triangle groups",
    "general Chazy polynomial of the triangle groups",
    "hypergeometric representation of A and B",
    "derivative of the Hauptmodul",
    "Gamma(1) hypergeometric representations",
    "Delta roots as hypergeometric solutions",
    "Type II squares as 3F2",
    "Khat as complete elliptic integral",
    "Type III theta identity",
    "sums of squares",
    "sums of triangular numbers",
];
