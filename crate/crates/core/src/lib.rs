//! Exact q-expansion engine for modular forms on small Hecke congruence subgroups.
//!
//! The crate builds q-series of eta quotients, theta-nulls and Eisenstein series with exact
//! rational (or quadratic-field) coefficients, and uses them to verify divisor-sum identities,
//! coupled differential systems and generalized Chazy equations coefficient by coefficient.
//! A pass always means "verified to the stated order", never a proof.

pub mod arithmetic;
pub mod forms;
pub mod hypergeometric;
pub mod identity;
pub mod qseries;
