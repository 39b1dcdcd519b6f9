//! Exact truncated Puiseux series in `q^(1/D)` over a quadratic field.
//!
//! Every series carries its own precision `P`: coefficients of `q^e` with `e < P` are exact,
//! everything from `P` on is unknown. Operations propagate precision conservatively.

mod scalar;
mod series;

pub use scalar::{
    ceil_i64, int, is_valid_discriminant, lcm_u64, parse_rational, rat, rational_root, QuadExtScalar, Rational,
};
pub use series::{PuiseuxSeries, SeriesError, MAX_EXPONENT_DENOMINATOR};
