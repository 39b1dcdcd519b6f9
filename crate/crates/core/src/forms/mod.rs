//! Named modular forms and their q-expansions.
//!
//! Every form in the [`Registry`] has a canonical construction and, where one exists,
//! independent alternatives (eta quotients, theta sums, divisor sums, Eisenstein
//! combinations, algebraic expressions over other forms) that are cross-checked.

mod eisenstein;
mod eta;
mod eval;
mod expr;
mod groups;
mod registry;
mod theta;

pub use eisenstein::{classical_eisenstein, eisenstein_kernel, eisenstein_series, DivisorSeries};
pub use eta::{eta_leading_exponent, eta_product_coefficients, eta_quotient_series};
pub use eval::{ladder, lambert_series, unify, Evaluator};
pub use expr::{parse_expr, Expr, ParseError};
pub use groups::{triangle_group, GroupType, TriangleGroup, TRIANGLE_GROUPS};
pub use registry::{
    eval_form, registry_crosschecks, Constructor, CrosscheckOutcome, EisensteinTerm, FormDescriptor, FormError,
    Registry,
};
pub use theta::{theta_sum, ThetaError, ThetaRule};
