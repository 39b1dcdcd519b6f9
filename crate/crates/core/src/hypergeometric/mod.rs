//! Exact hypergeometric machinery in the Hauptmodul variable.

mod chazy;
mod pf;
mod poly;
mod representations;
mod series;

pub use chazy::{
    family_identities, family_m, family_mn, family_w20, family_xii, general_polynomial, is_degenerate,
    proposition_checks, theorem_general_coeffs, verify_theorem_general, Family, GeneralReport, IdentityVerdict,
    ParamPoly, TripleVerdict,
};
pub use pf::{
    chazy_residual, monomial_weight, p12, p3, p4, p6, p8, u_hat_ladder, Exponents, PFOperator, PfError, WeightedPoly,
};
pub use poly::{Poly, RationalFunction, RationalFunctionError};
pub use representations::{all_ladder_consistency, group_operator, hauptmodul, ladder_consistency, LadderCheck};
pub use series::{hypergeometric_series, three_f_two_series, two_f_one_series, HypergeometricSeriesError};
