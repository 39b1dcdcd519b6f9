//! Number-theoretic kernels: weighted divisor sums, Dirichlet characters, generalized
//! Bernoulli numbers and L-values, the eta multiplier system and cusp orders on `Gamma0(N)`.

mod bernoulli;
mod character;
mod divisor;
mod modular;

pub use bernoulli::{bernoulli, eisenstein_constant, generalized_bernoulli, l_value_at_one_minus};
pub use character::{CharacterError, DirichletCharacter};
pub use divisor::{divisors, factorize, sigma, sigma_conj, sigma_table, WeightVector};
pub use modular::{
    cusps_of_gamma0, eta_level, eta_multiplier, eta_multiplier_branches, eta_order_at_cusp, eta_quotient_character,
    eta_quotient_order_at_cusp, gamma0_generators, gamma0_index, jacobi, Automorphy, CuspData, EtaFactors,
    EtaMultiplier, GroupElement, ModularError,
};
