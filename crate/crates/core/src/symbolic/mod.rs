//! Exact polynomials and rational functions over Q, the function field of
//! the curve `B: eta^2 = xi^3 - 1728`, and valuations at places.

mod bfield;
mod place;
mod poly;
mod ratfun;

pub use bfield::{eta_squared, BFieldElement, B_CONSTANT};
pub use place::{is_irreducible_over_q, Order, Place, Valued};
pub use poly::{div_rem, gcd_univariate, make_monic, Monomial, MultiPoly, Var, NVARS};
pub use ratfun::RationalFunction;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("evaluation left a variable unassigned")]
    UnassignedVariable,
    #[error("operation needs a univariate polynomial")]
    NotUnivariate,
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("irreducibility test not available in degree {0}")]
    UnsupportedDegree(u32),
    #[error("valuation at {0} is not supported for this coefficient type")]
    UnsupportedPlace(String),
    #[error("element does not lie in Q(xi, eta)")]
    NotInFunctionField,
}
