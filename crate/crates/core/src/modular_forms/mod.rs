//! Eta-product q-expansions, the CM weight-3 eigenvalues over `Z[i]`, and
//! local zeta factors of `S` at good primes.

mod euler;
mod gaussian;
mod series;

pub use euler::{
    base_curve_ap, chi_minus4, eigenvalues_become_algebraic, euler_factor, zeta_local,
    EulerFactor, FormKind, LocalZeta,
};
pub use gaussian::GaussianInteger;
pub use series::{eta_power, QSeries};

use thiserror::Error;

use crate::numeric::{is_prime, Integer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("eta({s}tau)^{k} has non-integral leading exponent {s}*{k}/24")]
    NonIntegralExponent { s: usize, k: usize },
    #[error("p = {0} is not a prime > 3")]
    BadPrime(u64),
}

/// `b_p` of the weight-3 CM form: `0` for `p = 3 mod 4`, else
/// `pi^2 + conj(pi)^2` with `pi` the primary prime above `p`.
pub fn cm_weight3_bp(p: u64) -> Result<Integer, ModularError> {
    if p <= 3 || !is_prime(p) {
        return Err(ModularError::BadPrime(p));
    }
    if p % 4 == 3 {
        return Ok(Integer::from(0));
    }
    let pi = GaussianInteger::primary_prime_above(p).expect("p = 1 mod 4 splits");
    let sq = pi.pow(2);
    Ok(&sq.re * Integer::from(2))
}
