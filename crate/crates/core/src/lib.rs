//! Exact verification workbench for the elliptic modular surface `S` over
//! the modular curve `B: eta^2 = xi^3 - 12^3` of the commutator subgroup of
//! `SL(2, Z)`, and for the elliptic K3 surface `X` it covers.

pub mod numeric;
pub mod symbolic;
pub mod par;
pub mod curves;
pub mod kodaira;
pub mod lattices;
pub mod modular_forms;
pub mod surface_arith;
pub mod invariants;
pub mod identities;
pub mod verifier;
