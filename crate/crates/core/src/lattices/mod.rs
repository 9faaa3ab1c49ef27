//! Exact Gram-matrix lattices: root lattices, trivial lattices of elliptic
//! surfaces, height and determinant formulas, torsion exclusion, and rank-2
//! isometry and similarity tests.

mod gram;
mod mw;
mod rank2;

pub use gram::{root_gram, GramLattice, RootType};
pub use mw::{
    det_formula, height_norm, torsion_search, torsion_search_multi, torsion_search_values,
    trivial_lattice, SectionData, TorsionCandidate,
};
pub use rank2::{
    even_forms_with_rotation, find_order4_isometry, gauss_reduce, is_similar_square, k3_fibers, narrow_index,
    supersingular_reduction_scalings, surface_fibers, IndexCandidate, IntMatrix2,
    NarrowDerivation, ReducedForm, ReductionScalings,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("invalid root system {0}")]
    InvalidRootType(String),
    #[error("lattice is degenerate (determinant 0)")]
    Degenerate,
    #[error("expected a rank-2 lattice, got rank {0}")]
    NotRankTwo(usize),
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("intersection number (PO) = {0} is negative")]
    NegativeIntersection(i64),
    #[error("section lists {got} fiber components, configuration has {expected} fibers")]
    ComponentCount { expected: usize, got: usize },
    #[error("component {index} does not exist on a fiber of type {fiber}")]
    ComponentIndex { index: usize, fiber: String },
    #[error("index not determined: surviving candidates {0:?}")]
    AmbiguousIndex(Vec<u64>),
    #[error("p = {0} must be a prime > 3 with p = 3 mod 4")]
    ResidueClass(u64),
    #[error("value exceeds machine integer range")]
    Overflow,
}
