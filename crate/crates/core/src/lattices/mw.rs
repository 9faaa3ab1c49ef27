use num_traits::{Signed, Zero};

use super::{root_gram, GramLattice, LatticeError};
use crate::kodaira::FiberData;
use crate::numeric::{int_rat, Integer, Rational};

/// Trivial lattice: the span of the zero section, a fiber, and the fiber
/// components off the zero section. The first summand is the hyperbolic
/// block `[[-chi, 1], [1, 0]]` of determinant `-1`, followed by the negated
/// root lattices of the fibers.
pub fn trivial_lattice(chi: i64, fibers: &[FiberData]) -> GramLattice {
    let u = GramLattice::from_int_rows(&[&[-chi, 1], &[1, 0]]).expect("symmetric");
    fibers
        .iter()
        .filter_map(|f| f.kind.root_type())
        .fold(u, |acc, r| acc.direct_sum(&root_gram(r).expect("valid root type").negate()))
}

/// A section through given components of the reducible fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionData {
    pub chi: i64,
    /// Intersection number with the zero section.
    pub po: i64,
    /// Index into `FiberData::contributions`, one per fiber.
    pub components: Vec<usize>,
}

/// `<P, P> = 2 chi + 2 (PO) - sum_v contr_v(P)`.
pub fn height_norm(s: &SectionData, fibers: &[FiberData]) -> Result<Rational, LatticeError> {
    if s.po < 0 {
        return Err(LatticeError::NegativeIntersection(s.po));
    }
    if s.components.len() != fibers.len() {
        return Err(LatticeError::ComponentCount {
            expected: fibers.len(),
            got: s.components.len(),
        });
    }
    let mut h = int_rat(2 * s.chi + 2 * s.po);
    for (f, &c) in fibers.iter().zip(&s.components) {
        let contr = f
            .contributions
            .get(c)
            .ok_or(LatticeError::ComponentIndex { index: c, fiber: f.kind.to_string() })?;
        h -= contr;
    }
    Ok(h)
}

/// A hypothetical torsion section: `<P, P> = 0` with `(PO) >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCandidate {
    pub po: Integer,
    pub contributions: Vec<Rational>,
}

/// All `(PO) >= 0` integral with `0 = 2 chi + 2 (PO) - contr`, `contr`
/// ranging over `values`.
pub fn torsion_search_values(chi: i64, values: &[Rational]) -> Vec<TorsionCandidate> {
    let mut out = Vec::new();
    for v in values {
        if let Some(po) = solve_po(chi, v) {
            out.push(TorsionCandidate {
                po,
                contributions: vec![v.clone()],
            });
        }
    }
    out
}

fn solve_po(chi: i64, total: &Rational) -> Option<Integer> {
    let po = (total - int_rat(2 * chi)) / int_rat(2);
    (po.is_integer() && !po.is_negative()).then(|| po.to_integer())
}

/// Torsion search against one fiber; an empty result rules out torsion.
pub fn torsion_search(chi: i64, fiber: &FiberData) -> Vec<TorsionCandidate> {
    torsion_search_values(chi, &fiber.contribution_values())
}

/// Torsion search with one contribution chosen per fiber.
pub fn torsion_search_multi(chi: i64, fibers: &[FiberData]) -> Vec<TorsionCandidate> {
    let sets: Vec<Vec<Rational>> = fibers.iter().map(FiberData::contribution_values).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; sets.len()];
    loop {
        let picked: Vec<Rational> = choice.iter().zip(&sets).map(|(&i, s)| s[i].clone()).collect();
        let total = picked.iter().fold(Rational::zero(), |a, b| a + b);
        if let Some(po) = solve_po(chi, &total) {
            out.push(TorsionCandidate {
                po,
                contributions: picked,
            });
        }
        // odometer over the choices
        let mut k = 0;
        loop {
            if k == sets.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < sets[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// `|det M| = |tors|^2 |det NS / det V|` for the Mordell-Weil lattice
/// `M = E(K)/tors`. A rank-0 lattice has determinant 1.
pub fn det_formula(
    det_ns: &Rational,
    v: &GramLattice,
    torsion_order: u64,
) -> Result<Rational, LatticeError> {
    let dv = v.det();
    if dv.is_zero() {
        return Err(LatticeError::Degenerate);
    }
    let t = int_rat(torsion_order as i64);
    Ok(&t * &t * (det_ns / dv).abs())
}
