use num_integer::{Integer as _, Roots};
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{det_formula, trivial_lattice, GramLattice, LatticeError};
use crate::kodaira::{FiberData, KodairaType};
use crate::numeric::{int_rat, is_prime, rational_sqrt, QMatrix, Rational};

pub type IntMatrix2 = [[i64; 2]; 2];

fn entries(g: &GramLattice) -> Option<[Rational; 3]> {
    (g.rank() == 2).then(|| {
        let m = g.gram();
        [m.get(0, 0).clone(), m.get(0, 1).clone(), m.get(1, 1).clone()]
    })
}

fn preserves(g: &[Rational; 3], m: &IntMatrix2) -> bool {
    let [a, b, c] = g;
    // columns u = (m00, m10), v = (m01, m11)
    let form = |x: [i64; 2], y: [i64; 2]| {
        a * int_rat(x[0] * y[0]) + b * int_rat(x[0] * y[1] + x[1] * y[0]) + c * int_rat(x[1] * y[1])
    };
    let u = [m[0][0], m[1][0]];
    let v = [m[0][1], m[1][1]];
    form(u, u) == *a && form(u, v) == *b && form(v, v) == *c
}

/// Integral `M` with `M^T G M = G` and `M^2 = -1`, entries bounded by
/// `bound`. Candidates are tried by increasing max-norm, then
/// lexicographically in `(m00, m01, m10, m11)`, so the answer is canonical.
///
/// For a 2x2 matrix `M^2 = -1` iff `tr M = 0` and `det M = 1`.
pub fn find_order4_isometry(g: &GramLattice, bound: i64) -> Option<IntMatrix2> {
    let e = entries(g)?;
    let mut cands = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                if -a * a - b * c == 1 {
                    cands.push([a, b, c]);
                }
            }
        }
    }
    cands.sort_by_key(|[a, b, c]| (a.abs().max(b.abs()).max(c.abs()), *a, *b, *c));
    cands
        .into_iter()
        .map(|[a, b, c]| [[a, b], [c, -a]])
        .find(|m| preserves(&e, m))
}

/// A binary form `a x^2 + 2 b xy + c y^2` with `0 <= 2b <= a <= c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl ReducedForm {
    pub fn to_lattice(&self) -> GramLattice {
        GramLattice::new(
            QMatrix::from_rows(vec![
                vec![self.a.clone(), self.b.clone()],
                vec![self.b.clone(), self.c.clone()],
            ])
            .expect("2x2"),
        )
        .expect("symmetric")
    }
}

fn nearest_integer(r: &Rational) -> Rational {
    (r + Rational::new(1.into(), 2.into())).floor()
}

/// Lagrange-Gauss reduction of a positive-definite binary form.
pub fn gauss_reduce(g: &GramLattice) -> Result<ReducedForm, LatticeError> {
    let [mut a, mut b, mut c] = entries(g).ok_or(LatticeError::NotRankTwo(g.rank()))?;
    if !g.is_positive_definite() {
        return Err(LatticeError::NotPositiveDefinite);
    }
    loop {
        if a > c {
            std::mem::swap(&mut a, &mut c);
        }
        let m = nearest_integer(&(&b / &a));
        if m.is_zero() {
            break;
        }
        // e2 -> e2 - m e1
        let nb = &b - &m * &a;
        c = &c - int_rat(2) * &m * &b + &m * &m * &a;
        b = nb;
    }
    Ok(ReducedForm { a, b: b.abs(), c })
}

/// `Some(c)` iff `g` is similar to the square lattice, i.e. `g = L0[c]`.
pub fn is_similar_square(g: &GramLattice) -> Option<Rational> {
    let r = gauss_reduce(g).ok()?;
    (r.b.is_zero() && r.a == r.c).then_some(r.a)
}

/// Reduced even positive-definite binary forms of determinant `det` that
/// admit an order-4 isometry. A rank-2 lattice with such an isometry is a
/// scaled square lattice, so at most one form survives per determinant.
pub fn even_forms_with_rotation(det: i64, isometry_bound: i64) -> Vec<ReducedForm> {
    let mut out = Vec::new();
    for a in (2i64..).step_by(2).take_while(|a| 3 * a * a <= 4 * det) {
        for b in 0..=a / 2 {
            if (det + b * b) % a != 0 {
                continue;
            }
            let c = (det + b * b) / a;
            if c < a || c % 2 != 0 {
                continue;
            }
            let l = GramLattice::from_int_rows(&[&[a, b], &[b, c]]).expect("symmetric");
            if find_order4_isometry(&l, isometry_bound).is_some() {
                out.push(ReducedForm {
                    a: int_rat(a),
                    b: int_rat(b),
                    c: int_rat(c),
                });
            }
        }
    }
    out
}

/// One candidate index of the narrow lattice in the Mordell-Weil lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexCandidate {
    pub index: u64,
    pub sum_of_two_squares: bool,
    /// `index * sqrt(det M)` when rational.
    pub scale: Option<String>,
    pub even_integral: bool,
}

/// The narrow lattice `L` (sections through the identity components) of a
/// rank-2 Mordell-Weil lattice `M` with an order-4 isometry.
///
/// `L` is a sublattice stable under the isometry, so `M/L` is a quotient of
/// `Z[i]` by an ideal and the index is a sum of two squares; the index
/// divides the order of the product of component groups; and `L` is even
/// and square-similar, so `index * sqrt(det M)` must be an even integer.
/// The index is accepted only when exactly one divisor survives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NarrowDerivation {
    pub det_mw: String,
    pub budget: u64,
    pub candidates: Vec<IndexCandidate>,
    pub index: u64,
    pub scale: i64,
    pub det: i64,
}

fn is_sum_of_two_squares(n: u64) -> bool {
    (0..).take_while(|a| a * a <= n).any(|a| {
        let r = n - a * a;
        let s = r.sqrt();
        s * s == r
    })
}

pub fn narrow_index(det_mw: &Rational, budget: u64) -> Result<NarrowDerivation, LatticeError> {
    let root = rational_sqrt(det_mw);
    let mut candidates = Vec::new();
    for index in (1..=budget).filter(|d| budget.is_multiple_of(*d)) {
        let scale = root.as_ref().map(|r| r * int_rat(index as i64));
        let even_integral = scale
            .as_ref()
            .is_some_and(|s| s.is_integer() && s.to_integer().is_even());
        candidates.push(IndexCandidate {
            index,
            sum_of_two_squares: is_sum_of_two_squares(index),
            scale: scale.as_ref().map(ToString::to_string),
            even_integral,
        });
    }
    let ok: Vec<&IndexCandidate> = candidates
        .iter()
        .filter(|c| c.sum_of_two_squares && c.even_integral)
        .collect();
    if ok.len() != 1 {
        return Err(LatticeError::AmbiguousIndex(ok.iter().map(|c| c.index).collect()));
    }
    let index = ok[0].index;
    let scale = (root.expect("accepted candidate has a scale") * int_rat(index as i64))
        .to_integer()
        .try_into()
        .map_err(|_| LatticeError::Overflow)?;
    Ok(NarrowDerivation {
        det_mw: det_mw.to_string(),
        budget,
        candidates,
        index,
        scale,
        det: scale * scale,
    })
}

/// Narrow-lattice scalings for `S` and `X` at a prime `p = 3 mod 4`, where
/// `det NS = -p^2` and the Mordell-Weil lattice has rank 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionScalings {
    pub p: u64,
    pub s: NarrowDerivation,
    pub x: NarrowDerivation,
}

pub fn surface_fibers() -> Vec<FiberData> {
    vec![FiberData::of_type(KodairaType::IStar(6))]
}

pub fn k3_fibers() -> Vec<FiberData> {
    vec![
        FiberData::of_type(KodairaType::IStar(2)),
        FiberData::of_type(KodairaType::IVStar),
        FiberData::of_type(KodairaType::IVStar),
    ]
}

pub fn supersingular_reduction_scalings(p: u64) -> Result<ReductionScalings, LatticeError> {
    if p <= 3 || !is_prime(p) || p % 4 != 3 {
        return Err(LatticeError::ResidueClass(p));
    }
    let det_ns = -int_rat((p * p) as i64);
    let derive = |chi: i64, fibers: Vec<FiberData>| {
        let v = trivial_lattice(chi, &fibers);
        let budget = fibers.iter().map(|f| f.group_order).product();
        narrow_index(&det_formula(&det_ns, &v, 1)?, budget)
    };
    Ok(ReductionScalings {
        p,
        s: derive(1, surface_fibers())?,
        x: derive(2, k3_fibers())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn lat(a: i64, b: i64, c: i64) -> GramLattice {
        GramLattice::from_int_rows(&[&[a, b], &[b, c]]).unwrap()
    }

    /// Number of nonzero vectors of minimal norm, by enumeration in a box.
    fn kissing_number(a: i64, b: i64, c: i64) -> usize {
        let norms: Vec<i64> = (-6i64..=6)
            .flat_map(|x| (-6i64..=6).map(move |y| (x, y)))
            .filter(|&(x, y)| (x, y) != (0, 0))
            .map(|(x, y)| a * x * x + 2 * b * x * y + c * y * y)
            .collect();
        let min = *norms.iter().min().unwrap();
        norms.iter().filter(|&&n| n == min).count()
    }

    #[test]
    fn square_lattices_have_rotation() {
        for c in [1, 2, 6, 14] {
            assert_eq!(find_order4_isometry(&lat(c, 0, c), 10), Some([[0, -1], [1, 0]]));
        }
        assert_eq!(find_order4_isometry(&lat(1, 0, 2), 10), None);
        assert_eq!(find_order4_isometry(&lat(2, 1, 2), 10), None);
        // a skewed basis of the square lattice needs a different witness
        let w = find_order4_isometry(&lat(1, 1, 2), 10).unwrap();
        assert_eq!(w[0][0] + w[1][1], 0);
        assert_eq!(w[0][0] * w[1][1] - w[0][1] * w[1][0], 1);
    }

    #[test]
    fn reduction_and_similarity() {
        assert_eq!(is_similar_square(&lat(2, 0, 2)), Some(int_rat(2)));
        assert_eq!(is_similar_square(&lat(6, 0, 6)), Some(int_rat(6)));
        assert_eq!(is_similar_square(&lat(2, 1, 2)), None);
        assert_eq!(kissing_number(2, 1, 2), 6);
        assert_eq!(kissing_number(2, 0, 2), 4);
        // basis (1,0), (3,1) of L0[5]
        assert_eq!(is_similar_square(&lat(5, 15, 50)), Some(int_rat(5)));
        let r = gauss_reduce(&lat(7, -9, 13)).unwrap();
        assert!(int_rat(2) * &r.b <= r.a && r.a <= r.c && r.b >= Rational::zero());
        assert_eq!(r.to_lattice().det(), lat(7, -9, 13).det());
        assert!(gauss_reduce(&lat(1, 2, 1)).is_err());
    }

    #[test]
    fn narrow_lattice_scalings() {
        for (p, s, x) in [(7u64, 14i64, 42i64), (11, 22, 66), (19, 38, 114)] {
            let r = supersingular_reduction_scalings(p).unwrap();
            assert_eq!((r.s.index, r.s.scale), (4, s));
            assert_eq!((r.x.index, r.x.scale), (36, x));
            assert_eq!(r.s.budget, 4);
            assert_eq!(r.x.budget, 36);
            assert_eq!(r.s.det_mw, rat((p * p) as i64, 4).to_string());
        }
        assert_eq!(supersingular_reduction_scalings(19).unwrap().s.det, 1444);
        assert!(supersingular_reduction_scalings(13).is_err());
        assert!(supersingular_reduction_scalings(3).is_err());
    }

    #[test]
    fn isometry_and_similarity_agree_on_labelled_lattices() {
        for p in [7i64, 11, 19, 23] {
            for c in [2, 6, 2 * p, 6 * p] {
                let l = lat(c, 0, c);
                assert!(find_order4_isometry(&l, 10).is_some());
                assert_eq!(is_similar_square(&l), Some(int_rat(c)));
            }
        }
    }

    #[test]
    fn rotation_forms_by_determinant() {
        let only = |d| {
            let f = even_forms_with_rotation(d, 10);
            assert_eq!(f.len(), 1, "det {d}: {f:?}");
            f[0].clone()
        };
        assert_eq!(only(4).a, int_rat(2));
        assert_eq!(only(36).a, int_rat(6));
        assert_eq!(only(196).a, int_rat(14));
        assert!(even_forms_with_rotation(12, 10).is_empty());
        // det 3 is the hexagonal lattice: order 6, no rotation by 90 degrees
        assert!(even_forms_with_rotation(3, 10).is_empty());
    }

    #[test]
    fn sums_of_two_squares() {
        let want: Vec<u64> = vec![1, 2, 4, 5, 8, 9, 10, 13, 16, 17, 18, 20, 25, 26, 29, 32, 34, 36];
        let got: Vec<u64> = (1..=36).filter(|&n| is_sum_of_two_squares(n)).collect();
        assert_eq!(got, want);
    }
}
