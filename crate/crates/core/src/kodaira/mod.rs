//! Minimal local models at a place and Kodaira fiber types, by the
//! valuation table that is complete away from residue characteristics 2 and 3.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::curves::WeierstrassCurve;
use crate::lattices::{root_gram, RootType};
use crate::numeric::{Coefficient, FieldElement, Rational};
use crate::symbolic::{Order, Place, SymbolicError, Valued};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KodairaError {
    #[error("discriminant vanishes identically")]
    Singular,
    #[error("residue characteristic {0} is not supported")]
    ResidueCharacteristic(u64),
    #[error("no Kodaira type for v(c4)={v4}, v(c6)={v6}, v(Delta)={vd}")]
    TableGap { v4: Order, v6: Order, vd: i64 },
    #[error("model is not minimal at this place")]
    NotMinimal,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum KodairaType {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// `v(Delta)` of a minimal model, which is also the Euler number of the
    /// fiber.
    pub fn euler_number(self) -> u32 {
        match self {
            KodairaType::I(n) => n,
            KodairaType::IStar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Root lattice spanned by the components missing the zero section.
    pub fn root_type(self) -> Option<RootType> {
        match self {
            KodairaType::I(n) if n >= 2 => Some(RootType::A(n as usize - 1)),
            KodairaType::I(_) | KodairaType::II => None,
            KodairaType::III => Some(RootType::A(1)),
            KodairaType::IV => Some(RootType::A(2)),
            KodairaType::IStar(n) => Some(RootType::D(n as usize + 4)),
            KodairaType::IVStar => Some(RootType::E(6)),
            KodairaType::IIIStar => Some(RootType::E(7)),
            KodairaType::IIStar => Some(RootType::E(8)),
        }
    }

    pub fn component_count(self) -> u32 {
        self.root_type().map_or(1, |r| r.rank() as u32 + 1)
    }

    /// A valuation triple realising this type, used for round-trip checks.
    pub fn sample_valuations(self) -> (i64, i64, i64) {
        let vd = self.euler_number() as i64;
        match self {
            KodairaType::I(0) => (0, 0, 0),
            KodairaType::I(_) => (0, 0, vd),
            KodairaType::IStar(0) => (2, 3, 6),
            KodairaType::IStar(_) => (2, 3, vd),
            KodairaType::II => (1, 1, vd),
            KodairaType::III => (1, 2, vd),
            KodairaType::IV => (2, 2, vd),
            KodairaType::IVStar => (3, 4, vd),
            KodairaType::IIIStar => (3, 5, vd),
            KodairaType::IIStar => (4, 5, vd),
        }
    }

    /// Dual graph of the fiber for the additive types with a tree of
    /// smooth rational components: the affine Dynkin diagram. Vertex 0 is
    /// the component met by the zero section; vertex `i + 1` is root node `i`.
    pub fn tree_graph(self) -> Option<(usize, Vec<(usize, usize)>)> {
        let (root, attach) = match self {
            KodairaType::IStar(_) => (self.root_type()?, 1),
            KodairaType::IVStar => (RootType::E(6), 5),
            KodairaType::IIIStar => (RootType::E(7), 0),
            KodairaType::IIStar => (RootType::E(8), 6),
            _ => return None,
        };
        let mut edges: Vec<(usize, usize)> =
            root.edges().into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
        edges.push((0, attach + 1));
        Some((root.rank() + 1, edges))
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

/// Type from the valuations of `c4, c6, Delta` of a minimal model.
pub fn classify_valuations(v4: Order, v6: Order, vd: i64) -> Result<KodairaType, KodairaError> {
    let gap = || KodairaError::TableGap { v4, v6, vd };
    if vd < 0 {
        return Err(gap());
    }
    if v4.at_least(4) && v6.at_least(6) {
        return Err(KodairaError::NotMinimal);
    }
    if vd == 0 {
        return Ok(KodairaType::I(0));
    }
    if v4 == Order::Finite(0) {
        return Ok(KodairaType::I(vd as u32));
    }
    if v4 == Order::Finite(2) && v6 == Order::Finite(3) && vd > 6 {
        return Ok(KodairaType::IStar(vd as u32 - 6));
    }
    let fits = |a: i64, exact4: bool, b: i64, exact6: bool| {
        let ok4 = if exact4 { v4 == Order::Finite(a) } else { v4.at_least(a) };
        let ok6 = if exact6 { v6 == Order::Finite(b) } else { v6.at_least(b) };
        ok4 && ok6
    };
    let t = match vd {
        2 if fits(1, false, 1, true) => KodairaType::II,
        3 if fits(1, true, 2, false) => KodairaType::III,
        4 if fits(2, false, 2, true) => KodairaType::IV,
        6 if fits(2, false, 3, false) => KodairaType::IStar(0),
        8 if fits(3, false, 4, true) => KodairaType::IVStar,
        9 if fits(3, true, 5, false) => KodairaType::IIIStar,
        10 if fits(4, false, 5, true) => KodairaType::IIStar,
        _ => return Err(gap()),
    };
    Ok(t)
}

/// Integral minimal model at a place together with its valuation triple.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalModel<F> {
    pub place: Place,
    pub curve: WeierstrassCurve<F>,
    /// The model is `(u^4 a4, u^6 a6)` with `u = pi^k`.
    pub k: i64,
    pub v_c4: Order,
    pub v_c6: Order,
    pub v_delta: i64,
}

impl<F> LocalModel<F> {
    pub fn kodaira_type(&self) -> Result<KodairaType, KodairaError> {
        classify_valuations(self.v_c4, self.v_c6, self.v_delta)
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// Scale by a power of the uniformizer until the model is integral and
/// minimal. In residue characteristic 0, `v(c4) = v(a4)` and `v(c6) = v(a6)`,
/// so `k = -min(floor(v(a4)/4), floor(v(a6)/6))`.
pub fn minimal_model_at<F>(
    c: &WeierstrassCurve<F>,
    place: &Place,
) -> Result<LocalModel<F>, KodairaError>
where
    F: Coefficient + Valued,
{
    if c.is_singular() {
        return Err(KodairaError::Singular);
    }
    let v4 = c.a4.valuation(place)?;
    let v6 = c.a6.valuation(place)?;
    let bound = |v: Order, d: i64| v.finite().map(|x| floor_div(x, d));
    let k = -[bound(v4, 4), bound(v6, 6)]
        .into_iter()
        .flatten()
        .min()
        .expect("a4 and a6 are not both zero on a smooth curve");
    let pi = F::uniformizer(place)?;
    let u = if k >= 0 {
        pi.pow_u(k as u64)
    } else {
        pi.try_inverse().expect("uniformizer is nonzero").pow_u((-k) as u64)
    };
    let curve = c.scale(&u);
    let v_c4 = curve.c4().valuation(place)?;
    let v_c6 = curve.c6().valuation(place)?;
    let v_delta = curve
        .discriminant()
        .valuation(place)?
        .finite()
        .ok_or(KodairaError::Singular)?;
    Ok(LocalModel {
        place: place.clone(),
        curve,
        k,
        v_c4,
        v_c6,
        v_delta,
    })
}

/// Fiber invariants derived from the type and its root lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberData {
    pub kind: KodairaType,
    /// Euler number `e_v`.
    pub euler: u32,
    /// Number of irreducible components `m_v`.
    pub components: u32,
    /// Order of the group of simple components, the root lattice discriminant.
    pub group_order: u64,
    /// `contr_v` at each simple component, the identity component first.
    /// Non-identity values are diagonal entries of the inverse Cartan
    /// matrix at minuscule nodes.
    pub contributions: Vec<Rational>,
}

impl FiberData {
    pub fn of_type(kind: KodairaType) -> Self {
        let mut contributions = vec![Rational::zero()];
        let mut group_order = 1u64;
        if let Some(r) = kind.root_type() {
            let l = root_gram(r).expect("valid root type");
            let inv = l.inverse_gram().expect("root lattices are nondegenerate");
            for i in r.minuscule_nodes() {
                contributions.push(inv.get(i, i).clone());
            }
            group_order = l.det().to_integer().try_into().expect("small determinant");
        }
        Self {
            kind,
            euler: kind.euler_number(),
            components: kind.component_count(),
            group_order,
            contributions,
        }
    }

    /// Distinct contribution values, sorted.
    pub fn contribution_values(&self) -> Vec<Rational> {
        let mut v = self.contributions.clone();
        v.sort();
        v.dedup();
        v
    }
}

pub fn classify_fiber<F>(m: &LocalModel<F>) -> Result<FiberData, KodairaError> {
    Ok(FiberData::of_type(m.kodaira_type()?))
}

/// Type of the fiber over an `F_q`-point of the base, from the values of
/// `a4, a6` there. Only good reduction is decided this way; a vanishing
/// discriminant needs the local expansion.
pub fn fiber_type_at_point(a4: &FieldElement, a6: &FieldElement) -> Result<KodairaType, KodairaError> {
    let p = a4.field().characteristic();
    if p == 2 || p == 3 {
        return Err(KodairaError::ResidueCharacteristic(p));
    }
    let c = WeierstrassCurve::new(a4.clone(), a6.clone());
    if c.is_singular() {
        return Err(KodairaError::Unsupported(
            "bad fiber at a point: needs a local parameter".into(),
        ));
    }
    Ok(KodairaType::I(0))
}

/// `#F_v(F_q)` for a singular fiber whose components and singular points
/// are all defined over `F_q`.
///
/// Trees of lines count as `m (q+1) - (m-1)`; a split `I_n` is a cycle
/// (`n q`); `II`, `III`, `IV` are a cusp, two tangent lines and three
/// concurrent lines.
pub fn fiber_point_count(
    f: &FiberData,
    q: u64,
    all_components_rational: bool,
) -> Result<u64, KodairaError> {
    if !all_components_rational {
        return Err(KodairaError::Unsupported(
            "fibers with non-rational components".into(),
        ));
    }
    Ok(match f.kind {
        KodairaType::I(0) => {
            return Err(KodairaError::Unsupported(
                "smooth fiber: count the curve itself".into(),
            ))
        }
        KodairaType::I(n) => n as u64 * q,
        KodairaType::II => q + 1,
        KodairaType::III => 2 * q + 1,
        KodairaType::IV => 3 * q + 1,
        _ => {
            let (v, e) = f.kind.tree_graph().expect("starred types are trees");
            v as u64 * (q + 1) - e.len() as u64
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{k3_curve, modular_surface_curve};
    use crate::numeric::{int_rat, rat, FiniteField};
    use crate::symbolic::{MultiPoly, Var};
    use std::sync::Arc;

    fn g_place() -> Place {
        Place::finite(MultiPoly::from_int_dense(Var::T, &[1728, 0, 1])).unwrap()
    }

    #[test]
    fn surface_fiber_at_origin() {
        let m = minimal_model_at(&modular_surface_curve(), &Place::OriginB).unwrap();
        assert_eq!(m.k, 1);
        assert_eq!((m.v_c4, m.v_c6, m.v_delta), (Order::Finite(2), Order::Finite(3), 12));
        let f = classify_fiber(&m).unwrap();
        assert_eq!(f.kind, KodairaType::IStar(6));
        assert_eq!((f.components, f.euler, f.group_order), (11, 12, 4));
        assert_eq!(f.contribution_values(), vec![int_rat(0), int_rat(1), rat(5, 2)]);
        assert_eq!(f.contributions, vec![int_rat(0), int_rat(1), rat(5, 2), rat(5, 2)]);
    }

    #[test]
    fn k3_fibers() {
        let x = k3_curve();
        let inf = minimal_model_at(&x, &Place::Infinity(Var::T)).unwrap();
        assert_eq!(inf.k, 2);
        assert_eq!((inf.v_c4, inf.v_c6, inf.v_delta), (Order::Finite(2), Order::Finite(3), 8));
        let fi = classify_fiber(&inf).unwrap();
        assert_eq!((fi.kind, fi.components), (KodairaType::IStar(2), 7));

        let g = minimal_model_at(&x, &g_place()).unwrap();
        assert_eq!(g.k, 0);
        assert_eq!((g.v_c4, g.v_c6, g.v_delta), (Order::Finite(3), Order::Finite(4), 8));
        let fg = classify_fiber(&g).unwrap();
        assert_eq!((fg.kind, fg.components, fg.group_order), (KodairaType::IVStar, 7, 3));
        assert_eq!(fg.contributions, vec![int_rat(0), rat(4, 3), rat(4, 3)]);

        // t is a good place
        let t0 = minimal_model_at(&x, &Place::finite(MultiPoly::var(Var::T)).unwrap()).unwrap();
        assert_eq!(t0.kodaira_type().unwrap(), KodairaType::I(0));
    }

    #[test]
    fn euler_numbers_sum_to_twelve_chi() {
        let s = classify_fiber(&minimal_model_at(&modular_surface_curve(), &Place::OriginB).unwrap())
            .unwrap();
        assert_eq!(s.euler, 12);

        let x = k3_curve();
        let mut total = 0;
        for place in [Place::Infinity(Var::T), g_place()] {
            let f = classify_fiber(&minimal_model_at(&x, &place).unwrap()).unwrap();
            total += f.euler * place.degree();
        }
        assert_eq!(total, 24);
    }

    /// Inverse of the E6 Cartan matrix by solving `C x = e_i` with
    /// rational Gaussian elimination written out independently.
    fn solve(c: &[Vec<Rational>], rhs: &[Rational]) -> Vec<Rational> {
        let n = rhs.len();
        let mut a: Vec<Vec<Rational>> = c
            .iter()
            .zip(rhs)
            .map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect())
            .collect();
        for i in 0..n {
            let p = (i..n).find(|&r| !a[r][i].is_zero()).unwrap();
            a.swap(i, p);
            for r in 0..n {
                if r != i {
                    let f = &a[r][i] / &a[i][i];
                    for k in i..=n {
                        let d = &f * &a[i][k];
                        a[r][k] -= d;
                    }
                }
            }
        }
        (0..n).map(|i| &a[i][n] / &a[i][i]).collect()
    }

    #[test]
    fn e6_contributions_by_brute_force_inverse() {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)];
        let mut c = vec![vec![int_rat(0); 6]; 6];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = int_rat(2);
        }
        for (a, b) in edges {
            c[a][b] = int_rat(-1);
            c[b][a] = int_rat(-1);
        }
        for end in [0usize, 4] {
            let mut e = vec![int_rat(0); 6];
            e[end] = int_rat(1);
            assert_eq!(solve(&c, &e)[end], rat(4, 3));
        }
        assert_eq!(FiberData::of_type(KodairaType::IVStar).contribution_values(), vec![int_rat(0), rat(4, 3)]);
    }

    #[test]
    fn classification_round_trips() {
        let mut types = vec![
            KodairaType::II,
            KodairaType::III,
            KodairaType::IV,
            KodairaType::IVStar,
            KodairaType::IIIStar,
            KodairaType::IIStar,
        ];
        types.extend((0..12).map(KodairaType::I));
        types.extend((0..8).map(KodairaType::IStar));
        for t in types {
            let (a, b, d) = t.sample_valuations();
            let back = classify_valuations(Order::Finite(a), Order::Finite(b), d).unwrap();
            assert_eq!(back, t);
            if let KodairaType::IStar(n) = t {
                assert_eq!(t.euler_number(), 6 + n);
                assert_eq!(t.component_count(), n + 5);
            }
        }
        assert_eq!(
            classify_valuations(Order::Finite(4), Order::Finite(6), 12),
            Err(KodairaError::NotMinimal)
        );
        assert!(matches!(
            classify_valuations(Order::Finite(1), Order::Finite(1), 5),
            Err(KodairaError::TableGap { .. })
        ));
        assert_eq!(
            classify_valuations(Order::Infinity, Order::Finite(1), 2).unwrap(),
            KodairaType::II
        );
    }

    #[test]
    fn component_groups_and_contributions() {
        let f = FiberData::of_type(KodairaType::I(5));
        assert_eq!(f.group_order, 5);
        // i (n - i) / n for i = 1..4
        assert_eq!(&f.contributions[1..], &[rat(4, 5), rat(6, 5), rat(6, 5), rat(4, 5)]);
        assert_eq!(FiberData::of_type(KodairaType::IIIStar).contributions, vec![int_rat(0), rat(3, 2)]);
        assert_eq!(FiberData::of_type(KodairaType::IIStar).group_order, 1);
        assert_eq!(FiberData::of_type(KodairaType::IStar(2)).contributions[2], rat(3, 2));
    }

    /// The affine D10 diagram written out by hand.
    fn affine_d10() -> (usize, Vec<(usize, usize)>) {
        let edges = vec![
            (0, 2),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (8, 10),
        ];
        (11, edges)
    }

    #[test]
    fn i6_star_point_counts() {
        let f = FiberData::of_type(KodairaType::IStar(6));
        let (v, e) = affine_d10();
        let (gv, ge) = f.kind.tree_graph().unwrap();
        assert_eq!((gv, ge.len()), (v, e.len()));
        let mut deg = vec![0; v];
        for (a, b) in &ge {
            deg[*a] += 1;
            deg[*b] += 1;
        }
        let mut want = vec![0; v];
        for (a, b) in &e {
            want[*a] += 1;
            want[*b] += 1;
        }
        deg.sort();
        want.sort();
        assert_eq!(deg, want);
        for (q, n) in [(5u64, 56u64), (7, 78)] {
            let oracle = v as u64 * (q + 1) - e.len() as u64;
            assert_eq!(oracle, n);
            assert_eq!(fiber_point_count(&f, q, true).unwrap(), n);
            assert_eq!(n, 11 * q + 1);
        }
        assert!(fiber_point_count(&f, 5, false).is_err());
        assert!(fiber_point_count(&FiberData::of_type(KodairaType::I(0)), 5, true).is_err());
    }

    #[test]
    fn no_bad_fibers_over_affine_points_of_b() {
        for p in crate::numeric::primes_between(5, 50) {
            let f = Arc::new(FiniteField::prime(p).unwrap());
            for xi in f.elements() {
                let rhs = f.sub(f.pow(xi, 3), f.from_i64(1728));
                for eta in f.elements() {
                    if f.square(eta) != rhs {
                        continue;
                    }
                    let a4 = FieldElement::new(&f, f.mul(f.from_i64(-27), xi));
                    let a6 = FieldElement::new(&f, f.mul(f.from_i64(-54), eta));
                    assert_eq!(fiber_type_at_point(&a4, &a6).unwrap(), KodairaType::I(0));
                }
            }
        }
    }
}
