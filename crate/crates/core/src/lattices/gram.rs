use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::LatticeError;
use crate::numeric::{int_rat, QMatrix, Rational};

/// A lattice presented by a symmetric Gram matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    gram: QMatrix,
}

impl GramLattice {
    pub fn new(gram: QMatrix) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(Self { gram })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        let m = QMatrix::from_int_rows(rows).ok_or(LatticeError::NotSquare)?;
        Self::new(m)
    }

    /// The zero lattice; its determinant is 1.
    pub fn empty() -> Self {
        Self {
            gram: QMatrix::zeros(0),
        }
    }

    /// `<c>`.
    pub fn rank_one(c: Rational) -> Self {
        Self {
            gram: QMatrix::diagonal(&[c]),
        }
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.size()
    }

    pub fn det(&self) -> Rational {
        self.gram.det()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            gram: self.gram.block_diag(&other.gram),
        }
    }

    /// `L[c]`: the pairing multiplied by `c`.
    pub fn rescale(&self, c: &Rational) -> Self {
        Self {
            gram: self.gram.scale(c),
        }
    }

    pub fn negate(&self) -> Self {
        self.rescale(&int_rat(-1))
    }

    pub fn inverse_gram(&self) -> Option<QMatrix> {
        self.gram.inverse()
    }

    pub fn is_integral(&self) -> bool {
        self.gram.rows().iter().flatten().all(|x| x.is_integer())
    }

    /// Even: integral with even norms.
    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.rank()).all(|i| self.gram.get(i, i).to_integer().is_even())
    }

    /// Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.rank()).all(|k| {
            let mut m = QMatrix::zeros(k);
            for i in 0..k {
                for j in 0..k {
                    m.set(i, j, self.gram.get(i, j).clone());
                }
            }
            m.det() > Rational::zero()
        })
    }

    pub fn norm(&self, v: &[Rational]) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                acc += &v[i] * self.gram.get(i, j) * &v[j];
            }
        }
        acc
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gram)
    }
}

/// Irreducible simply-laced root systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum RootType {
    A(usize),
    D(usize),
    E(usize),
}

impl RootType {
    pub fn validate(self) -> Result<Self, LatticeError> {
        let ok = match self {
            RootType::A(n) => n >= 1,
            RootType::D(n) => n >= 4,
            RootType::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(self)
        } else {
            Err(LatticeError::InvalidRootType(self.to_string()))
        }
    }

    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) | RootType::D(n) | RootType::E(n) => n,
        }
    }

    /// Edges of the Dynkin diagram. `A_n` is the chain `0..n`; `D_n` is the
    /// chain `0..n-1` with node `n-1` attached to `n-3`; `E_n` is the chain
    /// `0..n-1` with node `n-1` attached to node 2 (so the arm through
    /// `0, 1` has length 2).
    pub fn edges(self) -> Vec<(usize, usize)> {
        let n = self.rank();
        let chain_end = match self {
            RootType::A(_) => n,
            RootType::D(_) | RootType::E(_) => n - 1,
        };
        let mut e: Vec<(usize, usize)> = (1..chain_end).map(|i| (i - 1, i)).collect();
        match self {
            RootType::A(_) => {}
            RootType::D(_) => e.push((n - 3, n - 1)),
            RootType::E(_) => e.push((2, n - 1)),
        }
        e
    }

    /// Nodes whose fundamental weight is minuscule. These are the nodes met
    /// by the multiplicity-one components of the affine diagram.
    pub fn minuscule_nodes(self) -> Vec<usize> {
        let n = self.rank();
        match self {
            RootType::A(_) => (0..n).collect(),
            RootType::D(_) => vec![0, n - 2, n - 1],
            RootType::E(6) => vec![0, 4],
            RootType::E(7) => vec![5],
            RootType::E(_) => vec![],
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Positive-definite Cartan matrix of the root lattice.
pub fn root_gram(t: RootType) -> Result<GramLattice, LatticeError> {
    let t = t.validate()?;
    let n = t.rank();
    let mut m = QMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, int_rat(2));
    }
    for (a, b) in t.edges() {
        m.set(a, b, -Rational::one());
        m.set(b, a, -Rational::one());
    }
    GramLattice::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use proptest::prelude::*;

    #[test]
    fn root_determinants() {
        for (t, d) in [
            (RootType::A(1), 2),
            (RootType::A(5), 6),
            (RootType::D(4), 4),
            (RootType::D(10), 4),
            (RootType::E(6), 3),
            (RootType::E(7), 2),
            (RootType::E(8), 1),
        ] {
            let l = root_gram(t).unwrap();
            assert_eq!(l.det(), int_rat(d), "{t}");
            assert!(l.is_even() && l.is_positive_definite());
        }
        assert!(root_gram(RootType::D(3)).is_err());
        assert!(root_gram(RootType::E(9)).is_err());
        assert!(root_gram(RootType::A(0)).is_err());
    }

    #[test]
    fn dynkin_diagrams_are_trees_with_right_branching() {
        for t in [RootType::D(10), RootType::E(6), RootType::E(7), RootType::E(8)] {
            let e = t.edges();
            assert_eq!(e.len(), t.rank() - 1);
            let mut deg = vec![0; t.rank()];
            for (a, b) in e {
                deg[a] += 1;
                deg[b] += 1;
            }
            assert_eq!(deg.iter().filter(|&&d| d == 3).count(), 1, "{t}");
        }
    }

    #[test]
    fn e6_inverse_at_minuscule_nodes() {
        let l = root_gram(RootType::E(6)).unwrap();
        let inv = l.inverse_gram().unwrap();
        for i in RootType::E(6).minuscule_nodes() {
            assert_eq!(inv.get(i, i), &rat(4, 3));
        }
    }

    #[test]
    fn square_lattice_scaling() {
        let l0 = GramLattice::from_int_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let l2 = l0.rescale(&int_rat(2));
        assert_eq!(l2, GramLattice::from_int_rows(&[&[2, 0], &[0, 2]]).unwrap());
        assert_eq!(l2.det(), int_rat(4));
        assert_eq!(GramLattice::empty().det(), int_rat(1));
        assert!(GramLattice::from_int_rows(&[&[1, 2], &[0, 1]]).is_err());
    }

    fn lattice() -> impl Strategy<Value = GramLattice> {
        (1usize..4).prop_flat_map(|n| {
            prop::collection::vec(-5i64..6, n * (n + 1) / 2).prop_map(move |up| {
                let mut m = QMatrix::zeros(n);
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        m.set(i, j, int_rat(up[k]));
                        m.set(j, i, int_rat(up[k]));
                        k += 1;
                    }
                }
                GramLattice::new(m).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn det_laws(a in lattice(), b in lattice(), c in -4i64..5) {
            prop_assert_eq!(a.direct_sum(&b).det(), a.det() * b.det());
            let c = int_rat(c);
            let scaled = a.rescale(&c).det();
            prop_assert_eq!(scaled, num_traits::pow(c, a.rank()) * a.det());
        }
    }
}
