use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{Integer, Rational};

/// Dense square matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Rows must all have length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Option<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.n.max(1)).map(<[Rational]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Rational::zero();
                for k in 0..self.n {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut m = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.set(self.n + i, self.n + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Determinant by Bareiss elimination on the matrix with denominators
    /// cleared, so every intermediate is an integer.
    pub fn det(&self) -> Rational {
        let n = self.n;
        if n == 0 {
            return Rational::one();
        }
        let d = self
            .data
            .iter()
            .fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
        let mut a: Vec<Integer> = self
            .data
            .iter()
            .map(|x| x.numer() * (&d / x.denom()))
            .collect();
        let mut sign = Integer::one();
        let mut prev = Integer::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return Rational::zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, r * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        let scale = num_traits::pow(d, n);
        Rational::new(sign * &a[n * n - 1], scale)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for c in 0..n {
                    a.data.swap(col * n + c, pivot * n + c);
                    inv.data.swap(col * n + c, pivot * n + c);
                }
            }
            let p = a.get(col, col).recip();
            for c in 0..n {
                let x = a.get(col, c) * &p;
                a.set(col, c, x);
                let y = inv.get(col, c) * &p;
                inv.set(col, c, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..n {
                    let x = a.get(r, c) - &f * a.get(col, c);
                    a.set(r, c, x);
                    let y = inv.get(r, c) - &f * inv.get(col, c);
                    inv.set(r, c, y);
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        f.write_str("]")
    }
}
