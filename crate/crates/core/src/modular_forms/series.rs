use std::fmt;

use num_traits::{One, Zero};

use super::ModularError;
use crate::numeric::Integer;

/// Power series `sum c_n q^n` known through `q^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Integer>,
}

impl QSeries {
    pub fn from_coeffs(mut coeffs: Vec<Integer>, order: usize) -> Self {
        coeffs.resize(order + 1, Integer::zero());
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut c = vec![Integer::zero(); order + 1];
        c[0] = Integer::one();
        Self { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`; `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&Integer> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Truncated product; the result is valid through the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![Integer::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// In-place multiplication by `(1 - q^j)`.
    fn mul_one_minus(&mut self, j: usize) {
        for n in (j..self.coeffs.len()).rev() {
            let t = self.coeffs[n - j].clone();
            self.coeffs[n] -= t;
        }
    }

    /// Multiply by `q^e`, keeping the order.
    pub fn shift(&self, e: usize) -> Self {
        let n = self.order();
        let mut out = vec![Integer::zero(); n + 1];
        for i in 0..(n + 1).saturating_sub(e) {
            out[i + e] = self.coeffs[i].clone();
        }
        Self { coeffs: out }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

/// `eta(s tau)^k = q^{sk/24} prod_{m >= 1} (1 - q^{sm})^k` through `q^order`.
pub fn eta_power(s: usize, k: usize, order: usize) -> Result<QSeries, ModularError> {
    if s == 0 || k == 0 || !(s * k).is_multiple_of(24) {
        return Err(ModularError::NonIntegralExponent { s, k });
    }
    let lead = s * k / 24;
    let mut p = QSeries::one(order);
    let mut m = s;
    while m <= order.saturating_sub(lead) {
        for _ in 0..k {
            p.mul_one_minus(m);
        }
        m += s;
    }
    Ok(p.shift(lead))
}
