use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::numeric::{Integer, Rational};

/// Variables available to the polynomial kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Lambda,
    Mu,
    Xi,
    Eta,
    T,
    X,
    Y,
    Z,
}

pub const NVARS: usize = 8;

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Lambda,
        Var::Mu,
        Var::Xi,
        Var::Eta,
        Var::T,
        Var::X,
        Var::Y,
        Var::Z,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Lambda => "lambda",
            Var::Mu => "mu",
            Var::Xi => "xi",
            Var::Eta => "eta",
            Var::T => "t",
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }
}

/// Exponent vector over [`Var::ALL`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Self::default();
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        m
    }

    fn without(&self, v: Var) -> Self {
        let mut m = *self;
        m.0[v.index()] = 0;
        m
    }
}

/// Sparse polynomial with rational coefficients; zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Rational::one(), Monomial::var(v, 1))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// `sum coeffs[i] * v^i`.
    pub fn from_dense(v: Var, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(v, i as u32), c.clone());
        }
        p
    }

    pub fn from_int_dense(v: Var, coeffs: &[i64]) -> Self {
        let c: Vec<Rational> = coeffs
            .iter()
            .map(|&n| Rational::from_integer(n.into()))
            .collect();
        Self::from_dense(v, &c)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Monomial::one()).cloned();
        }
        None
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in `v`; `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|v| self.terms.keys().any(|m| m.exp(*v) > 0))
            .collect()
    }

    /// `Some(v)` if every monomial involves only `v` (constants count).
    pub fn univariate_var(&self) -> Option<Option<Var>> {
        let vars = self.variables();
        match vars.len() {
            0 => Some(None),
            1 => Some(Some(vars[0])),
            _ => None,
        }
    }

    pub fn is_univariate_in(&self, v: Var) -> bool {
        self.variables().iter().all(|w| *w == v)
    }

    /// Dense coefficient vector in `v`, valid only when univariate in `v`.
    pub fn to_dense(&self, v: Var) -> Vec<Rational> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize] += c;
        }
        while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// Leading coefficient in the monomial order (largest monomial).
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Rational `c` such that `self / c` has coprime integer coefficients
    /// and a positive leading coefficient.
    pub fn content(&self) -> Rational {
        let mut num_gcd = Integer::zero();
        let mut den_lcm = Integer::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            content = -content;
        }
        content
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, subs: &[(Var, MultiPoly)]) -> Self {
        let mut cache: BTreeMap<(Var, u32), MultiPoly> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut term = MultiPoly::constant(c.clone());
            for (v, poly) in subs {
                let e = m.exp(*v);
                rest = rest.without(*v);
                if e == 0 {
                    continue;
                }
                let power = cache
                    .entry((*v, e))
                    .or_insert_with(|| poly.pow(e))
                    .clone();
                term = &term * &power;
            }
            let rest_poly = MultiPoly::monomial(Rational::one(), rest);
            out = &out + &(&term * &rest_poly);
        }
        out
    }

    pub fn eval_var(&self, v: Var, value: &Rational) -> Self {
        self.substitute(&[(v, MultiPoly::constant(value.clone()))])
    }

    /// Full evaluation; every variable present must be assigned.
    pub fn eval(&self, assignment: &[(Var, Rational)]) -> Option<Rational> {
        let subs: Vec<(Var, MultiPoly)> = assignment
            .iter()
            .map(|(v, r)| (*v, MultiPoly::constant(r.clone())))
            .collect();
        self.substitute(&subs).constant_value()
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[v.index()] = e - 1;
            out.add_term(dm, c * Rational::from_integer(e.into()));
        }
        out
    }
}

/// Univariate division with remainder in `v`. `None` if `divisor` is zero
/// or either operand involves another variable.
pub fn div_rem(dividend: &MultiPoly, divisor: &MultiPoly, v: Var) -> Option<(MultiPoly, MultiPoly)> {
    if divisor.is_zero() || !dividend.is_univariate_in(v) || !divisor.is_univariate_in(v) {
        return None;
    }
    let b = divisor.to_dense(v);
    let mut r = dividend.to_dense(v);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() || dividend.is_zero() {
        return Some((MultiPoly::zero(), dividend.clone()));
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    Some((MultiPoly::from_dense(v, &q), MultiPoly::from_dense(v, &r)))
}

/// Monic gcd of two polynomials univariate in `v` (zero if both are zero).
pub fn gcd_univariate(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = div_rem(&x, &y, v).expect("univariate operands");
        x = y;
        y = r;
    }
    make_monic(&x, v)
}

pub fn make_monic(a: &MultiPoly, v: Var) -> MultiPoly {
    if a.is_zero() {
        return a.clone();
    }
    let dense = a.to_dense(v);
    let lead = dense.last().cloned().expect("nonempty");
    a.scale(&lead.recip())
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $ty:ty) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}
pub(crate) use forward_binop;

forward_binop!(Add, add, MultiPoly);
forward_binop!(Sub, sub, MultiPoly);
forward_binop!(Mul, mul, MultiPoly);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let factors: Vec<String> = Var::ALL
                .iter()
                .filter(|v| m.exp(**v) > 0)
                .map(|v| match m.exp(*v) {
                    1 => v.name().to_string(),
                    e => format!("{}^{}", v.name(), e),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
