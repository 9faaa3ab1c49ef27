use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::ToPrimitive;

use super::{is_prime, Coefficient, NumericError, Rational};

const MAX_DEGREE: usize = 3;
const MAX_PRIME: u64 = 1 << 31;

/// Raw coordinates of an element of `F_{p^r}` in the power basis of the
/// defining polynomial (low degree first). Unused slots are zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub(crate) [u64; MAX_DEGREE]);

impl Fq {
    pub fn coords(&self) -> [u64; MAX_DEGREE] {
        self.0
    }
}

/// Descriptor of `F_{p^r} = F_p[x]/(m(x))` with `m` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    degree: usize,
    /// Monic modulus, low degree first, `modulus[degree] == 1`.
    modulus: [u64; MAX_DEGREE + 1],
    order: u64,
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self, NumericError> {
        Self::build_extension(p, 1)
    }

    /// `F_{p^r}` with the smallest monic irreducible modulus, where
    /// `x^r + c_{r-1} x^{r-1} + .. + c_0` is ordered by the integer
    /// `sum c_i p^i` (so `c_{r-1}` is the most significant digit).
    pub fn build_extension(p: u64, r: usize) -> Result<Self, NumericError> {
        check_characteristic(p)?;
        if !(1..=MAX_DEGREE).contains(&r) {
            return Err(NumericError::Degree(r));
        }
        let order = checked_order(p, r)?;
        if r == 1 {
            return Ok(Self {
                p,
                degree: 1,
                modulus: [0, 1, 0, 0],
                order,
            });
        }
        let count = p.pow(r as u32);
        for code in 0..count {
            let mut coeffs = vec![0u64; r + 1];
            let mut c = code;
            for slot in coeffs.iter_mut().take(r) {
                *slot = c % p;
                c /= p;
            }
            coeffs[r] = 1;
            if !has_root(p, &coeffs) {
                return Self::with_modulus(p, &coeffs);
            }
        }
        Err(NumericError::Reducible(p))
    }

    /// Field with an explicit monic modulus (coefficients low degree first,
    /// leading 1 included). Degrees 2 and 3 are checked by root search.
    pub fn with_modulus(p: u64, coeffs: &[u64]) -> Result<Self, NumericError> {
        check_characteristic(p)?;
        let r = coeffs.len().saturating_sub(1);
        if !(1..=MAX_DEGREE).contains(&r) {
            return Err(NumericError::Degree(r));
        }
        if coeffs[r] % p != 1 {
            return Err(NumericError::MalformedModulus(r));
        }
        let reduced: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
        if r > 1 && has_root(p, &reduced) {
            return Err(NumericError::Reducible(p));
        }
        let mut modulus = [0u64; MAX_DEGREE + 1];
        modulus[..=r].copy_from_slice(&reduced);
        let order = checked_order(p, r)?;
        Ok(Self {
            p,
            degree: r,
            modulus,
            order,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus[..=self.degree]
    }

    pub fn zero(&self) -> Fq {
        Fq::default()
    }

    pub fn one(&self) -> Fq {
        Fq([1, 0, 0])
    }

    /// The class of `x` in `F_p[x]/(m)`; equals the scalar root of `m` when r = 1.
    pub fn generator(&self) -> Fq {
        if self.degree == 1 {
            Fq([(self.p - self.modulus[0]) % self.p, 0, 0])
        } else {
            Fq([0, 1, 0])
        }
    }

    pub fn from_i64(&self, n: i64) -> Fq {
        let p = self.p as i64;
        Fq([n.rem_euclid(p) as u64, 0, 0])
    }

    pub fn from_integer(&self, n: &BigInt) -> Fq {
        let p = BigInt::from(self.p);
        let r = n.mod_floor(&p);
        Fq([r.to_u64().unwrap_or(0), 0, 0])
    }

    /// Reduction of a rational number; fails when p divides the denominator.
    pub fn from_rational(&self, r: &Rational) -> Result<Fq, NumericError> {
        let num = self.from_integer(r.numer());
        let den = self.from_integer(r.denom());
        self.div(num, den).ok_or(NumericError::DivisionByZero)
    }

    pub fn from_coords(&self, coords: &[u64]) -> Fq {
        let mut c = [0u64; MAX_DEGREE];
        for (slot, v) in c.iter_mut().zip(coords.iter()).take(self.degree) {
            *slot = v % self.p;
        }
        Fq(c)
    }

    #[inline]
    pub fn is_zero(&self, a: Fq) -> bool {
        a.0 == [0, 0, 0]
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.p;
        let mut c = [0u64; MAX_DEGREE];
        for i in 0..self.degree {
            let s = a.0[i] + b.0[i];
            c[i] = if s >= p { s - p } else { s };
        }
        Fq(c)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.p;
        let mut c = [0u64; MAX_DEGREE];
        for i in 0..self.degree {
            c[i] = if a.0[i] == 0 { 0 } else { p - a.0[i] };
        }
        Fq(c)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        let p = self.p;
        if self.degree == 1 {
            return Fq([a.0[0] * b.0[0] % p, 0, 0]);
        }
        let r = self.degree;
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..r {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] = (prod[i + j] + a.0[i] * b.0[j] % p) % p;
            }
        }
        for top in (r..=2 * r - 2).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..r {
                let sub = c * self.modulus[j] % p;
                let slot = &mut prod[top - r + j];
                *slot = (*slot + p - sub) % p;
            }
        }
        let mut out = [0u64; MAX_DEGREE];
        out[..r].copy_from_slice(&prod[..r]);
        Fq(out)
    }

    #[inline]
    pub fn square(&self, a: Fq) -> Fq {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        (!self.is_zero(a)).then(|| self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Legendre symbol on `F_q` computed as `a^((q-1)/2)`.
    pub fn quadratic_character(&self, a: Fq) -> i8 {
        if self.is_zero(a) {
            return 0;
        }
        let e = self.pow(a, (self.order - 1) / 2);
        if e == self.one() {
            1
        } else {
            -1
        }
    }

    /// Whether a nonzero `a` is a `d`-th power in `F_q^*`.
    pub fn is_power(&self, a: Fq, d: u64) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let g = num_integer::gcd(d, self.order - 1);
        self.pow(a, (self.order - 1) / g) == self.one()
    }

    /// Base-p digit encoding of an element, in `[0, q)`.
    #[inline]
    pub fn index(&self, a: Fq) -> usize {
        let mut idx = 0u64;
        for i in (0..self.degree).rev() {
            idx = idx * self.p + a.0[i];
        }
        idx as usize
    }

    #[inline]
    pub fn element(&self, mut idx: u64) -> Fq {
        let mut c = [0u64; MAX_DEGREE];
        for slot in c.iter_mut().take(self.degree) {
            *slot = idx % self.p;
            idx /= self.p;
        }
        Fq(c)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    /// Multiplicative order of a nonzero element, by exhaustive powering.
    pub fn multiplicative_order(&self, a: Fq) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        let mut x = a;
        let mut k = 1u64;
        while x != self.one() {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    pub fn format(&self, a: Fq) -> String {
        if self.degree == 1 {
            return a.0[0].to_string();
        }
        let mut terms = Vec::new();
        for i in 0..self.degree {
            let c = a.0[i];
            if c == 0 {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 if c == 1 => "x".to_string(),
                1 => format!("{c}x"),
                _ if c == 1 => format!("x^{i}"),
                _ => format!("{c}x^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Quadratic characters and square roots of every element, built by
    /// squaring all elements once.
    pub fn character_table(&self) -> CharacterTable {
        let q = self.order as usize;
        let mut chi = vec![-1i8; q];
        let mut root = vec![u32::MAX; q];
        chi[0] = 0;
        root[0] = 0;
        for y in 1..self.order {
            let e = self.element(y);
            let s = self.index(self.square(e));
            chi[s] = 1;
            if root[s] == u32::MAX {
                root[s] = y as u32;
            }
        }
        CharacterTable { chi, root }
    }

    pub fn describe(&self) -> String {
        if self.degree == 1 {
            format!("F_{}", self.p)
        } else {
            let m: Vec<String> = self.modulus().iter().map(|c| c.to_string()).collect();
            format!("F_{}^{} [modulus {}]", self.p, self.degree, m.join(","))
        }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Lookup tables of `chi(a)` and one square root per square, indexed by
/// `FiniteField::index`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    chi: Vec<i8>,
    root: Vec<u32>,
}

impl CharacterTable {
    #[inline]
    pub fn chi(&self, idx: usize) -> i8 {
        self.chi[idx]
    }

    #[inline]
    pub fn sqrt_index(&self, idx: usize) -> Option<usize> {
        match self.root[idx] {
            u32::MAX => None,
            r => Some(r as usize),
        }
    }
}

fn check_characteristic(p: u64) -> Result<(), NumericError> {
    if p <= 3 {
        return Err(NumericError::Characteristic(p));
    }
    if !is_prime(p) {
        return Err(NumericError::NotPrime(p));
    }
    if p >= MAX_PRIME {
        return Err(NumericError::TooLarge(p));
    }
    Ok(())
}

fn checked_order(p: u64, r: usize) -> Result<u64, NumericError> {
    p.checked_pow(r as u32)
        .filter(|q| *q < (1u64 << 62))
        .ok_or(NumericError::TooLarge(p))
}

fn has_root(p: u64, coeffs: &[u64]) -> bool {
    (0..p).any(|x| {
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = (acc * x + c) % p;
        }
        acc == 0
    })
}

/// A finite field element bundled with its field, for checked arithmetic
/// and for use as a generic [`Coefficient`].
///
/// The operator impls panic when the operands live in different fields;
/// [`field_arith`] reports that case as an error instead.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<FiniteField>,
    value: Fq,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && same_field(&self.field, &other.field)
    }
}

fn same_field(a: &Arc<FiniteField>, b: &Arc<FiniteField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FieldElement {
    pub fn new(field: &Arc<FiniteField>, value: Fq) -> Self {
        Self {
            field: Arc::clone(field),
            value,
        }
    }

    pub fn from_i64(field: &Arc<FiniteField>, n: i64) -> Self {
        Self::new(field, field.from_i64(n))
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn value(&self) -> Fq {
        self.value
    }

    pub fn quadratic_character(&self) -> i8 {
        self.field.quadratic_character(self.value)
    }

    fn assert_same(&self, other: &Self) {
        assert!(
            same_field(&self.field, &other.field),
            "mixed fields: {} vs {}",
            self.field,
            other.field
        );
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary operation on two field elements.
pub fn field_arith(
    a: &FieldElement,
    b: &FieldElement,
    op: FieldOp,
) -> Result<FieldElement, NumericError> {
    if !same_field(&a.field, &b.field) {
        return Err(NumericError::FieldMismatch(a.field.describe(), b.field.describe()));
    }
    let f = &a.field;
    let value = match op {
        FieldOp::Add => f.add(a.value, b.value),
        FieldOp::Sub => f.sub(a.value, b.value),
        FieldOp::Mul => f.mul(a.value, b.value),
        FieldOp::Div => f.div(a.value, b.value).ok_or(NumericError::DivisionByZero)?,
    };
    Ok(FieldElement::new(f, value))
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.assert_same(&rhs);
        let v = self.field.add(self.value, rhs.value);
        Self { value: v, ..self }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.assert_same(&rhs);
        let v = self.field.sub(self.value, rhs.value);
        Self { value: v, ..self }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.assert_same(&rhs);
        let v = self.field.mul(self.value, rhs.value);
        Self { value: v, ..self }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        let v = self.field.neg(self.value);
        Self { value: v, ..self }
    }
}

impl Coefficient for FieldElement {
    fn zero_like(&self) -> Self {
        Self::new(&self.field, self.field.zero())
    }
    fn one_like(&self) -> Self {
        Self::new(&self.field, self.field.one())
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::from_i64(&self.field, n)
    }
    fn is_zero_coeff(&self) -> bool {
        self.field.is_zero(self.value)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.field.inv(self.value).map(|v| Self::new(&self.field, v))
    }
}
