use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::bfield::{eta_squared, BFieldElement};
use super::poly::{div_rem, make_monic, MultiPoly, Var};
use super::ratfun::RationalFunction;
use super::SymbolicError;
use crate::numeric::{Integer, Rational};

/// Order of vanishing, with `Infinity` for the zero element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(i64),
    Infinity,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinity => None,
        }
    }

    pub fn shift(self, k: i64) -> Self {
        match self {
            Order::Finite(n) => Order::Finite(n + k),
            Order::Infinity => Order::Infinity,
        }
    }

    /// `self >= n`, with infinity above everything.
    pub fn at_least(self, n: i64) -> bool {
        match self {
            Order::Finite(m) => m >= n,
            Order::Infinity => true,
        }
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a.cmp(b),
            (Order::Finite(_), Order::Infinity) => Ordering::Less,
            (Order::Infinity, Order::Finite(_)) => Ordering::Greater,
            (Order::Infinity, Order::Infinity) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for Order {
    type Output = Order;
    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinity,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinity => f.write_str("inf"),
        }
    }
}

/// A place of a rational function field or of the function field of `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// Zero locus of a monic irreducible polynomial over Q.
    Finite(MultiPoly),
    /// The point at infinity of the given coordinate.
    Infinity(Var),
    /// The origin of `B`, its unique point at infinity.
    OriginB,
}

impl Place {
    /// Finite place of an irreducible univariate polynomial (degree <= 4).
    pub fn finite(p: MultiPoly) -> Result<Self, SymbolicError> {
        let v = match p.univariate_var() {
            Some(Some(v)) => v,
            _ => return Err(SymbolicError::NotUnivariate),
        };
        if !is_irreducible_over_q(&p, v)? {
            return Err(SymbolicError::Reducible(p.to_string()));
        }
        Ok(Place::Finite(make_monic(&p, v)))
    }

    /// Degree of the residue field over Q.
    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite(p) => p.total_degree().unwrap_or(0),
            _ => 1,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Place::Finite(p) => format!("({p})"),
            Place::Infinity(v) => format!("{}=inf", v.name()),
            Place::OriginB => "o_B".to_string(),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Coefficients carrying a discrete valuation at [`Place`]s.
pub trait Valued: Sized {
    fn valuation(&self, place: &Place) -> Result<Order, SymbolicError>;
    fn uniformizer(place: &Place) -> Result<Self, SymbolicError>;
}

fn multiplicity(f: &MultiPoly, p: &MultiPoly, v: Var) -> Result<i64, SymbolicError> {
    let mut count = 0;
    let mut cur = f.clone();
    loop {
        let (q, r) = div_rem(&cur, p, v).ok_or(SymbolicError::NotUnivariate)?;
        if !r.is_zero() {
            return Ok(count);
        }
        cur = q;
        count += 1;
    }
}

impl Valued for RationalFunction {
    fn valuation(&self, place: &Place) -> Result<Order, SymbolicError> {
        if self.is_zero() {
            return Ok(Order::Infinity);
        }
        match place {
            Place::Finite(p) => {
                let v = p
                    .univariate_var()
                    .flatten()
                    .ok_or(SymbolicError::NotUnivariate)?;
                if !self.is_univariate_in(v) {
                    return Err(SymbolicError::NotUnivariate);
                }
                Ok(Order::Finite(
                    multiplicity(self.numer(), p, v)? - multiplicity(self.denom(), p, v)?,
                ))
            }
            Place::Infinity(v) => Ok(Order::Finite(-self.degree_in(*v).unwrap_or(0))),
            Place::OriginB => {
                if !self.is_univariate_in(Var::Xi) {
                    return Err(SymbolicError::UnsupportedPlace(place.label()));
                }
                Ok(Order::Finite(-2 * self.degree_in(Var::Xi).unwrap_or(0)))
            }
        }
    }

    fn uniformizer(place: &Place) -> Result<Self, SymbolicError> {
        match place {
            Place::Finite(p) => Ok(p.clone().into()),
            Place::Infinity(v) => RationalFunction::var(*v).inverse(),
            Place::OriginB => Err(SymbolicError::UnsupportedPlace(place.label())),
        }
    }
}

impl Valued for BFieldElement {
    /// At `o_B`: `ord(xi) = -2`, `ord(eta) = -3`. The two summands of
    /// `a + b*eta` have valuations of different parity, so no cancellation.
    fn valuation(&self, place: &Place) -> Result<Order, SymbolicError> {
        if *place != Place::OriginB {
            return Err(SymbolicError::UnsupportedPlace(place.label()));
        }
        let va = self.a().valuation(place)?;
        let vb = self.b().valuation(place)?.shift(-3);
        Ok(va.min(vb))
    }

    /// `xi / eta`, of valuation `-2 - (-3) = 1`.
    fn uniformizer(place: &Place) -> Result<Self, SymbolicError> {
        if *place != Place::OriginB {
            return Err(SymbolicError::UnsupportedPlace(place.label()));
        }
        let g: RationalFunction = eta_squared().into();
        BFieldElement::new(
            RationalFunction::zero(),
            RationalFunction::var(Var::Xi) * g.inverse()?,
        )
    }
}

/// Irreducibility over Q of a univariate polynomial of degree at most 4:
/// no rational root, and for degree 4 no split into two integral quadratics.
pub fn is_irreducible_over_q(p: &MultiPoly, v: Var) -> Result<bool, SymbolicError> {
    if !p.is_univariate_in(v) || p.is_zero() {
        return Err(SymbolicError::NotUnivariate);
    }
    let coeffs = primitive_integer_coeffs(p, v);
    let n = coeffs.len() - 1;
    match n {
        0 => Ok(false),
        1 => Ok(true),
        2..=4 => {
            if has_rational_root(&coeffs) {
                return Ok(false);
            }
            if n == 4 {
                return Ok(!has_quadratic_factor(&coeffs));
            }
            Ok(true)
        }
        _ => Err(SymbolicError::UnsupportedDegree(n as u32)),
    }
}

fn primitive_integer_coeffs(p: &MultiPoly, v: Var) -> Vec<Integer> {
    let content = p.content();
    p.to_dense(v)
        .into_iter()
        .map(|c| (c / &content).to_integer())
        .collect()
}

fn divisors(n: &Integer) -> Vec<Integer> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = Integer::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

fn eval_int(coeffs: &[Integer], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + Rational::from_integer(c.clone());
    }
    acc
}

fn has_rational_root(coeffs: &[Integer]) -> bool {
    if coeffs[0].is_zero() {
        return true;
    }
    let lead = coeffs.last().expect("nonempty");
    for num in divisors(&coeffs[0]) {
        for den in divisors(lead) {
            for sign in [1i64, -1] {
                let x = Rational::new(&num * Integer::from(sign), den.clone());
                if eval_int(coeffs, &x).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// For a primitive integer quartic without rational roots, test for a
/// factorisation into two quadratics via the monic transform
/// `g(y) = L^3 f(y / L)`.
fn has_quadratic_factor(coeffs: &[Integer]) -> bool {
    let lead = &coeffs[4];
    let g: Vec<Integer> = (0..4)
        .map(|i| &coeffs[i] * num_traits::pow(lead.clone(), 3 - i))
        .chain(std::iter::once(Integer::one()))
        .collect();
    let (p3, p2, p1, p0) = (&g[3], &g[2], &g[1], &g[0]);
    for b in divisors(p0) {
        for b in [b.clone(), -b] {
            let d = p0 / &b;
            // a + c = p3, ac = p2 - b - d, ad + bc = p1
            let s = p3.clone();
            let prod = p2 - &b - &d;
            let disc = &s * &s - Integer::from(4) * &prod;
            if disc.is_negative() {
                continue;
            }
            let r = disc.sqrt();
            if &r * &r != disc {
                continue;
            }
            for root in [&s + &r, &s - &r] {
                if root.is_odd() {
                    continue;
                }
                let a = &root / 2;
                let c = &s - &a;
                if &a * &d + &b * &c == *p1 {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int_rat;

    fn t_poly(c: &[i64]) -> MultiPoly {
        MultiPoly::from_int_dense(Var::T, c)
    }

    #[test]
    fn irreducibility() {
        let t2 = t_poly(&[1728, 0, 1]);
        assert!(is_irreducible_over_q(&t2, Var::T).unwrap());
        assert!(!is_irreducible_over_q(&t_poly(&[-4, 0, 1]), Var::T).unwrap());
        assert!(!is_irreducible_over_q(&t_poly(&[1, 0, 2, 0, 1]), Var::T).unwrap());
        assert!(is_irreducible_over_q(&t_poly(&[2, 0, 0, 0, 1]), Var::T).unwrap());
        assert!(is_irreducible_over_q(&t_poly(&[-2, 0, 0, 1]).scale(&int_rat(3)), Var::T).unwrap());
        // (2t^2 + 1)(3t^2 + t + 1), non-monic product
        let f = &t_poly(&[1, 0, 2]) * &t_poly(&[1, 1, 3]);
        assert!(!is_irreducible_over_q(&f, Var::T).unwrap());
        assert!(Place::finite(t_poly(&[-4, 0, 1])).is_err());
    }

    #[test]
    fn valuation_examples() {
        let ob = Place::OriginB;
        let delta = BFieldElement::int(2_176_782_336);
        assert_eq!(delta.valuation(&ob).unwrap(), Order::Finite(0));
        assert_eq!(BFieldElement::xi().valuation(&ob).unwrap(), Order::Finite(-2));
        assert_eq!(BFieldElement::eta().valuation(&ob).unwrap(), Order::Finite(-3));
        assert_eq!(BFieldElement::int(0).valuation(&ob).unwrap(), Order::Infinity);

        let inf = Place::Infinity(Var::T);
        let f: RationalFunction = t_poly(&[1728, 0, 1]).into();
        assert_eq!(f.valuation(&inf).unwrap(), Order::Finite(-2));

        let u = BFieldElement::xi() * BFieldElement::eta().inverse().unwrap();
        assert_eq!(u, BFieldElement::uniformizer(&ob).unwrap());
        for n in 1..=6u32 {
            assert_eq!(u.pow(n).valuation(&ob).unwrap(), Order::Finite(n as i64));
        }
    }

    #[test]
    fn finite_place_valuations() {
        let place = Place::finite(t_poly(&[1728, 0, 1])).unwrap();
        let p: RationalFunction = t_poly(&[1728, 0, 1]).into();
        let f = &p.pow(3) * &RationalFunction::var(Var::T).inverse().unwrap();
        assert_eq!(f.valuation(&place).unwrap(), Order::Finite(3));
        assert_eq!(p.inverse().unwrap().valuation(&place).unwrap(), Order::Finite(-1));
        assert_eq!(place.degree(), 2);
        assert!(BFieldElement::xi().valuation(&place).is_err());
    }
}
