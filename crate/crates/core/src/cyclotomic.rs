//! Exact arithmetic in cyclotomic fields `Q(ζ_e)`.
//!
//! A value is stored in the power basis `1, ζ, …, ζ^(φ(e)-1)` after reduction
//! modulo the `e`-th cyclotomic polynomial, which makes the coefficient vector
//! a unique normal form. Values of different orders are lifted to the least
//! common multiple of the orders before they are combined or compared.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Cyclotomic {
    order: usize,
    coeffs: Vec<BigRational>,
}

/// Coefficients of `Φ_e`, lowest degree first.
pub fn cyclotomic_polynomial(e: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(e >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("poisoned").get(&e) {
        return p.clone();
    }
    // x^e - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; e + 1];
    num[0] = -1;
    num[e] = 1;
    for d in (1..e).filter(|d| e % d == 0) {
        num = exact_divide(&num, &cyclotomic_polynomial(d));
    }
    let p = Arc::new(num);
    cache.write().expect("poisoned").insert(e, p.clone());
    p
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

pub fn euler_phi(e: usize) -> usize {
    cyclotomic_polynomial(e).len() - 1
}

/// Reduces a polynomial in `ζ_e` to normal form.
fn reduce(mut poly: Vec<BigRational>, e: usize) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(e);
    let d = phi.len() - 1;
    for k in (d..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[k]);
        for (j, &pj) in phi.iter().enumerate().take(d) {
            if pj != 0 {
                poly[k - d + j] -= &c * BigInt::from(pj);
            }
        }
    }
    poly.resize(d, BigRational::zero());
    poly
}

impl Cyclotomic {
    pub fn zero(order: usize) -> Self {
        Cyclotomic {
            order,
            coeffs: vec![BigRational::zero(); euler_phi(order)],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: usize, q: BigRational) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[0] = q;
        c
    }

    pub fn from_int(order: usize, n: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(n.into()))
    }

    /// `ζ_e^k`, with `k` reduced mod `e`.
    pub fn from_root(order: usize, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Cyclotomic {
            order,
            coeffs: reduce(poly, order),
        }
    }

    /// `Σ c_k ζ_e^k` for integer coefficients indexed by exponent.
    pub fn from_exponent_counts(order: usize, counts: &[i64]) -> Self {
        let poly = counts
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        Cyclotomic {
            order,
            coeffs: reduce(poly, order),
        }
    }

    /// Builds a value from normal-form coordinates.
    pub fn from_coeffs(order: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != euler_phi(order) {
            return Err(Error::Format(format!(
                "expected {} coefficients for order {order}, got {}",
                euler_phi(order),
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Whether all coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Re-expresses the value in `Q(ζ_target)`; `target` must be a multiple
    /// of the current order.
    pub fn lift(&self, target: usize) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target % self.order == 0, "lift target must be a multiple");
        let step = target / self.order;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Cyclotomic {
            order: target,
            coeffs: reduce(poly, target),
        }
    }

    fn lifted_pair(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.order.lcm(&b.order);
        (a.lift(l), b.lift(l))
    }

    /// Complex conjugation, `ζ ↦ ζ⁻¹`.
    pub fn conjugate(&self) -> Self {
        let e = self.order;
        let mut poly = vec![BigRational::zero(); e];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(e - k) % e] += c;
        }
        Cyclotomic {
            order: e,
            coeffs: reduce(poly, e),
        }
    }

    /// `a · conj(b)`.
    pub fn hermitian_term(a: &Self, b: &Self) -> Self {
        a * &b.conjugate()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Floating approximation, for display only.
    pub fn approx_complex(&self) -> Complex64 {
        let e = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / e;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    /// Parses the display form `a0 + a1*z + a2*z^2 ...` in `Q(ζ_order)`.
    /// Exponents may exceed `φ(order)`; the result is reduced.
    pub fn parse(order: usize, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Format(format!("bad cyclotomic `{text}`: {why}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !current.is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && current.is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(bad("dangling sign"));
        }
        terms.push((negative, current));

        let mut poly: Vec<BigRational> = Vec::new();
        for (neg, term) in terms {
            let (coef, power) = match term.find('z') {
                None => (term.as_str(), 0usize),
                Some(pos) => {
                    let coef = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                    let rest = &term[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|p| p.parse().ok())
                            .ok_or_else(|| bad("bad exponent"))?
                    };
                    (coef, power)
                }
            };
            let mut q = if coef.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coef).ok_or_else(|| bad("bad coefficient"))?
            };
            if neg {
                q = -q;
            }
            let power = power % order;
            if poly.len() <= power {
                poly.resize(power + 1, BigRational::zero());
            }
            poly[power] += q;
        }
        Ok(Cyclotomic {
            order,
            coeffs: reduce(poly, order),
        })
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::lifted_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

/// Lexicographic on normal-form coordinates (after lifting).
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.order == other.order {
            return self.coeffs.cmp(&other.coeffs);
        }
        let (a, b) = Self::lifted_pair(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order != rhs.order {
            let (a, b) = Cyclotomic::lifted_pair(self, rhs);
            return &a + &b;
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order != rhs.order {
            let (a, b) = Cyclotomic::lifted_pair(self, rhs);
            return &a * &b;
        }
        let n = self.coeffs.len();
        let mut poly = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Cyclotomic {
            order: self.order,
            coeffs: reduce(poly, self.order),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(1), |acc, x| &acc + &x)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", fmt_rational(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", fmt_rational(&mag))?;
                    }
                    write!(f, "z")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.order)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Cyclotomic", 2)?;
        s.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: usize, k: i64) -> Cyclotomic {
        Cyclotomic::from_root(e, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(9), 6);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = z(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_int(4, -1));
    }

    #[test]
    fn root_sum_vanishes() {
        let s = &(&Cyclotomic::one(3) + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn conjugate_inverts_roots() {
        assert_eq!(z(8, 1).conjugate(), z(8, 7));
        assert_eq!(z(8, 3).conjugate(), z(8, -3));
    }

    #[test]
    fn hermitian_terms() {
        let i = z(4, 1);
        assert_eq!(Cyclotomic::hermitian_term(&i, &i), Cyclotomic::one(4));
        let w = &Cyclotomic::one(3) + &z(3, 1);
        assert_eq!(Cyclotomic::hermitian_term(&w, &w), Cyclotomic::one(3));
        assert!(Cyclotomic::hermitian_term(&Cyclotomic::zero(5), &z(5, 2)).is_zero());
    }

    #[test]
    fn mixed_orders_lift_to_lcm() {
        // ζ_4 + ζ_6 lives in Q(ζ_12)
        let s = &z(4, 1) + &z(6, 1);
        assert_eq!(s.order(), 12);
        assert_eq!(s, &z(12, 3) + &z(12, 2));
        assert_eq!(Cyclotomic::from_int(2, -1), z(2, 1));
        assert_eq!(z(3, 1), z(6, 2));
    }

    #[test]
    fn display_and_parse() {
        let v = &Cyclotomic::from_int(8, 2) - &z(8, 3);
        assert_eq!(v.to_string(), "2 - z^3");
        assert_eq!(Cyclotomic::parse(8, "2 - z^3").unwrap(), v);
        assert_eq!(Cyclotomic::parse(3, "-1 - 1*z").unwrap(), z(3, 2));
        assert_eq!(Cyclotomic::parse(3, "z^2").unwrap(), z(3, 2));
        assert_eq!(Cyclotomic::parse(4, "1/2*z").unwrap().to_string(), "1/2*z");
        assert_eq!(Cyclotomic::parse(4, "0").unwrap(), Cyclotomic::zero(4));
        assert_eq!(Cyclotomic::zero(6).to_string(), "0");
        assert!(Cyclotomic::parse(4, "1 +").is_err());
        assert!(Cyclotomic::parse(4, "q").is_err());
        assert!(Cyclotomic::parse(4, "z^x").is_err());
    }

    #[test]
    fn json_form() {
        let v = Cyclotomic::parse(4, "1/2 - z").unwrap();
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, r#"{"order":4,"coeffs":["1/2","-1"]}"#);
    }

    #[test]
    fn approx_matches_unit_circle() {
        let c = z(8, 1).approx_complex();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((c.re - h).abs() < 1e-12 && (c.im - h).abs() < 1e-12);
    }
}
