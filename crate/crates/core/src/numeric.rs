//! Exact ordered-field arithmetic: arbitrary-precision rationals and the
//! quadratic extension `a + b*sqrt(d)` needed for irrational ellipsoid
//! parameters such as the golden ratio.
//!
//! All comparisons and signs are decided exactly; floating point appears
//! only in [`Scalar::to_f64`], which exists for rendering.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Errors from scalar parsing and cross-field operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("cannot parse scalar from {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("mixed radicands: sqrt({left}) vs sqrt({right})")]
    MixedRadicands { left: u64, right: u64 },
    #[error("radicand {0} must be a square-free integer >= 2")]
    InvalidRadicand(u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, NumericError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn sign(&self) -> i8 {
        match self.0.numer().sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, NumericError> {
        let err = |reason: &str| NumericError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let numer: BigInt = p.parse().map_err(|_| err("bad numerator"))?;
            let denom: BigInt = q.parse().map_err(|_| err("bad denominator"))?;
            if denom <= BigInt::zero() {
                return Err(err("denominator must be positive"));
            }
            Ok(Rational(BigRational::new(numer, denom)))
        } else {
            let n: BigInt = s.parse().map_err(|_| err("bad integer"))?;
            Ok(Rational::from_int(n))
        }
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(std::ops::$trait::$method(&self.0, &rhs.0))
            }
        }
        impl std::ops::$trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl std::ops::Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// `a + b*sqrt(d)` with `b != 0` and square-free `d >= 2`.
///
/// The radicand is fixed per computation context; values with `b == 0`
/// are demoted to [`Scalar::Rational`] on construction, so structural
/// equality on [`Scalar`] coincides with equality of real numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadScalar {
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    /// Sign of `a + b*sqrt(d)` by exact case analysis: when `a` and `b`
    /// disagree in sign, compare `a^2` against `b^2 d`. A zero result is
    /// impossible for `b != 0` since `sqrt(d)` is irrational.
    fn sign(&self) -> i8 {
        let (sa, sb) = (self.a.sign(), self.b.sign());
        match (sa, sb) {
            (0, 0) => 0,
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                let a2 = &self.a * &self.a;
                let b2d = &(&self.b * &self.b) * &Rational::from_int(self.d);
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("sqrt({}) rational", self.d),
                }
            }
        }
    }
}

fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// Exact ordered-field number: a rational, or `a + b*sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(Rational),
    Quad(QuadScalar),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(Rational::from_int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Rational(Rational::new(p, q).expect("nonzero denominator"))
    }

    /// Build `a + b*sqrt(d)`; demotes to a rational when `b == 0`.
    pub fn quad(a: Rational, b: Rational, d: u64) -> Result<Self, NumericError> {
        if !is_square_free(d) {
            return Err(NumericError::InvalidRadicand(d));
        }
        if b.is_zero() {
            Ok(Scalar::Rational(a))
        } else {
            Ok(Scalar::Quad(QuadScalar { a, b, d }))
        }
    }

    /// The golden ratio `(1 + sqrt(5))/2`.
    pub fn golden_ratio() -> Self {
        Scalar::quad(Rational::new(1, 2).unwrap(), Rational::new(1, 2).unwrap(), 5).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn radicand(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Quad(q) => Some(q.d),
        }
    }

    /// Sign in `{-1, 0, +1}`, decided exactly.
    pub fn sign(&self) -> i8 {
        match self {
            Scalar::Rational(r) => r.sign(),
            Scalar::Quad(q) => q.sign(),
        }
    }

    /// Exact total order; errors when the operands live in different
    /// quadratic fields.
    pub fn checked_cmp(&self, other: &Scalar) -> Result<Ordering, NumericError> {
        let diff = self.checked_sub(other)?;
        Ok(match diff.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    fn as_quad_parts(&self, d: u64) -> (Rational, Rational) {
        match self {
            Scalar::Rational(r) => (r.clone(), Rational::zero()),
            Scalar::Quad(q) => {
                debug_assert_eq!(q.d, d);
                (q.a.clone(), q.b.clone())
            }
        }
    }

    fn common_radicand(&self, other: &Scalar) -> Result<Option<u64>, NumericError> {
        match (self.radicand(), other.radicand()) {
            (None, None) => Ok(None),
            (Some(d), None) | (None, Some(d)) => Ok(Some(d)),
            (Some(d1), Some(d2)) if d1 == d2 => Ok(Some(d1)),
            (Some(d1), Some(d2)) => Err(NumericError::MixedRadicands { left: d1, right: d2 }),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        match self.common_radicand(other)? {
            None => match (self, other) {
                (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x + y)),
                _ => unreachable!(),
            },
            Some(d) => {
                let (a1, b1) = self.as_quad_parts(d);
                let (a2, b2) = other.as_quad_parts(d);
                Scalar::quad(&a1 + &a2, &b1 + &b2, d)
            }
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        self.checked_add(&(-other))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        match self.common_radicand(other)? {
            None => match (self, other) {
                (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(x * y)),
                _ => unreachable!(),
            },
            Some(d) => {
                let (a1, b1) = self.as_quad_parts(d);
                let (a2, b2) = other.as_quad_parts(d);
                let dr = Rational::from_int(d);
                let a = &(&a1 * &a2) + &(&(&b1 * &b2) * &dr);
                let b = &(&a1 * &b2) + &(&b1 * &a2);
                Scalar::quad(a, b, d)
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        if other.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        match other {
            Scalar::Rational(r) => match self {
                Scalar::Rational(x) => Ok(Scalar::Rational(x / r)),
                Scalar::Quad(q) => Scalar::quad(&q.a / r, &q.b / r, q.d),
            },
            Scalar::Quad(q) => {
                // 1/(a + b*sqrt(d)) = (a - b*sqrt(d)) / (a^2 - b^2 d)
                let dr = Rational::from_int(q.d);
                let norm = &(&q.a * &q.a) - &(&(&q.b * &q.b) * &dr);
                debug_assert!(!norm.is_zero());
                let inv = Scalar::quad(&q.a / &norm, &(-&q.b) / &norm, q.d)?;
                self.checked_mul(&inv)
            }
        }
    }

    /// Largest integer `n` with `n <= self`, found by exact bracketing and
    /// binary search on `sign_of(self - n)`.
    pub fn floor_int(&self) -> BigInt {
        match self {
            Scalar::Rational(r) => r.floor_int(),
            Scalar::Quad(q) => {
                // |a + b*sqrt(d)| <= |a| + |b|*d since sqrt(d) <= d for d >= 1
                let bound = q.a.abs().ceil_int()
                    + q.b.abs().ceil_int() * BigInt::from(q.d)
                    + BigInt::one();
                let mut lo = -bound.clone();
                let mut hi = bound;
                // invariant: self - lo >= 0 and self - hi < 0
                while &hi - &lo > BigInt::one() {
                    let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
                    let diff = self.checked_sub(&Scalar::Rational(Rational::from_int(mid.clone())));
                    if diff.expect("same field").sign() >= 0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }

    pub fn ceil_int(&self) -> BigInt {
        -(-self).floor_int()
    }

    /// Decimal approximation (display only); the exact value is the contract.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64(),
            Scalar::Quad(q) => q.a.to_f64() + q.b.to_f64() * (q.d as f64).sqrt(),
        }
    }

    /// Exact-arithmetic decimal rendering, rounded half away from zero.
    pub fn decimal_string(&self, places: usize) -> String {
        let negative = self.sign() < 0;
        let abs = if negative { -self } else { self.clone() };
        let pow = Rational(BigRational::from_integer(BigInt::from(10).pow(places as u32)));
        let scaled = abs
            .checked_mul(&Scalar::Rational(pow))
            .expect("same field")
            .checked_add(&Scalar::ratio(1, 2))
            .expect("same field");
        let n = scaled.floor_int();
        let digits = n.to_string();
        let digits = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = digits.split_at(digits.len() - places);
        let sign = if negative { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar op on mixed radicands")
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                std::ops::$trait::$method(&self, rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quad(q) => Scalar::Quad(QuadScalar {
                a: -&q.a,
                b: -&q.b,
                d: q.d,
            }),
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::ops::Mul<u32> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: u32) -> Scalar {
        self * &Scalar::from_int(rhs as i64)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> Ordering {
        self.checked_cmp(other)
            .expect("scalar comparison on mixed radicands")
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Scalar {
        Scalar::Rational(r)
    }
}

impl From<u32> for Scalar {
    fn from(n: u32) -> Scalar {
        Scalar::from_int(n as i64)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Quad(q) => {
                if q.a.is_zero() {
                    write!(f, "{}*sqrt({})", q.b, q.d)
                } else if q.b.sign() < 0 {
                    write!(f, "{}-{}*sqrt({})", q.a, q.b.abs(), q.d)
                } else {
                    write!(f, "{}+{}*sqrt({})", q.a, q.b, q.d)
                }
            }
        }
    }
}

impl FromStr for Scalar {
    type Err = NumericError;

    /// Accepts `p`, `p/q`, and `p/q+r/s*sqrt(d)` (also with `-`, or with
    /// the rational part omitted).
    fn from_str(s: &str) -> Result<Self, NumericError> {
        let err = |reason: &str| NumericError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        let Some(idx) = s.find("*sqrt(") else {
            return Ok(Scalar::Rational(s.parse()?));
        };
        let tail = &s[idx + "*sqrt(".len()..];
        let Some(d_str) = tail.strip_suffix(')') else {
            return Err(err("missing closing parenthesis after sqrt"));
        };
        let d: u64 = d_str
            .parse()
            .map_err(|_| err("radicand must be a positive integer"))?;
        let coeffs = &s[..idx];
        // Split off the sqrt coefficient at the last interior sign.
        let split = coeffs
            .char_indices()
            .skip(1)
            .rev()
            .find(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i);
        let (a, b) = match split {
            Some(i) => {
                let a: Rational = coeffs[..i].parse()?;
                let sign = if coeffs.as_bytes()[i] == b'-' { -1 } else { 1 };
                let b: Rational = coeffs[i + 1..].parse()?;
                let b = if sign < 0 { -&b } else { b };
                (a, b)
            }
            None => (Rational::zero(), coeffs.parse()?),
        };
        Scalar::quad(a, b, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(a: (i64, i64), b: (i64, i64), d: u64) -> Scalar {
        Scalar::quad(
            Rational::new(a.0, a.1).unwrap(),
            Rational::new(b.0, b.1).unwrap(),
            d,
        )
        .unwrap()
    }

    #[test]
    fn sign_cases() {
        assert_eq!(quad((0, 1), (0, 1), 5), Scalar::zero());
        assert_eq!(Scalar::zero().sign(), 0);
        // 2*sqrt(5) - 5 < 0 because (2*sqrt(5))^2 = 20 < 25
        assert_eq!(quad((-5, 1), (2, 1), 5).sign(), -1);
        assert_eq!(quad((1, 1), (1, 1), 5).sign(), 1);
        assert_eq!(quad((5, 1), (-2, 1), 5).sign(), 1);
        assert_eq!(quad((-1, 1), (-1, 1), 5).sign(), -1);
    }

    #[test]
    fn compare_paper_fractions() {
        let x = Scalar::ratio(129, 28);
        let y = Scalar::ratio(132, 28);
        assert_eq!(x.checked_cmp(&y).unwrap(), Ordering::Less);
        assert_eq!(x.checked_cmp(&x).unwrap(), Ordering::Equal);
    }

    #[test]
    fn compare_golden_ratio_multiples() {
        // 6*phi = 3 + 3*sqrt(5) vs 2*phi + 7 = 8 + sqrt(5)
        let left = quad((3, 1), (3, 1), 5);
        let right = quad((8, 1), (1, 1), 5);
        assert_eq!(left.checked_cmp(&right).unwrap(), Ordering::Less);
    }

    #[test]
    fn mixed_radicands_error() {
        let x = quad((0, 1), (1, 1), 2);
        let y = quad((0, 1), (1, 1), 3);
        assert!(matches!(
            x.checked_cmp(&y),
            Err(NumericError::MixedRadicands { left: 2, right: 3 })
        ));
    }

    #[test]
    fn invalid_radicand_rejected() {
        for d in [0, 1, 4, 12, 18] {
            assert!(Scalar::quad(Rational::zero(), Rational::one(), d).is_err());
        }
        for d in [2, 3, 5, 6, 7, 10] {
            assert!(Scalar::quad(Rational::zero(), Rational::one(), d).is_ok());
        }
    }

    #[test]
    fn golden_ratio_identity() {
        // phi^2 = phi + 1
        let phi = Scalar::golden_ratio();
        assert_eq!(&phi * &phi, &phi + &Scalar::one());
        // (phi + 1)/phi = phi
        assert_eq!((&phi + &Scalar::one()) / phi.clone(), phi);
    }

    #[test]
    fn floor_and_ceil() {
        let phi = Scalar::golden_ratio();
        assert_eq!(phi.floor_int(), BigInt::from(1));
        assert_eq!(phi.ceil_int(), BigInt::from(2));
        assert_eq!((-&phi).floor_int(), BigInt::from(-2));
        assert_eq!(Scalar::ratio(7, 2).floor_int(), BigInt::from(3));
        assert_eq!(Scalar::ratio(-7, 2).floor_int(), BigInt::from(-4));
        assert_eq!(Scalar::from_int(3).floor_int(), BigInt::from(3));
        assert_eq!(Scalar::from_int(3).ceil_int(), BigInt::from(3));
        let big = quad((1000, 1), (999, 1), 5);
        assert_eq!(big.floor_int(), BigInt::from(3233)); // 1000 + 999*sqrt(5)
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Scalar::ratio(129, 28).decimal_string(6), "4.607143");
        assert_eq!(Scalar::golden_ratio().decimal_string(6), "1.618034");
        assert_eq!(Scalar::ratio(-1, 2).decimal_string(6), "-0.500000");
        assert_eq!(Scalar::from_int(4).decimal_string(6), "4.000000");
        assert_eq!(Scalar::ratio(41, 10).decimal_string(6), "4.100000");
    }

    #[test]
    fn parse_display_round_trip() {
        for text in [
            "0",
            "-3",
            "129/28",
            "-7/2",
            "1/2+1/2*sqrt(5)",
            "-1/2-3/2*sqrt(5)",
            "2*sqrt(3)",
            "-2*sqrt(3)",
            "7/2+3/2*sqrt(5)",
        ] {
            let v: Scalar = text.parse().unwrap();
            let round: Scalar = v.to_string().parse().unwrap();
            assert_eq!(v, round, "round trip failed for {text}");
        }
        // reduction happens on parse
        let v: Scalar = "42/28".parse().unwrap();
        assert_eq!(v, Scalar::ratio(3, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("1+2*sqrt(4)".parse::<Scalar>().is_err());
    }
}
