//! Ordered fields used as coordinates: exact rationals, the quadratic field
//! Q(√2), and tolerance-aware floats.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number in lowest terms.
pub type Rational = BigRational;

/// Absolute tolerance used by the `f64` sign test.
pub const F64_EPS: f64 = 1e-9;
/// Absolute tolerance used by the `f32` sign test.
pub const F32_EPS: f32 = 1e-5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as {kind}")]
pub struct ParseScalarError {
    pub input: String,
    pub kind: &'static str,
}

/// An ordered field with a sign test.
///
/// Exact fields answer `sign` exactly; float fields compare against a fixed
/// absolute tolerance, so `sign` is the single place where rounding enters.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;
    const NAME: &'static str;

    fn sign(&self) -> Ordering;
    fn to_f64(&self) -> f64;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Nearest representable value; exact (dyadic) for the rational fields.
    fn from_f64(x: f64) -> Self;
    fn parse_str(s: &str) -> Result<Self, ParseScalarError>;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
    fn cmp_s(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
    fn is_zero_s(&self) -> bool {
        self.sign() == Ordering::Equal
    }
    fn is_positive_s(&self) -> bool {
        self.sign() == Ordering::Greater
    }
    fn is_negative_s(&self) -> bool {
        self.sign() == Ordering::Less
    }
    fn eq_s(&self, other: &Self) -> bool {
        self.cmp_s(other) == Ordering::Equal
    }
    fn abs_s(&self) -> Self {
        if self.is_negative_s() {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn max_s(self, other: Self) -> Self {
        if other.cmp_s(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }
    fn min_s(self, other: Self) -> Self {
        if other.cmp_s(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, ParseScalarError> {
    let err = || ParseScalarError {
        input: s.to_string(),
        kind: "rational",
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if t.contains('/') {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let mut num = BigInt::from_str(&digits).map_err(|_| err())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        return Ok(BigRational::new(num, den));
    }
    let r = BigRational::from_str(t).map_err(|_| err())?;
    Ok(r)
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn sign(&self) -> Ordering {
        self.numer().sign().cmp(&num_bigint::Sign::NoSign)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_f64(x: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(x).expect("finite float")
    }
    fn parse_str(s: &str) -> Result<Self, ParseScalarError> {
        parse_rational(s)
    }
    fn cmp_s(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn abs_s(&self) -> Self {
        self.abs()
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr, $name:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;
            const NAME: &'static str = $name;

            fn sign(&self) -> Ordering {
                if *self > $eps {
                    Ordering::Greater
                } else if *self < -$eps {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn from_ratio(num: i64, den: i64) -> Self {
                (num as f64 / den as f64) as $t
            }
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            fn parse_str(s: &str) -> Result<Self, ParseScalarError> {
                if let Ok(x) = s.trim().parse::<$t>() {
                    return Ok(x);
                }
                parse_rational(s)
                    .map(|r| ToPrimitive::to_f64(&r).unwrap_or(f64::NAN) as $t)
                    .map_err(|_| ParseScalarError {
                        input: s.to_string(),
                        kind: $name,
                    })
            }
            fn abs_s(&self) -> Self {
                self.abs()
            }
        }
    };
}

float_scalar!(f64, F64_EPS, "f64");
float_scalar!(f32, F32_EPS, "f32");

/// Element `a + b√2` of the quadratic field Q(√2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QSqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }
    pub fn rational(a: BigRational) -> Self {
        QSqrt2 {
            a,
            b: BigRational::zero(),
        }
    }
    pub fn sqrt2() -> Self {
        QSqrt2 {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }
    /// `p/q + (r/s)√2`.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64) -> Self {
        QSqrt2 {
            a: BigRational::from_ratio(p, q),
            b: BigRational::from_ratio(r, s),
        }
    }
    pub fn conjugate(&self) -> Self {
        QSqrt2 {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }
    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::rational(BigRational::one())
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2 {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2 {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(2.into());
        QSqrt2 {
            a: &self.a * &o.a + two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Div for QSqrt2 {
    type Output = QSqrt2;
    fn div(self, o: QSqrt2) -> QSqrt2 {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt2)");
        let num = self * o.conjugate();
        QSqrt2 {
            a: num.a / &n,
            b: num.b / n,
        }
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt2", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}*sqrt2", self.a, -self.b.clone())
                } else {
                    write!(f, "{}+{}*sqrt2", self.a, self.b)
                }
            }
        }
    }
}

impl FromStr for QSqrt2 {
    type Err = ParseScalarError;

    /// Accepts `p/q`, `r/s*sqrt2` and `p/q+r/s*sqrt2` (or with `-`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError {
            input: s.to_string(),
            kind: "Q(sqrt2)",
        };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix("*sqrt2") else {
            return parse_rational(&t).map(QSqrt2::rational).map_err(|_| err());
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .last()
            .map(|(i, _)| i);
        match split {
            Some(i) => {
                let a = parse_rational(&body[..i]).map_err(|_| err())?;
                let b = parse_rational(body[i..].trim_start_matches('+')).map_err(|_| err())?;
                Ok(QSqrt2 { a, b })
            }
            None => {
                let b = parse_rational(body).map_err(|_| err())?;
                Ok(QSqrt2 {
                    a: BigRational::zero(),
                    b,
                })
            }
        }
    }
}

impl Scalar for QSqrt2 {
    const EXACT: bool = true;
    const NAME: &'static str = "Q(sqrt2)";

    fn sign(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² against 2b².
        let n = self.norm().sign();
        if sa == Ordering::Greater {
            n
        } else {
            n.reverse()
        }
    }
    fn to_f64(&self) -> f64 {
        Scalar::to_f64(&self.a) + Scalar::to_f64(&self.b) * std::f64::consts::SQRT_2
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        QSqrt2::rational(BigRational::from_ratio(num, den))
    }
    fn from_f64(x: f64) -> Self {
        QSqrt2::rational(<BigRational as Scalar>::from_f64(x))
    }
    fn parse_str(s: &str) -> Result<Self, ParseScalarError> {
        s.parse()
    }
}

/// Types that can be used as hash keys for exact coordinates.
pub trait ExactKey: Scalar + Eq + Hash {}
impl ExactKey for BigRational {}
impl ExactKey for QSqrt2 {}

/// Shorthand for `BigRational::new(p, q)`.
pub fn q(p: i64, den: i64) -> Rational {
    <Rational as Scalar>::from_ratio(p, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_forms() {
        assert_eq!(Rational::parse_str("-1/2").unwrap(), q(-1, 2));
        assert_eq!(Rational::parse_str("3").unwrap(), q(3, 1));
        assert_eq!(Rational::parse_str("0.25").unwrap(), q(1, 4));
        assert_eq!(Rational::parse_str("-1.5").unwrap(), q(-3, 2));
        assert!(Rational::parse_str("x").is_err());
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(-4, 2).to_string(), "-2");
    }

    #[test]
    fn sqrt2_arithmetic() {
        let r = QSqrt2::sqrt2();
        assert_eq!(r.clone() * r.clone(), QSqrt2::from_int(2));
        let x = QSqrt2::from_parts(1, 1, 1, 1);
        let inv = QSqrt2::one() / x.clone();
        assert_eq!(inv.clone() * x, QSqrt2::one());
        assert_eq!(inv, QSqrt2::from_parts(-1, 1, 1, 1));
    }

    #[test]
    fn sqrt2_sign() {
        // 3 - 2√2 ≈ 0.17 > 0
        assert_eq!(QSqrt2::from_parts(3, 1, -2, 1).sign(), Ordering::Greater);
        // 1 - √2 < 0
        assert_eq!(QSqrt2::from_parts(1, 1, -1, 1).sign(), Ordering::Less);
        // -3 + 2√2 < 0
        assert_eq!(QSqrt2::from_parts(-3, 1, 2, 1).sign(), Ordering::Less);
        // -1 + √2 > 0
        assert_eq!(QSqrt2::from_parts(-1, 1, 1, 1).sign(), Ordering::Greater);
        assert_eq!(QSqrt2::zero().sign(), Ordering::Equal);
    }

    #[test]
    fn sqrt2_display_roundtrip() {
        for x in [
            QSqrt2::from_parts(1, 2, -3, 4),
            QSqrt2::from_parts(0, 1, 1, 4),
            QSqrt2::from_parts(-2, 3, 0, 1),
            QSqrt2::from_parts(-1, 1, 1, 2),
        ] {
            let s = x.to_string();
            assert_eq!(s.parse::<QSqrt2>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn float_sign_uses_tolerance() {
        assert_eq!(1e-12f64.sign(), Ordering::Equal);
        assert_eq!(1e-6f64.sign(), Ordering::Greater);
        assert_eq!(f64::parse_str("1/4").unwrap(), 0.25);
    }
}
