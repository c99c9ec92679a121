//! Scalar fields the algorithms are generic over.
//!
//! Two instantiations are provided: [`Rational`], an arbitrary-precision
//! exact field used for all verification work, and `f64`, used for
//! benchmarking. Zero tests are exact in both; in float mode a divisor
//! that is exactly `0.0` is still reported as a zero divisor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for exact fields, where residual checks demand equality.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `p/q`; a zero denominator is an error in both modes.
    fn from_ratio(p: i64, q: i64) -> Result<Self>;
    fn is_zero(&self) -> bool;
    /// Absolute value as an `f64`, used for pivoting and residual reports.
    fn magnitude(&self) -> f64;
    fn to_f64(&self) -> f64;
    /// Division that refuses a zero divisor instead of producing NaN/inf.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
    /// Parses an integer, a decimal fraction, or a `p/q` literal.
    fn parse_literal(s: &str) -> std::result::Result<Self, String>;

    fn is_exact(&self) -> bool {
        Self::EXACT
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs).ok_or(Error::DivisionByZero)
    }

    fn recip(&self) -> Result<Self> {
        Self::one().div(self)
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    /// Exact equality in exact mode, `|a - b| <= tol` otherwise.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.clone() - other.clone()).magnitude() <= tol
        }
    }

    /// Whether a residual counts as zero under the given float tolerance.
    fn within(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }
}

/// Arbitrary-precision rational number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
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
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty scalar literal".into());
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            if q.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            return Ok(Rational(BigRational::new(p, q)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let negative = int.trim_start().starts_with('-');
            let int = int.trim_start_matches(['+', '-']);
            if !frac.chars().all(|c| c.is_ascii_digit()) || (int.is_empty() && frac.is_empty()) {
                return Err(format!("bad decimal literal {s:?}"));
            }
            let digits = format!("{int}{frac}");
            let mantissa: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().map_err(|_| format!("bad decimal literal {s:?}"))?
            };
            let scale = num::pow(BigInt::from(10), frac.len());
            let value = BigRational::new(mantissa, scale);
            return Ok(Rational(if negative { -value } else { value }));
        }
        let v: BigInt = s.parse().map_err(|_| format!("bad integer literal {s:?}"))?;
        Ok(Rational(BigRational::from_integer(v)))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }

    fn from_ratio(p: i64, q: i64) -> Result<Self> {
        Rational::new(p, q)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.0.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.0.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    fn parse_literal(s: &str) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(p as f64 / q as f64)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0.0 {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn parse_literal(s: &str) -> std::result::Result<Self, String> {
        // Route through the exact parser so `p/q` literals work in both modes.
        let r: Rational = s.parse()?;
        Ok(r.to_f64())
    }
}
