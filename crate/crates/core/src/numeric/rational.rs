//! Arbitrary-precision rational scalars.
//!
//! `ExactRational` is always in canonical form (positive denominator, reduced).
//! It is the coefficient type of every backend.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d = denom.into();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(BigRational::new(numer.into(), d)))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    /// `p/q` for machine-sized parts. Panics when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        ExactRational(BigRational::new(p.into(), q.into()))
    }

    /// `10^(-digits)`.
    pub fn pow10_neg(digits: u32) -> Self {
        ExactRational(BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits)))
    }

    pub fn from_big(r: BigRational) -> Self {
        ExactRational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.recip()?.powi(-e);
        }
        let e = u32::try_from(e).map_err(|_| Error::Domain(format!("exponent {e} too large")))?;
        Ok(ExactRational(num_traits::Pow::pow(&self.0, e)))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Total bit length of numerator and denominator.
    pub fn bit_size(&self) -> u64 {
        self.0.numer().bits() + self.0.denom().bits()
    }

    /// Nearest rational of the form `m * 2^e` with `|m| < 2^bits`.
    pub fn round_significant(&self, bits: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (n, d) = (self.0.numer(), self.0.denom());
        let shift = bits as i64 - (n.bits() as i64 - d.bits() as i64);
        if shift >= 0 {
            let m = div_round(&(n << shift as usize), d);
            ExactRational(BigRational::new(m, BigInt::one() << shift as usize))
        } else {
            let m = div_round(n, &(d << (-shift) as usize));
            ExactRational(BigRational::from_integer(m << (-shift) as usize))
        }
    }

    /// Rounds only when the exact representation has grown past `4 * bits`.
    pub fn tame(self, bits: u64) -> Self {
        if self.bit_size() > 4 * bits {
            self.round_significant(bits)
        } else {
            self
        }
    }

    /// Nearest multiple of `10^(-digits)`, as a decimal string.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let m = div_round(&(self.0.numer() * &scale), self.0.denom());
        format_scaled(&m, digits)
    }

    /// Largest multiple of `10^(-digits)` not exceeding the value.
    pub fn to_decimal_floor(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let m = (self.0.numer() * &scale).div_floor(self.0.denom());
        format_scaled(&m, digits)
    }
}

/// `round(a / b)` with ties away from zero; `b > 0`.
pub(crate) fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    if a.is_negative() {
        -((-a * &two + b).div_floor(&(b * &two)))
    } else {
        (a * &two + b).div_floor(&(b * &two))
    }
}

fn format_scaled(m: &BigInt, digits: u32) -> String {
    let neg = m.is_negative();
    let s = m.abs().to_string();
    let digits = digits as usize;
    let body = if digits == 0 {
        s
    } else if s.len() > digits {
        format!("{}.{}", &s[..s.len() - digits], &s[s.len() - digits..])
    } else {
        format!("0.{}{}", "0".repeat(digits - s.len()), s)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `-3`, `3/4`, `0.25`, `-1.5e-3`, `1e-9`.
impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("`{s}` is not a rational number"));
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            return ExactRational::new(p, q);
        }
        let (mantissa, exp) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (neg, mantissa) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let scale = exp - frac.len() as i32;
        let ten = BigInt::from(10u32);
        let mut r = if scale >= 0 {
            BigRational::from_integer(digits * ten.pow(scale as u32))
        } else {
            BigRational::new(digits, ten.pow((-scale) as u32))
        };
        if neg {
            r = -r;
        }
        Ok(ExactRational(r))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        ExactRational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the primitive types; use `checked_div` on
// untrusted input.
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl PartialEq<i64> for ExactRational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for ExactRational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer((*other).into())))
    }
}
