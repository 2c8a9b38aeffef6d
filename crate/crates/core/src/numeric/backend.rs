use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ExactRational, FieldConfig};
use crate::error::{Error, Result};

/// Magnitude class of an element of a non-Archimedean field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tag {
    Zero,
    Infinitesimal,
    Appreciable,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(s: i32) -> Sign {
        match s.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn word(self) -> &'static str {
        match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub tag: Tag,
    pub sign: Sign,
}

impl Classification {
    pub const ZERO: Classification = Classification { tag: Tag::Zero, sign: Sign::Zero };

    /// `sign` is ignored for `Tag::Zero`, and a zero sign forces `Tag::Zero`.
    pub fn new(tag: Tag, sign: Sign) -> Classification {
        if tag == Tag::Zero || sign == Sign::Zero {
            Classification::ZERO
        } else {
            Classification { tag, sign }
        }
    }

    pub fn negate(self) -> Classification {
        Classification { tag: self.tag, sign: self.sign.flip() }
    }

    pub fn is_finite(self) -> bool {
        self.tag != Tag::Infinite
    }

    /// Zero or infinitesimal.
    pub fn is_negligible(self) -> bool {
        matches!(self.tag, Tag::Zero | Tag::Infinitesimal)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Zero => "zero",
            Tag::Infinitesimal => "infinitesimal",
            Tag::Appreciable => "appreciable",
            Tag::Infinite => "infinite",
        })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Zero => f.write_str("zero"),
            Sign::Positive => write!(f, "positive {}", self.tag),
            Sign::Negative => write!(f, "negative {}", self.tag),
        }
    }
}

/// The one-argument functions of the expression language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 6] = [Func::Sin, Func::Cos, Func::Exp, Func::Log, Func::Sqrt, Func::Abs];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// An ordered field the calculus layer can compute in.
///
/// Values carry their own configuration so that expression evaluation never
/// needs a separate context argument. Arithmetic is fallible because the
/// sequence and rational-function backends have partial operations.
pub trait Backend: Clone + fmt::Debug + fmt::Display + Sized {
    const NAME: &'static str;

    fn config(&self) -> &Arc<FieldConfig>;

    /// The standard element `q`.
    fn constant(cfg: &Arc<FieldConfig>, q: &ExactRational) -> Self;

    fn add(&self, rhs: &Self) -> Result<Self>;

    fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Result<Self>;

    fn neg(&self) -> Self;

    fn div(&self, rhs: &Self) -> Result<Self>;

    fn powi(&self, e: i64) -> Result<Self> {
        if e < 0 {
            let one = Self::constant(self.config(), &ExactRational::one());
            return one.div(&self.powi(-e)?);
        }
        let mut result = Self::constant(self.config(), &ExactRational::one());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Positive `k`-th root.
    fn root(&self, k: u32) -> Result<Self>;

    /// `self ^ exponent` where the exponent must be a standard integer.
    fn pow_by(&self, exponent: &Self) -> Result<Self> {
        match exponent.as_standard_integer() {
            Some(e) => self.powi(e),
            None => Err(Error::Domain(format!("exponent {exponent} is not a standard integer"))),
        }
    }

    fn apply(&self, f: Func) -> Result<Self>;

    fn classify(&self) -> Result<Classification>;

    /// Standard part of a finite element.
    fn st(&self) -> Result<ExactRational>;

    /// `Some(i)` when the value is exactly the standard integer `i`.
    fn as_standard_integer(&self) -> Option<i64>;
}

pub fn classify<B: Backend>(x: &B) -> Result<Classification> {
    x.classify()
}

pub fn st<B: Backend>(x: &B) -> Result<ExactRational> {
    x.st()
}

/// `x - y` is zero or infinitesimal.
pub fn infinitely_close<B: Backend>(x: &B, y: &B) -> Result<bool> {
    Ok(x.sub(y)?.classify()?.is_negligible())
}
