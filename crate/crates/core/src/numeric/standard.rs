use std::fmt;
use std::sync::Arc;

use super::backend::{Backend, Classification, Func, Sign, Tag};
use super::{real, ExactRational, FieldConfig};
use crate::error::{Error, Result};

/// A standard real held as a rational at the configured working precision.
///
/// Exact while values stay small; oversized results are rounded to
/// `precision_bits` significant bits, and nonzero magnitudes below
/// [`Real::underflow_bound`] saturate at that bound, keeping their sign.
/// This is the scalar used for term-by-term evaluation of sequences and for
/// decimal subdivision.
#[derive(Clone, Debug)]
pub struct Real {
    value: ExactRational,
    cfg: Arc<FieldConfig>,
}

/// Underflow threshold in units of the precision budget. A power such as
/// `(1/n)^n` at `n = 2^20` has no compact rational form; far below the
/// threshold only its sign carries information.
pub const UNDERFLOW_FACTOR: u64 = 64;

/// `⌊log2 |q|⌋` up to one, for nonzero `q`.
fn log2_estimate(q: &ExactRational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

impl Real {
    pub fn new(value: ExactRational, cfg: &Arc<FieldConfig>) -> Real {
        let floor = (UNDERFLOW_FACTOR * cfg.precision_bits()) as i64;
        let value = if !value.is_zero() && log2_estimate(&value) < -floor {
            Real::saturated(value.signum(), cfg)
        } else {
            value.tame(cfg.precision_bits())
        };
        Real { value, cfg: cfg.clone() }
    }

    /// Smallest nonzero magnitude, `2^-(UNDERFLOW_FACTOR · precision_bits)`.
    pub fn underflow_bound(cfg: &FieldConfig) -> ExactRational {
        Real::saturated(1, cfg)
    }

    /// True for magnitudes within the precision budget of the underflow
    /// bound, where standard multiples of saturated values land.
    pub fn is_underflow(q: &ExactRational, cfg: &FieldConfig) -> bool {
        let near = ((UNDERFLOW_FACTOR - 1) * cfg.precision_bits()) as i64;
        q.is_zero() || log2_estimate(q) < -near
    }

    fn saturated(sign: i32, cfg: &FieldConfig) -> ExactRational {
        let floor = (UNDERFLOW_FACTOR * cfg.precision_bits()) as usize;
        let m = ExactRational::from_big(num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(1) << floor));
        if sign < 0 {
            -m
        } else {
            m
        }
    }

    pub fn value(&self) -> &ExactRational {
        &self.value
    }

    pub fn into_value(self) -> ExactRational {
        self.value
    }

    fn wrap(&self, value: ExactRational) -> Real {
        Real::new(value, &self.cfg)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.value == other.value
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl Backend for Real {
    const NAME: &'static str = "real";

    fn config(&self) -> &Arc<FieldConfig> {
        &self.cfg
    }

    fn constant(cfg: &Arc<FieldConfig>, q: &ExactRational) -> Self {
        Real::new(q.clone(), cfg)
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(self.wrap(&self.value + &rhs.value))
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self.wrap(&self.value - &rhs.value))
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self.wrap(&self.value * &rhs.value))
    }

    fn neg(&self) -> Self {
        Real { value: -&self.value, cfg: self.cfg.clone() }
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.wrap(self.value.checked_div(&rhs.value)?))
    }

    fn powi(&self, e: i64) -> Result<Self> {
        // skip building a power that is certain to underflow
        if e > 0 && !self.value.is_zero() {
            let floor = (UNDERFLOW_FACTOR * self.cfg.precision_bits()) as i64;
            let upper = log2_estimate(&self.value) + 1;
            if upper < 0 && upper.saturating_mul(e) < -floor {
                let sign = if e % 2 == 0 { 1 } else { self.value.signum() };
                return Ok(Real { value: Real::saturated(sign, &self.cfg), cfg: self.cfg.clone() });
            }
        }
        if e < 0 {
            let one = Self::constant(&self.cfg, &ExactRational::one());
            return one.div(&self.powi(-e)?);
        }
        let mut result = Self::constant(&self.cfg, &ExactRational::one());
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

    fn root(&self, k: u32) -> Result<Self> {
        Ok(self.wrap(real::root(&self.value, k, self.cfg.digits())?))
    }

    fn apply(&self, f: Func) -> Result<Self> {
        let d = self.cfg.digits();
        let v = match f {
            Func::Sin => real::sin(&self.value, d)?,
            Func::Cos => real::cos(&self.value, d)?,
            Func::Exp => real::exp(&self.value, d)?,
            Func::Log => real::ln(&self.value, d)?,
            Func::Sqrt => {
                if self.value.is_negative() {
                    return Err(Error::Domain(format!("sqrt of negative {}", self.value)));
                }
                real::root(&self.value, 2, d)?
            }
            Func::Abs => self.value.abs(),
        };
        Ok(self.wrap(v))
    }

    fn classify(&self) -> Result<Classification> {
        Ok(Classification::new(Tag::Appreciable, Sign::of(self.value.signum())))
    }

    fn st(&self) -> Result<ExactRational> {
        Ok(self.value.clone())
    }

    fn as_standard_integer(&self) -> Option<i64> {
        self.value.to_i64()
    }
}
