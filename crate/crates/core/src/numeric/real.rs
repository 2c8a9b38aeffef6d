//! Rational approximations of real constants.
//!
//! Each function returns a rational whose absolute error is below
//! `10^(-digits)`. Work is done in binary fixed point: a value `v` is held as
//! the integer `round(v * 2^bits)`. Values that are exactly rational (`exp 0`,
//! `log 1`, perfect powers under `root`) are returned exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::div_round;
use super::ExactRational;
use crate::error::{Error, Result};

/// Largest `|q|` accepted by `exp`; `e^q` beyond it has over a million bits.
const MAX_EXP_ARGUMENT: i64 = 100_000;

/// Largest `|q|` accepted by `sin` and `cos`; reduction cost grows with
/// the bit length only.
const MAX_TRIG_ARGUMENT: i64 = 1 << 40;

fn digits_to_bits(digits: u32) -> u64 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 8
}

fn to_fixed(q: &ExactRational, bits: u64) -> BigInt {
    div_round(&(q.numer() << bits as usize), q.denom())
}

/// Rounds a fixed-point value at `work` bits to one at `target` bits.
fn finish(m: BigInt, work: u64, target: u64) -> ExactRational {
    let shift = work - target;
    let m = div_round(&m, &(BigInt::one() << shift as usize));
    ExactRational::from_big(BigRational::new(m, BigInt::one() << target as usize))
}

fn mul_fixed(a: &BigInt, b: &BigInt, bits: u64) -> BigInt {
    (a * b) >> bits as usize
}

fn check_argument(q: &ExactRational, max: i64) -> Result<()> {
    if q.abs() > max {
        return Err(Error::Domain(format!("argument {q} exceeds |{max}|")));
    }
    Ok(())
}

/// Bits needed for the integer part of `|q|`.
fn magnitude_bits(q: &ExactRational) -> u64 {
    q.abs().floor().bits()
}

/// `Σ r^i / i!` for a small fixed-point `r`.
fn exp_series(r: &BigInt, bits: u64) -> BigInt {
    let one = BigInt::one() << bits as usize;
    let mut sum = one.clone();
    let mut term = one;
    let mut i = 1u64;
    loop {
        term = mul_fixed(&term, r, bits) / i;
        if term.is_zero() {
            break;
        }
        sum += &term;
        i += 1;
    }
    sum
}

pub fn exp(q: &ExactRational, digits: u32) -> Result<ExactRational> {
    if q.is_zero() {
        return Ok(ExactRational::one());
    }
    check_argument(q, MAX_EXP_ARGUMENT)?;
    let target = digits_to_bits(digits);
    // growth of the result in bits when q > 0
    let growth = if q.is_positive() { (q.to_f64() * std::f64::consts::LOG2_E).ceil() as u64 + 2 } else { 0 };
    let halvings = magnitude_bits(q) + 8;
    let work = target + growth + halvings + 16;
    let scaled = q / &ExactRational::from_integer(BigInt::one() << halvings as usize);
    let mut m = exp_series(&to_fixed(&scaled, work), work);
    for _ in 0..halvings {
        m = mul_fixed(&m, &m, work);
    }
    Ok(finish(m, work, target))
}

/// `atanh(y)` for fixed-point `|y| <= 1/3`.
fn atanh_series(y: &BigInt, bits: u64) -> BigInt {
    let y2 = mul_fixed(y, y, bits);
    let mut power = y.clone();
    let mut sum = y.clone();
    let mut k = 1u64;
    loop {
        power = mul_fixed(&power, &y2, bits);
        let term = &power / (2 * k + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        k += 1;
    }
    sum
}

fn ln2_fixed(bits: u64) -> BigInt {
    let third = to_fixed(&ExactRational::ratio(1, 3), bits);
    atanh_series(&third, bits) * 2
}

/// Natural logarithm; `q > 0`.
pub fn ln(q: &ExactRational, digits: u32) -> Result<ExactRational> {
    if !q.is_positive() {
        return Err(Error::Domain(format!("log of non-positive {q}")));
    }
    if q.is_one() {
        return Ok(ExactRational::zero());
    }
    let target = digits_to_bits(digits);
    let k = q.numer().bits() as i64 - q.denom().bits() as i64;
    let work = target + 64 - (k.unsigned_abs().leading_zeros() as u64) + 16;
    let two_k = ExactRational::from(2).powi(k)?;
    let m = q / &two_k;
    let y = (&m - &ExactRational::one()) / (&m + &ExactRational::one());
    let ln_m = atanh_series(&to_fixed(&y, work), work) * 2;
    let total = ln2_fixed(work) * k + ln_m;
    Ok(finish(total, work, target))
}

/// `atan(1/x)` for integer `x > 1`.
fn atan_inv(x: u64, bits: u64) -> BigInt {
    let mut power = (BigInt::one() << bits as usize) / x;
    let x2 = x * x;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= x2;
        let term = &power / (2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn pi_fixed(bits: u64) -> BigInt {
    let work = bits + 16;
    let v = atan_inv(5, work) * 16 - atan_inv(239, work) * 4;
    v >> 16usize
}

pub fn pi(digits: u32) -> ExactRational {
    let target = digits_to_bits(digits);
    let work = target + 16;
    finish(pi_fixed(work), work, target)
}

/// `(sin r, cos r)` for fixed-point `|r| <= 1`.
fn sin_cos_series(r: &BigInt, bits: u64) -> (BigInt, BigInt) {
    let one = BigInt::one() << bits as usize;
    let r2 = mul_fixed(r, r, bits);
    let mut s_term = r.clone();
    let mut sin = r.clone();
    let mut c_term = one.clone();
    let mut cos = one;
    let mut i = 1u64;
    loop {
        s_term = -mul_fixed(&s_term, &r2, bits) / ((2 * i) * (2 * i + 1));
        c_term = -mul_fixed(&c_term, &r2, bits) / ((2 * i - 1) * (2 * i));
        if s_term.is_zero() && c_term.is_zero() {
            break;
        }
        sin += &s_term;
        cos += &c_term;
        i += 1;
    }
    (sin, cos)
}

/// `(sin q, cos q)`.
pub fn sin_cos(q: &ExactRational, digits: u32) -> Result<(ExactRational, ExactRational)> {
    if q.is_zero() {
        return Ok((ExactRational::zero(), ExactRational::one()));
    }
    check_argument(q, MAX_TRIG_ARGUMENT)?;
    let target = digits_to_bits(digits);
    let work = target + magnitude_bits(q) + 24;
    let half_pi = pi_fixed(work + magnitude_bits(q) + 8) >> (magnitude_bits(q) + 9) as usize;
    let x = to_fixed(q, work);
    let k = div_round(&x, &half_pi);
    let r = &x - &k * &half_pi;
    let (s, c) = sin_cos_series(&r, work);
    let quadrant = k.mod_floor_4();
    let (sin, cos) = match quadrant {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    Ok((finish(sin, work, target), finish(cos, work, target)))
}

trait ModFour {
    fn mod_floor_4(&self) -> u8;
}

impl ModFour for BigInt {
    fn mod_floor_4(&self) -> u8 {
        self.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0)
    }
}

pub fn sin(q: &ExactRational, digits: u32) -> Result<ExactRational> {
    Ok(sin_cos(q, digits)?.0)
}

pub fn cos(q: &ExactRational, digits: u32) -> Result<ExactRational> {
    Ok(sin_cos(q, digits)?.1)
}

/// Real `k`-th root. Negative radicands are allowed for odd `k`.
pub fn root(q: &ExactRational, k: u32, digits: u32) -> Result<ExactRational> {
    if k == 0 {
        return Err(Error::Domain("zeroth root".into()));
    }
    if k == 1 || q.is_zero() {
        return Ok(q.clone());
    }
    if q.is_negative() {
        if k.is_multiple_of(2) {
            return Err(Error::Domain(format!("even root of negative {q}")));
        }
        return Ok(-root(&-q, k, digits)?);
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.nth_root(k), d.nth_root(k));
    if num_traits::Pow::pow(&rn, k) == *n && num_traits::Pow::pow(&rd, k) == *d {
        return Ok(ExactRational::from_big(BigRational::new(rn, rd)));
    }
    let target = digits_to_bits(digits);
    // (n/d)^(1/k) = (n * d^(k-1))^(1/k) / d
    let radicand = (n * num_traits::Pow::pow(d, k - 1)) << (target as usize * k as usize);
    let r = radicand.nth_root(k);
    Ok(ExactRational::from_big(BigRational::new(r, d << target as usize)))
}
