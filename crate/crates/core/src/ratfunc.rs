//! Real rational functions in `x`, ordered by their behavior at infinity.
//!
//! `a < b` iff `b - a` is eventually positive, i.e. the reduced difference has
//! a positive leading-coefficient ratio. `x` then exceeds every constant, so
//! the field is a proper non-Archimedean extension of the rationals. It has no
//! transcendental structure: `sin`, `exp`, `log` and roots of non-constant
//! elements fail with `NoTransfer`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::{Backend, Classification, ExactRational, FieldConfig, Func, Real, Sign, Tag};

type Q = ExactRational;

pub const MAX_DEGREE: usize = 512;

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Q) -> Poly {
        Poly::new(vec![c])
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Poly {
        Poly(vec![Q::zero(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.0.last().cloned().unwrap_or_default()
    }

    fn check(self) -> Result<Poly> {
        if self.degree() > MAX_DEGREE {
            return Err(Error::DegreeOverflow(self.degree()));
        }
        Ok(self)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let zero = Q::zero();
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&zero) + rhs.0.get(i).unwrap_or(&zero)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly) -> Result<Poly> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Poly::default());
        }
        if self.degree() + rhs.degree() > MAX_DEGREE {
            return Err(Error::DegreeOverflow(self.degree() + rhs.degree()));
        }
        let mut out = vec![Q::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out).check()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; `rhs` must be nonzero.
    pub fn div_rem(&self, rhs: &Poly) -> Result<(Poly, Poly)> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.0.clone();
        let d = rhs.degree();
        let lead = rhs.leading();
        if self.0.len() < rhs.0.len() {
            return Ok((Poly::default(), self.clone()));
        }
        let mut quot = vec![Q::zero(); self.0.len() - d];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + d] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * b);
            }
            quot[i] = c;
        }
        rem.truncate(d);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.leading()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (deg, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        let a = c.abs();
        match deg {
            0 => write!(f, "{a}")?,
            _ => {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                f.write_str("x")?;
                if deg > 1 {
                    write!(f, "^{deg}")?;
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self)
    }
}

/// Element of ℚ(x) in lowest terms with a monic denominator.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
    cfg: Arc<FieldConfig>,
}

impl RatFunc {
    pub fn new(cfg: &Arc<FieldConfig>, num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { num, den: Poly::one(), cfg: cfg.clone() });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead = den.leading();
        Ok(RatFunc { num: num.scale(&(Q::one() / &lead)), den: den.monic(), cfg: cfg.clone() })
    }

    /// The distinguished infinite element `x`.
    pub fn x(cfg: &Arc<FieldConfig>) -> RatFunc {
        RatFunc { num: Poly::x(), den: Poly::one(), cfg: cfg.clone() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0
    }

    /// `deg(num) - deg(den)`.
    pub fn degree_gap(&self) -> i64 {
        self.num.degree() as i64 - self.den.degree() as i64
    }

    /// Sign at infinity: the sign of the leading numerator coefficient
    /// (the denominator is monic).
    pub fn signum(&self) -> i32 {
        self.num.leading().signum()
    }

    pub fn rf_add(&self, rhs: &RatFunc) -> Result<RatFunc> {
        let num = self.num.mul(&rhs.den)?.add(&rhs.num.mul(&self.den)?);
        RatFunc::new(&self.cfg, num, self.den.mul(&rhs.den)?)
    }

    pub fn rf_neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone(), cfg: self.cfg.clone() }
    }

    pub fn rf_sub(&self, rhs: &RatFunc) -> Result<RatFunc> {
        self.rf_add(&rhs.rf_neg())
    }

    pub fn rf_mul(&self, rhs: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(&self.cfg, self.num.mul(&rhs.num)?, self.den.mul(&rhs.den)?)
    }

    pub fn rf_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(&self.cfg, self.num.mul(&rhs.den)?, self.den.mul(&rhs.num)?)
    }

    pub fn rf_cmp(&self, rhs: &RatFunc) -> Result<Ordering> {
        Ok(self.rf_sub(rhs)?.signum().cmp(&0))
    }

    /// Constants go through numeric evaluation; everything else has no
    /// extension of `f`.
    pub fn rf_transcendental(&self, f: Func) -> Result<RatFunc> {
        if f == Func::Abs {
            return Ok(if self.signum() < 0 { self.rf_neg() } else { self.clone() });
        }
        if !self.is_constant() {
            return Err(Error::NoTransfer(format!(
                "{}({self}) is undefined: rational functions ordered at infinity carry no {} and admit no transfer principle",
                f.name(),
                f.name()
            )));
        }
        let v = Real::new(self.num.leading(), &self.cfg).apply(f)?;
        Ok(RatFunc::constant(&self.cfg, v.value()))
    }

    /// Value at a rational point.
    pub fn eval_at(&self, x: &Q) -> Result<Q> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &RatFunc) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi = |p: &Poly| p.0.iter().filter(|c| !c.is_zero()).count() > 1;
        if self.den.degree() == 0 {
            return write!(f, "{}", self.num);
        }
        if multi(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if multi(&self.den) {
            write!(f, " / ({})", self.den)
        } else {
            write!(f, " / {}", self.den)
        }
    }
}

impl Backend for RatFunc {
    const NAME: &'static str = "ratfunc";

    fn config(&self) -> &Arc<FieldConfig> {
        &self.cfg
    }

    fn constant(cfg: &Arc<FieldConfig>, q: &Q) -> Self {
        RatFunc { num: Poly::constant(q.clone()), den: Poly::one(), cfg: cfg.clone() }
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        self.rf_add(rhs)
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        self.rf_sub(rhs)
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        self.rf_mul(rhs)
    }

    fn neg(&self) -> Self {
        self.rf_neg()
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        self.rf_div(rhs)
    }

    fn root(&self, k: u32) -> Result<Self> {
        if !self.is_constant() {
            return Err(Error::NoTransfer(format!(
                "root of index {k} of {self}: the field of rational functions is not real closed"
            )));
        }
        let v = Real::new(self.num.leading(), &self.cfg).root(k)?;
        Ok(RatFunc::constant(&self.cfg, v.value()))
    }

    fn apply(&self, f: Func) -> Result<Self> {
        self.rf_transcendental(f)
    }

    fn classify(&self) -> Result<Classification> {
        if self.is_zero() {
            return Ok(Classification::ZERO);
        }
        let tag = match self.degree_gap().signum() {
            1 => Tag::Infinite,
            0 => Tag::Appreciable,
            _ => Tag::Infinitesimal,
        };
        Ok(Classification::new(tag, Sign::of(self.signum())))
    }

    fn st(&self) -> Result<Q> {
        match self.degree_gap().signum() {
            1 => Err(Error::NotFinite(self.to_string())),
            0 => Ok(self.num.leading()),
            _ => Ok(Q::zero()),
        }
    }

    fn as_standard_integer(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.is_constant() {
            self.num.leading().to_i64()
        } else {
            None
        }
    }
}
