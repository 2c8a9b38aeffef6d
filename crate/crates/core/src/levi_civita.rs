//! Truncated Levi-Civita numbers.
//!
//! A number is a finite sum `Σ c_i · eps^(q_i)` with rational exponents in
//! increasing order, where `eps` is a fixed positive infinitesimal. The first
//! (smallest) exponent decides sign and magnitude class, so the field is
//! ordered and fully decidable. `eps^(-1)` is infinite.
//!
//! Products and series keep the `truncation_order` smallest exponents. Each
//! number also records a *horizon*: every coefficient with exponent below
//! it is exact (up to the precision of materialized constants); terms at or
//! beyond the horizon were lost to truncation. Numbers built from exact
//! monomials have no horizon.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::{real, Backend, Classification, ExactRational, FieldConfig, Func, Sign, Tag};

type Q = ExactRational;

#[derive(Clone, Debug)]
pub struct LcNumber {
    terms: Vec<(Q, Q)>,
    horizon: Option<Q>,
    cfg: Arc<FieldConfig>,
}

fn min_horizon(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LcNumber {
    pub fn zero(cfg: &Arc<FieldConfig>) -> LcNumber {
        LcNumber { terms: Vec::new(), horizon: None, cfg: cfg.clone() }
    }

    /// `coefficient · eps^exponent`.
    pub fn monomial(cfg: &Arc<FieldConfig>, coefficient: Q, exponent: Q) -> LcNumber {
        LcNumber::from_map(cfg, BTreeMap::from([(exponent, coefficient)]), None)
    }

    /// The positive infinitesimal `eps`.
    pub fn eps(cfg: &Arc<FieldConfig>) -> LcNumber {
        LcNumber::monomial(cfg, Q::one(), Q::one())
    }

    /// Builds a number from `(exponent, coefficient)` pairs in any order;
    /// repeated exponents are summed.
    pub fn from_terms(cfg: &Arc<FieldConfig>, terms: impl IntoIterator<Item = (Q, Q)>) -> LcNumber {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(Q::zero);
            *entry = &*entry + &c;
        }
        LcNumber::from_map(cfg, map, None)
    }

    fn from_map(cfg: &Arc<FieldConfig>, map: BTreeMap<Q, Q>, horizon: Option<Q>) -> LcNumber {
        let bits = cfg.precision_bits();
        let limit = cfg.truncation_order;
        let mut terms = Vec::with_capacity(limit.min(map.len()));
        let mut horizon = horizon;
        for (e, c) in map {
            if c.is_zero() {
                continue;
            }
            if matches!(&horizon, Some(h) if e >= *h) {
                break;
            }
            if terms.len() == limit {
                horizon = Some(e);
                break;
            }
            terms.push((e, c.tame(bits)));
        }
        LcNumber { terms, horizon, cfg: cfg.clone() }
    }

    pub fn terms(&self) -> &[(Q, Q)] {
        &self.terms
    }

    /// Exponent below which every retained coefficient is exact; `None`
    /// when nothing was truncated.
    pub fn horizon(&self) -> Option<&Q> {
        self.horizon.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent, or the horizon for a number with no known terms.
    fn valuation(&self) -> Option<Q> {
        self.terms.first().map(|(e, _)| e.clone()).or_else(|| self.horizon.clone())
    }

    pub fn leading(&self) -> Option<&(Q, Q)> {
        self.terms.first()
    }

    pub fn coefficient(&self, exponent: &Q) -> Q {
        self.terms.iter().find(|(e, _)| e == exponent).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Same number under a different configuration (re-truncated).
    pub fn rehome(&self, cfg: &Arc<FieldConfig>) -> LcNumber {
        LcNumber::from_map(cfg, self.terms.iter().cloned().collect(), self.horizon.clone())
    }

    /// Largest coefficient magnitude.
    pub fn max_coefficient(&self) -> Q {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }

    pub fn lc_add(&self, rhs: &LcNumber) -> LcNumber {
        let mut map: BTreeMap<Q, Q> = self.terms.iter().cloned().collect();
        for (e, c) in &rhs.terms {
            let entry = map.entry(e.clone()).or_insert_with(Q::zero);
            *entry = &*entry + c;
        }
        let h = min_horizon(self.horizon.clone(), rhs.horizon.clone());
        LcNumber::from_map(&self.cfg, map, h)
    }

    pub fn lc_neg(&self) -> LcNumber {
        LcNumber {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            horizon: self.horizon.clone(),
            cfg: self.cfg.clone(),
        }
    }

    pub fn lc_sub(&self, rhs: &LcNumber) -> LcNumber {
        self.lc_add(&rhs.lc_neg())
    }

    pub fn lc_mul(&self, rhs: &LcNumber) -> LcNumber {
        let h = match (self.valuation(), rhs.valuation()) {
            (Some(va), Some(vb)) => {
                min_horizon(self.horizon.as_ref().map(|h| h + &vb), rhs.horizon.as_ref().map(|h| h + &va))
            }
            // an exact zero factor
            _ => None,
        };
        if (self.terms.is_empty() && self.horizon.is_none()) || (rhs.terms.is_empty() && rhs.horizon.is_none()) {
            return LcNumber::zero(&self.cfg);
        }
        let mut map: BTreeMap<Q, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if matches!(&h, Some(h) if e >= *h) {
                    break;
                }
                let entry = map.entry(e).or_insert_with(Q::zero);
                *entry = &*entry + &(ca * cb);
            }
        }
        LcNumber::from_map(&self.cfg, map, h)
    }

    pub fn lc_div(&self, rhs: &LcNumber) -> Result<LcNumber> {
        Ok(self.lc_mul(&rhs.inverse()?))
    }

    /// Splits a nonzero number as `c · eps^e · (1 + u)` with `u`
    /// infinitesimal.
    fn factor(&self) -> Option<(Q, Q, LcNumber)> {
        let (e, c) = self.terms.first()?.clone();
        let rest = self.terms[1..].iter().map(|(ei, ci)| (ei - &e, ci / &c)).collect::<BTreeMap<_, _>>();
        let h = self.horizon.as_ref().map(|h| h - &e);
        Some((c, e, LcNumber::from_map(&self.cfg, rest, h)))
    }

    /// `Σ coeffs[j] · u^j` for infinitesimal `u`, with the horizon lowered to
    /// `len · val(u)` to account for the dropped tail.
    fn series(&self, coeffs: &[Q]) -> LcNumber {
        let u = self;
        let cfg = &self.cfg;
        let mut acc = LcNumber::monomial(cfg, coeffs.last().cloned().unwrap_or_default(), Q::zero());
        for c in coeffs.iter().rev().skip(1) {
            acc = acc.lc_mul(u).lc_add(&LcNumber::monomial(cfg, c.clone(), Q::zero()));
        }
        match u.valuation() {
            Some(v) if !(u.terms.is_empty() && u.horizon.is_none()) => {
                let tail = &v * &Q::from(coeffs.len() as i64);
                let h = min_horizon(acc.horizon.clone(), Some(tail));
                LcNumber::from_map(cfg, acc.terms.into_iter().collect(), h)
            }
            _ => acc,
        }
    }

    fn series_len(&self) -> usize {
        self.cfg.truncation_order.max(2)
    }

    pub fn inverse(&self) -> Result<LcNumber> {
        let (c, e, u) = self.factor().ok_or(Error::DivisionByZero)?;
        let n = self.series_len();
        // 1/(1+u) = Σ (-1)^j u^j
        let coeffs: Vec<Q> = (0..n).map(|j| if j % 2 == 0 { Q::one() } else { -Q::one() }).collect();
        let s = u.series(&coeffs);
        Ok(s.lc_mul(&LcNumber::monomial(&self.cfg, c.recip()?, -e)))
    }

    /// Positive `k`-th root by the binomial series on `1 + u`.
    pub fn lc_root(&self, k: u32) -> Result<LcNumber> {
        if k == 0 {
            return Err(Error::Domain("zeroth root".into()));
        }
        let Some((c, e, u)) = self.factor() else {
            return Ok(self.clone());
        };
        if k.is_multiple_of(2) && !c.is_positive() {
            return Err(Error::NegativeLeading(format!("even root of {self}")));
        }
        let kq = Q::from(k as i64);
        let lead = real::root(&c, k, self.cfg.digits())?;
        let alpha = Q::one() / &kq;
        let n = self.series_len();
        let mut coeffs = Vec::with_capacity(n);
        let mut binom = Q::one();
        for j in 0..n {
            coeffs.push(binom.clone());
            let jq = Q::from(j as i64);
            binom = binom * (&alpha - &jq) / (&jq + &Q::one());
        }
        let s = u.series(&coeffs);
        Ok(s.lc_mul(&LcNumber::monomial(&self.cfg, lead, &e / &kq)))
    }

    /// `f(a + u) = Σ f^(j)(a)/j! · u^j` with `a` the standard part.
    pub fn lc_transcendental(&self, f: Func) -> Result<LcNumber> {
        match f {
            Func::Sqrt => return self.lc_root(2),
            Func::Abs => {
                return Ok(match self.terms.first() {
                    Some((_, c)) if c.is_negative() => self.lc_neg(),
                    _ => self.clone(),
                })
            }
            _ => {}
        }
        if let Some((e, _)) = self.terms.first() {
            if e.is_negative() {
                return Err(Error::NotFinite(format!("{}({self}) at an infinite argument", f.name())));
            }
        }
        if matches!(&self.horizon, Some(h) if !h.is_positive()) {
            return Err(Error::Undecided(format!("standard part of {self} lies beyond the truncation horizon")));
        }
        let a = self.coefficient(&Q::zero());
        let u = self.lc_sub(&LcNumber::monomial(&self.cfg, a.clone(), Q::zero()));
        let n = if u.is_zero() && u.horizon.is_none() { 1 } else { self.series_len() };
        let d = self.cfg.digits();
        let mut factorial = Q::one();
        let mut coeffs = Vec::with_capacity(n);
        match f {
            Func::Exp => {
                let ea = real::exp(&a, d)?;
                for j in 0..n {
                    if j > 0 {
                        factorial = factorial * Q::from(j as i64);
                    }
                    coeffs.push(&ea / &factorial);
                }
            }
            Func::Sin | Func::Cos => {
                let (s, c) = real::sin_cos(&a, d)?;
                let cycle = match f {
                    Func::Sin => [s.clone(), c.clone(), -&s, -&c],
                    _ => [c.clone(), -&s, -&c, s.clone()],
                };
                for j in 0..n {
                    if j > 0 {
                        factorial = factorial * Q::from(j as i64);
                    }
                    coeffs.push(&cycle[j % 4] / &factorial);
                }
            }
            Func::Log => {
                if !a.is_positive() {
                    return Err(Error::Domain(format!("log at standard part {a}")));
                }
                coeffs.push(real::ln(&a, d)?);
                let mut a_pow = Q::one();
                for j in 1..n {
                    a_pow = a_pow * &a;
                    let sign = if j % 2 == 1 { Q::one() } else { -Q::one() };
                    coeffs.push(sign / (Q::from(j as i64) * &a_pow));
                }
            }
            Func::Sqrt | Func::Abs => unreachable!(),
        }
        Ok(u.series(&coeffs))
    }

    pub fn lc_cmp(&self, rhs: &LcNumber) -> Ordering {
        match self.lc_sub(rhs).terms.first() {
            None => Ordering::Equal,
            Some((_, c)) => c.signum().cmp(&0),
        }
    }

    /// Display with coefficients as decimals.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        self.render(|c| c.to_decimal(digits))
    }

    /// Machine format: `[[exponent, coefficient], ...]` as strings.
    pub fn to_pairs(&self) -> Vec<[String; 2]> {
        self.terms.iter().map(|(e, c)| [e.to_string(), c.to_string()]).collect()
    }

    pub fn from_pairs(cfg: &Arc<FieldConfig>, pairs: &[[String; 2]]) -> Result<LcNumber> {
        let terms = pairs.iter().map(|[e, c]| Ok((e.parse::<Q>()?, c.parse::<Q>()?))).collect::<Result<Vec<_>>>()?;
        Ok(LcNumber::from_terms(cfg, terms))
    }

    fn render(&self, coef: impl Fn(&Q) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let magnitude = coef(&c.abs());
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&magnitude);
            if !e.is_zero() {
                out.push_str(&format!("·eps^({e})"));
            }
        }
        out
    }
}

impl PartialEq for LcNumber {
    fn eq(&self, other: &LcNumber) -> bool {
        self.terms == other.terms
    }
}

impl PartialOrd for LcNumber {
    fn partial_cmp(&self, other: &LcNumber) -> Option<Ordering> {
        Some(self.lc_cmp(other))
    }
}

impl fmt::Display for LcNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|c| c.to_string()))
    }
}

impl Backend for LcNumber {
    const NAME: &'static str = "lc";

    fn config(&self) -> &Arc<FieldConfig> {
        &self.cfg
    }

    fn constant(cfg: &Arc<FieldConfig>, q: &Q) -> Self {
        LcNumber::monomial(cfg, q.clone(), Q::zero())
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(self.lc_add(rhs))
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self.lc_sub(rhs))
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self.lc_mul(rhs))
    }

    fn neg(&self) -> Self {
        self.lc_neg()
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        self.lc_div(rhs)
    }

    fn root(&self, k: u32) -> Result<Self> {
        self.lc_root(k)
    }

    fn apply(&self, f: Func) -> Result<Self> {
        self.lc_transcendental(f)
    }

    fn classify(&self) -> Result<Classification> {
        Ok(match self.terms.first() {
            None => Classification::ZERO,
            Some((e, c)) => {
                let tag = match e.signum() {
                    -1 => Tag::Infinite,
                    0 => Tag::Appreciable,
                    _ => Tag::Infinitesimal,
                };
                Classification::new(tag, Sign::of(c.signum()))
            }
        })
    }

    fn st(&self) -> Result<Q> {
        match self.terms.first() {
            Some((e, _)) if e.is_negative() => Err(Error::NotFinite(self.to_string())),
            _ => Ok(self.coefficient(&Q::zero())),
        }
    }

    fn as_standard_integer(&self) -> Option<i64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => c.to_i64(),
            _ => None,
        }
    }
}
