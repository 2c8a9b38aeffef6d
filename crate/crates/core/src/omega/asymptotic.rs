//! Asymptotic expansions in the index `n`.
//!
//! An expansion is a finite sum `Σ c · n^p · log(n)^q`, most dominant scale
//! first, plus an optional error scale: everything dropped is `O(n^p log^q)`
//! at that scale, which is strictly smaller than every retained term. When a
//! closed-form rule expands with at least one retained term, the leading
//! term fixes the eventual sign, which is what certifies dominance.
//!
//! Shapes with no expansion of this kind (`exp(n)`, `log(log(n))`, `sin(n)`,
//! `(-1)^n`, cancellation down to the error term) fail with `Unsupported`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::{real, Backend, Classification, ExactRational, FieldConfig, Func, Sign, Tag};

type Q = ExactRational;

/// Number of retained terms.
const TERMS: usize = 10;

/// `n^p · log(n)^q`, ordered by growth (lexicographic on `(p, q)`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scale {
    pub p: Q,
    pub q: Q,
}

impl Scale {
    pub fn new(p: Q, q: Q) -> Scale {
        Scale { p, q }
    }

    pub fn one() -> Scale {
        Scale::new(Q::zero(), Q::zero())
    }

    fn mul(&self, o: &Scale) -> Scale {
        Scale::new(&self.p + &o.p, &self.q + &o.q)
    }

    fn div(&self, o: &Scale) -> Scale {
        Scale::new(&self.p - &o.p, &self.q - &o.q)
    }

    fn times(&self, k: &Q) -> Scale {
        Scale::new(&self.p * k, &self.q * k)
    }

    fn is_unit(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.p.is_zero() {
            parts.push(if self.p.is_one() { "n".to_string() } else { format!("n^({})", self.p) });
        }
        if !self.q.is_zero() {
            parts.push(if self.q.is_one() { "log(n)".to_string() } else { format!("log(n)^({})", self.q) });
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

#[derive(Clone, Debug)]
pub struct Asym {
    terms: Vec<(Scale, Q)>,
    error: Option<Scale>,
    /// False once a materialized constant entered a coefficient.
    exact: bool,
    cfg: Arc<FieldConfig>,
}

fn max_error(a: Option<Scale>, b: Option<Scale>) -> Option<Scale> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn unsupported(what: impl fmt::Display) -> Error {
    Error::Unsupported(format!("no power-log expansion for {what}"))
}

impl Asym {
    /// The index `n`.
    pub fn n(cfg: &Arc<FieldConfig>) -> Asym {
        Asym::monomial(cfg, Q::one(), Scale::new(Q::one(), Q::zero()), true)
    }

    fn monomial(cfg: &Arc<FieldConfig>, c: Q, s: Scale, exact: bool) -> Asym {
        Asym::from_map(cfg, BTreeMap::from([(s, c)]), None, exact)
    }

    fn from_map(cfg: &Arc<FieldConfig>, map: BTreeMap<Scale, Q>, error: Option<Scale>, exact: bool) -> Asym {
        let tol = cfg.coefficient_tolerance();
        let bits = cfg.precision_bits();
        let mut error = error;
        let mut terms: Vec<(Scale, Q)> = Vec::new();
        let mut biggest = Q::one();
        for (s, c) in map.into_iter().rev() {
            if c.is_zero() {
                continue;
            }
            if matches!(&error, Some(h) if s <= *h) {
                break;
            }
            // an inexact coefficient indistinguishable from zero: its sign is unknown
            if !exact && c.abs() < &tol * &biggest {
                error = max_error(error, Some(s));
                break;
            }
            if terms.len() == TERMS {
                error = max_error(error, Some(s));
                break;
            }
            if c.abs() > biggest {
                biggest = c.abs();
            }
            terms.push((s, c.tame(bits)));
        }
        Asym { terms, error, exact, cfg: cfg.clone() }
    }

    fn rebuild(&self, terms: impl IntoIterator<Item = (Scale, Q)>, error: Option<Scale>, exact: bool) -> Asym {
        Asym::from_map(&self.cfg, terms.into_iter().collect(), error, exact)
    }

    pub fn terms(&self) -> &[(Scale, Q)] {
        &self.terms
    }

    pub fn error_scale(&self) -> Option<&Scale> {
        self.error.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn leading(&self) -> Option<&(Scale, Q)> {
        self.terms.first()
    }

    fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.error.is_none()
    }

    /// Scale of the largest part: leading term or, failing that, the error.
    fn magnitude(&self) -> Option<Scale> {
        self.terms.first().map(|(s, _)| s.clone()).or_else(|| self.error.clone())
    }

    fn coefficient(&self, s: &Scale) -> Q {
        self.terms.iter().find(|(t, _)| t == s).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    fn add_asym(&self, rhs: &Asym) -> Asym {
        let mut map: BTreeMap<Scale, Q> = self.terms.iter().cloned().collect();
        for (s, c) in &rhs.terms {
            let e = map.entry(s.clone()).or_insert_with(Q::zero);
            *e = &*e + c;
        }
        self.rebuild(map, max_error(self.error.clone(), rhs.error.clone()), self.exact && rhs.exact)
    }

    fn neg_asym(&self) -> Asym {
        Asym {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect(),
            error: self.error.clone(),
            exact: self.exact,
            cfg: self.cfg.clone(),
        }
    }

    fn mul_asym(&self, rhs: &Asym) -> Asym {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return self.rebuild([], None, true);
        }
        let (ma, mb) = (self.magnitude().expect("nonzero"), rhs.magnitude().expect("nonzero"));
        let error = max_error(self.error.as_ref().map(|h| h.mul(&mb)), rhs.error.as_ref().map(|h| h.mul(&ma)));
        let mut map: BTreeMap<Scale, Q> = BTreeMap::new();
        for (sa, ca) in &self.terms {
            for (sb, cb) in &rhs.terms {
                let s = sa.mul(sb);
                if matches!(&error, Some(h) if s <= *h) {
                    continue;
                }
                let e = map.entry(s).or_insert_with(Q::zero);
                *e = &*e + &(ca * cb);
            }
        }
        self.rebuild(map, error, self.exact && rhs.exact)
    }

    fn scaled(&self, c: &Q, s: &Scale, exact: bool) -> Asym {
        self.mul_asym(&Asym::monomial(&self.cfg, c.clone(), s.clone(), exact))
    }

    /// `c · s · (1 + u)` with `u` tending to zero.
    fn factor(&self) -> Result<(Q, Scale, Asym)> {
        let (s, c) = self.terms.first().cloned().ok_or_else(|| unsupported("a cancelled leading term"))?;
        let rest: Vec<(Scale, Q)> = self.terms[1..].iter().map(|(t, d)| (t.div(&s), d / &c)).collect();
        let error = self.error.as_ref().map(|h| h.div(&s));
        let u = self.rebuild(rest, error, self.exact);
        Ok((c, s, u))
    }

    /// `Σ coeffs[j] · u^j` for `u → 0`.
    fn series(&self, coeffs: &[Q], exact: bool) -> Asym {
        let cfg = &self.cfg;
        let mut acc = Asym::monomial(cfg, coeffs.last().cloned().unwrap_or_default(), Scale::one(), exact);
        for c in coeffs.iter().rev().skip(1) {
            acc = acc.mul_asym(self).add_asym(&Asym::monomial(cfg, c.clone(), Scale::one(), exact));
        }
        match self.magnitude() {
            Some(m) => {
                let tail = m.times(&Q::from(coeffs.len() as i64));
                let error = max_error(acc.error.clone(), Some(tail));
                acc.rebuild(acc.terms.clone(), error, acc.exact)
            }
            None => acc,
        }
    }

    /// Splits into the part growing without bound, the constant, and the
    /// part tending to zero.
    fn split(&self) -> (Asym, Q, Asym) {
        let unit = Scale::one();
        let big = self.terms.iter().filter(|(s, _)| *s > unit).cloned();
        let small = self.terms.iter().filter(|(s, _)| *s < unit).cloned();
        (
            self.rebuild(big, None, self.exact),
            self.coefficient(&unit),
            self.rebuild(small, self.error.clone(), self.exact),
        )
    }

    fn require_vanishing_error(&self, what: &str) -> Result<()> {
        match &self.error {
            Some(h) if *h >= Scale::one() => Err(unsupported(format!("{what} of {self}"))),
            _ => Ok(()),
        }
    }

    fn taylor(&self, f: Func) -> Result<Asym> {
        let d = self.cfg.digits();
        let (big, a, u) = self.split();
        self.require_vanishing_error(f.name())?;
        let n = if u.is_exact_zero() { 1 } else { TERMS };
        let mut coeffs = Vec::with_capacity(n);
        let mut factorial = Q::one();
        let mut exact = self.exact;
        let mut prefix = Asym::monomial(&self.cfg, Q::one(), Scale::one(), true);
        match f {
            Func::Exp => {
                // n^a factor from an a·log(n) summand
                if !big.is_exact_zero() {
                    match big.terms.as_slice() {
                        [(s, c)] if s.p.is_zero() && s.q.is_one() => {
                            prefix = Asym::monomial(&self.cfg, Q::one(), Scale::new(c.clone(), Q::zero()), big.exact);
                        }
                        _ => return Err(unsupported(format!("exp({self})"))),
                    }
                }
                let ea = real::exp(&a, d)?;
                exact &= a.is_zero();
                for j in 0..n {
                    if j > 0 {
                        factorial = factorial * Q::from(j as i64);
                    }
                    coeffs.push(&ea / &factorial);
                }
            }
            Func::Sin | Func::Cos => {
                if !big.is_exact_zero() {
                    return Err(unsupported(format!("{}({self})", f.name())));
                }
                let (s, c) = real::sin_cos(&a, d)?;
                exact &= a.is_zero();
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
            _ => unreachable!("taylor handles exp, sin, cos"),
        }
        Ok(prefix.mul_asym(&u.series(&coeffs, exact)))
    }

    fn log(&self) -> Result<Asym> {
        let (c, s, u) = self.factor()?;
        if !c.is_positive() {
            return Err(Error::Domain(format!("log of eventually negative {self}")));
        }
        if !s.q.is_zero() {
            return Err(unsupported(format!("log({self})")));
        }
        u.require_vanishing_error("log")?;
        let n = if u.is_exact_zero() { 1 } else { TERMS };
        let mut coeffs = vec![real::ln(&c, self.cfg.digits())?];
        for j in 1..n {
            let sign = if j % 2 == 1 { Q::one() } else { -Q::one() };
            coeffs.push(sign / Q::from(j as i64));
        }
        let exact = self.exact && c.is_one();
        let log_n = Asym::monomial(&self.cfg, s.p.clone(), Scale::new(Q::zero(), Q::one()), self.exact);
        Ok(u.series(&coeffs, exact).add_asym(&log_n))
    }

    fn root_asym(&self, k: u32) -> Result<Asym> {
        if self.is_exact_zero() {
            return Ok(self.clone());
        }
        let (c, s, u) = self.factor()?;
        if k.is_multiple_of(2) && c.is_negative() {
            return Err(Error::Domain(format!("even root of eventually negative {self}")));
        }
        let kq = Q::from(k as i64);
        let lead = real::root(&c, k, self.cfg.digits())?;
        let exact = self.exact && lead.powi(k as i64)? == c;
        let alpha = Q::one() / &kq;
        let mut coeffs = Vec::with_capacity(TERMS);
        let mut binom = Q::one();
        for j in 0..TERMS {
            coeffs.push(binom.clone());
            let jq = Q::from(j as i64);
            binom = binom * (&alpha - &jq) / (&jq + &Q::one());
        }
        Ok(u.series(&coeffs, self.exact).scaled(&lead, &s.times(&alpha), exact))
    }

    fn inverse(&self) -> Result<Asym> {
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        let (c, s, u) = self.factor()?;
        let coeffs: Vec<Q> = (0..TERMS).map(|j| if j % 2 == 0 { Q::one() } else { -Q::one() }).collect();
        Ok(u.series(&coeffs, self.exact).scaled(&c.recip()?, &Scale::one().div(&s), self.exact))
    }

    /// Name of the dominance pattern, for reports.
    pub fn describe(&self) -> String {
        match self.terms.first() {
            Some((s, c)) => format!("power-log expansion, leading term {}·{s}", c.to_decimal(6)),
            None => "power-log expansion (all terms cancelled)".into(),
        }
    }
}

impl fmt::Display for Asym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() && self.error.is_none() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> =
            self.terms.iter().map(|(s, c)| if s.is_unit() { c.to_string() } else { format!("{c}·{s}") }).collect();
        if let Some(h) = &self.error {
            parts.push(format!("O({h})"));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Backend for Asym {
    const NAME: &'static str = "asymptotic";

    fn config(&self) -> &Arc<FieldConfig> {
        &self.cfg
    }

    fn constant(cfg: &Arc<FieldConfig>, q: &Q) -> Self {
        Asym::monomial(cfg, q.clone(), Scale::one(), true)
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(self.add_asym(rhs))
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul_asym(rhs))
    }

    fn neg(&self) -> Self {
        self.neg_asym()
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul_asym(&rhs.inverse()?))
    }

    fn root(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("zeroth root".into()));
        }
        self.root_asym(k)
    }

    /// Integer exponents multiply out; anything else is `exp(b · log a)`.
    fn pow_by(&self, exponent: &Self) -> Result<Self> {
        match exponent.as_standard_integer() {
            Some(e) => self.powi(e),
            None => exponent.mul_asym(&self.log()?).taylor(Func::Exp),
        }
    }

    fn apply(&self, f: Func) -> Result<Self> {
        match f {
            Func::Exp | Func::Sin | Func::Cos => self.taylor(f),
            Func::Log => self.log(),
            Func::Sqrt => self.root_asym(2),
            Func::Abs => match self.terms.first() {
                Some((_, c)) if c.is_negative() => Ok(self.neg_asym()),
                Some(_) => Ok(self.clone()),
                None if self.is_exact_zero() => Ok(self.clone()),
                None => Err(unsupported(format!("abs({self})"))),
            },
        }
    }

    fn classify(&self) -> Result<Classification> {
        if self.is_exact_zero() {
            return Ok(Classification::ZERO);
        }
        let (s, c) = self.terms.first().ok_or_else(|| unsupported("a cancelled leading term"))?;
        let tag = match s.cmp(&Scale::one()) {
            std::cmp::Ordering::Greater => Tag::Infinite,
            std::cmp::Ordering::Equal => Tag::Appreciable,
            std::cmp::Ordering::Less => Tag::Infinitesimal,
        };
        Ok(Classification::new(tag, Sign::of(c.signum())))
    }

    fn st(&self) -> Result<Q> {
        let unit = Scale::one();
        match self.magnitude() {
            None => Ok(Q::zero()),
            Some(m) if m > unit => match self.terms.first() {
                Some(_) => Err(Error::NotFinite(self.to_string())),
                None => Err(unsupported(format!("the standard part of {self}"))),
            },
            Some(_) => {
                if matches!(&self.error, Some(h) if *h >= unit) {
                    return Err(unsupported(format!("the standard part of {self}")));
                }
                Ok(self.coefficient(&unit))
            }
        }
    }

    fn as_standard_integer(&self) -> Option<i64> {
        if self.is_exact_zero() {
            return Some(0);
        }
        match self.terms.as_slice() {
            [(s, c)] if s.is_unit() && self.error.is_none() && self.exact => c.to_i64(),
            _ => None,
        }
    }
}

/// Expands a closed-form rule in `n`.
pub fn expand(rule: &crate::expr::Expr, cfg: &Arc<FieldConfig>) -> Result<Asym> {
    use crate::expr::{eval, Binding};
    eval(rule, cfg, &Binding::n(Asym::n(cfg)))
}
