use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::asymptotic::{expand, Asym};
use super::hypernat::HyperNat;
use super::limit::{self, LimitEstimate, Profile};
use crate::error::{Error, Result};
use crate::expr::{eval, BinOp, Binding, Expr, Power, Var};
use crate::numeric::{Backend, Classification, ExactRational, FieldConfig, Func, Real, Tag};
use crate::ratfunc::RatFunc;

type Q = ExactRational;

/// Largest number of summands or factors evaluated for one term of a
/// hyperfinite sum or product.
pub const SUM_BUDGET: u64 = 1 << 16;

/// Largest number of tail terms summed for one remainder term.
pub const TAIL_BUDGET: u64 = 1 << 16;

#[derive(Debug)]
pub(crate) enum Rule {
    /// A closed form in `n`, evaluated directly.
    Closed(Expr),
    Arith(BinOp, HyperSeq, HyperSeq),
    Neg(HyperSeq),
    Powi(HyperSeq, i64),
    PowSeq(HyperSeq, HyperSeq),
    Root(HyperSeq, u32),
    Func(Func, HyperSeq),
    /// `f(x)` with `x := a(n)`.
    Apply(Expr, HyperSeq),
    /// `Σ_{k=1}^{N(n)} term(k)`.
    Sum(Expr, HyperNat),
    /// `Π_{k=1}^{N(n)} term(k)`.
    Product(Expr, HyperNat),
    /// `Σ_{k>N(n)} term(k, x(n))`.
    Tail(Expr, HyperSeq, HyperNat),
    /// `base` with finitely many terms replaced.
    Patched(HyperSeq, BTreeMap<u64, Q>),
}

struct Inner {
    rule: Rule,
    closed: Option<Expr>,
    label: String,
    /// Evaluation failures of this node's own operation become 0 and are
    /// recorded instead of propagated.
    patching: bool,
    cache: Mutex<HashMap<u64, Q>>,
    exceptions: Mutex<BTreeSet<u64>>,
    /// Running `(count, value)` for sums and products, extended in place
    /// when the next requested count is larger.
    running: Mutex<Option<(u64, Q)>>,
    top: OnceLock<u32>,
    cfg: Arc<FieldConfig>,
}

impl fmt::Debug for Inner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HyperSeq").field("label", &self.label).finish()
    }
}

/// A sequence-model number: a term rule `n ↦ a(n)` for `n ≥ 1`, with
/// termwise arithmetic and comparison by eventual agreement.
///
/// Clones share the memo cache, which is internally synchronized.
#[derive(Clone, Debug)]
pub struct HyperSeq(Arc<Inner>);

/// What a sequence was recognized as, and what that implies.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub classification: Result<Classification>,
    /// True when a closed-form pattern (not sampling) produced the result.
    pub symbolic: bool,
    pub dominance_pattern: String,
    pub st: Result<StEstimate>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StEstimate {
    pub value: Q,
    /// Exact when derived from an exact rational-function pattern.
    pub exact: bool,
    /// Extrapolation error estimate for numeric limits.
    pub error: Q,
}

fn real(cfg: &Arc<FieldConfig>, q: Q) -> Real {
    Real::new(q, cfg)
}

fn index_real(cfg: &Arc<FieldConfig>, n: u64) -> Real {
    real(cfg, Q::from_integer(n))
}

/// Indices used for construction checks and sign scans: `1, 2, 3` and
/// `2^j - 1, 2^j, 2^j + 1` for `2 ≤ j ≤ top`.
pub fn probe_indices(top: u32) -> Vec<u64> {
    let mut set: BTreeSet<u64> = [1, 2, 3].into_iter().collect();
    for j in 2..=top {
        let p = 1u64 << j;
        set.extend([p - 1, p, p + 1]);
    }
    set.into_iter().collect()
}

/// `f` with `x` replaced by `with`, unless `x` occurs as an exponent and
/// `with` cannot stand there.
fn substitute_x(f: &Expr, with: &Expr) -> Option<Expr> {
    fn exponent_ok(e: &Expr, with: &Expr) -> bool {
        match e {
            Expr::Num(_) | Expr::Var(_) => true,
            Expr::Neg(a) | Expr::Call(_, a) => exponent_ok(a, with),
            Expr::Bin(_, a, b) => exponent_ok(a, with) && exponent_ok(b, with),
            Expr::Pow(a, p) => {
                let bad = *p == Power::Var(Var::X)
                    && !matches!(with, Expr::Var(_))
                    && !matches!(with, Expr::Num(q) if q.is_integer());
                !bad && exponent_ok(a, with)
            }
        }
    }
    exponent_ok(f, with).then(|| f.substitute(Var::X, with))
}

impl HyperSeq {
    fn build(cfg: &Arc<FieldConfig>, rule: Rule, closed: Option<Expr>, label: String, patching: bool) -> HyperSeq {
        HyperSeq(Arc::new(Inner {
            rule,
            closed,
            label,
            patching,
            cache: Mutex::new(HashMap::new()),
            exceptions: Mutex::new(BTreeSet::new()),
            running: Mutex::new(None),
            top: OnceLock::new(),
            cfg: cfg.clone(),
        }))
    }

    /// A user rule in `n`. It must evaluate at every probe index.
    pub fn from_expr(cfg: &Arc<FieldConfig>, rule: &Expr) -> Result<HyperSeq> {
        for v in [Var::X, Var::K] {
            if rule.contains(v) {
                return Err(Error::UnboundVariable(v.name().into()));
            }
        }
        let s = HyperSeq::build(cfg, Rule::Closed(rule.clone()), Some(rule.clone()), rule.to_string(), false);
        for n in probe_indices(s.top()) {
            s.term(n)?;
        }
        Ok(s)
    }

    pub fn parse(cfg: &Arc<FieldConfig>, text: &str) -> Result<HyperSeq> {
        HyperSeq::from_expr(cfg, &crate::expr::parse(text)?)
    }

    /// `⟨n⟩`.
    pub fn index(cfg: &Arc<FieldConfig>) -> HyperSeq {
        let e = Expr::var(Var::N);
        HyperSeq::build(cfg, Rule::Closed(e.clone()), Some(e), "n".into(), false)
    }

    pub fn constant_seq(cfg: &Arc<FieldConfig>, q: &Q) -> HyperSeq {
        let e = Expr::Num(q.clone());
        HyperSeq::build(cfg, Rule::Closed(e.clone()), Some(e.clone()), e.to_string(), false)
    }

    pub fn cfg(&self) -> &Arc<FieldConfig> {
        &self.0.cfg
    }

    /// Closed form in `n`, when the sequence has one.
    pub fn closed_form(&self) -> Option<&Expr> {
        self.0.closed.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    /// Indices whose value was patched to 0, across the whole rule tree.
    pub fn exception_set(&self) -> BTreeSet<u64> {
        let mut out = self.0.exceptions.lock().expect("exception lock").clone();
        let mut add = |s: &HyperSeq| out.extend(s.exception_set());
        match &self.0.rule {
            Rule::Closed(_) => {}
            Rule::Arith(_, a, b) | Rule::PowSeq(a, b) => {
                add(a);
                add(b);
            }
            Rule::Neg(a) | Rule::Powi(a, _) | Rule::Root(a, _) | Rule::Func(_, a) | Rule::Apply(_, a) => add(a),
            Rule::Sum(_, nat) | Rule::Product(_, nat) => add(nat.seq()),
            Rule::Tail(_, x, nat) => {
                add(x);
                add(nat.seq());
            }
            Rule::Patched(base, _) => add(base),
        }
        out
    }

    /// Largest `j` such that the sequence is sampled at `2^j`.
    pub fn top(&self) -> u32 {
        *self.0.top.get_or_init(|| {
            let cap = self.0.cfg.cutoff_log2();
            match &self.0.rule {
                Rule::Closed(_) => cap,
                Rule::Arith(_, a, b) | Rule::PowSeq(a, b) => a.top().min(b.top()),
                Rule::Neg(a) | Rule::Powi(a, _) | Rule::Root(a, _) | Rule::Func(_, a) | Rule::Apply(_, a) => a.top(),
                Rule::Sum(_, nat) | Rule::Product(_, nat) => {
                    let mut j = 0;
                    while j < cap && matches!(nat.at((1u64 << (j + 1)) + 1), Ok(c) if c <= SUM_BUDGET) {
                        j += 1;
                    }
                    j
                }
                Rule::Tail(_, x, nat) => x.top().min(nat.seq().top()),
                Rule::Patched(base, _) => base.top(),
            }
        })
    }

    /// Term `n ≥ 1`, memoized.
    pub fn term(&self, n: u64) -> Result<Q> {
        if n == 0 {
            return Err(Error::Domain("sequence indices start at 1".into()));
        }
        if let Some(v) = self.0.cache.lock().expect("cache lock").get(&n) {
            return Ok(v.clone());
        }
        let v = match self.compute(n)? {
            Ok(v) => v,
            Err(e) if self.0.patching => {
                let _ = e;
                self.0.exceptions.lock().expect("exception lock").insert(n);
                Q::zero()
            }
            Err(e) => return Err(e),
        };
        self.0.cache.lock().expect("cache lock").insert(n, v.clone());
        Ok(v)
    }

    /// Outer error: a dependency failed. Inner error: this node's own
    /// operation failed (patchable).
    fn compute(&self, n: u64) -> Result<Result<Q>> {
        let cfg = &self.0.cfg;
        let r = |s: &HyperSeq| -> Result<Real> { Ok(real(cfg, s.term(n)?)) };
        Ok(match &self.0.rule {
            Rule::Closed(e) => eval::<Real>(e, cfg, &Binding::n(index_real(cfg, n))).map(Real::into_value),
            Rule::Arith(op, a, b) => {
                let (x, y) = (r(a)?, r(b)?);
                match op {
                    BinOp::Add => x.add(&y),
                    BinOp::Sub => x.sub(&y),
                    BinOp::Mul => x.mul(&y),
                    BinOp::Div => x.div(&y),
                }
                .map(Real::into_value)
            }
            Rule::Neg(a) => Ok(-a.term(n)?),
            Rule::Powi(a, e) => r(a)?.powi(*e).map(Real::into_value),
            Rule::PowSeq(a, b) => r(a)?.pow_by(&r(b)?).map(Real::into_value),
            Rule::Root(a, k) => {
                let x = r(a)?;
                if k % 2 == 0 && x.value().is_negative() {
                    Err(Error::Domain(format!("even root of {x}")))
                } else {
                    x.root(*k).map(Real::into_value)
                }
            }
            Rule::Func(f, a) => r(a)?.apply(*f).map(Real::into_value),
            Rule::Apply(f, a) => eval::<Real>(f, cfg, &Binding::x(r(a)?)).map(Real::into_value),
            Rule::Sum(term, nat) => self.running(n, term, nat, false),
            Rule::Product(term, nat) => self.running(n, term, nat, true),
            Rule::Tail(term, x, nat) => tail_sum(cfg, term, &r(x)?, nat.at(n)?),
            Rule::Patched(base, overrides) => match overrides.get(&n) {
                Some(v) => Ok(v.clone()),
                None => base.term(n),
            },
        })
    }

    fn running(&self, n: u64, term: &Expr, nat: &HyperNat, product: bool) -> Result<Q> {
        let cfg = &self.0.cfg;
        let count = nat.at(n)?;
        if count > SUM_BUDGET.saturating_mul(64) {
            return Err(Error::Unsupported(format!("{count} terms at index {n} exceed the evaluation budget")));
        }
        let uses_n = term.contains(Var::N);
        let unit = if product { Q::one() } else { Q::zero() };
        let mut guard = self.0.running.lock().expect("running lock");
        let (mut k, mut acc) = match guard.as_ref() {
            Some((c, v)) if !uses_n && *c <= count => (*c, v.clone()),
            _ => (0, unit),
        };
        let bits = cfg.precision_bits();
        let mut binding = Binding::default();
        if uses_n {
            binding = binding.with(Var::N, index_real(cfg, n));
        }
        while k < count {
            k += 1;
            let b = binding.clone().with(Var::K, index_real(cfg, k));
            let v = eval::<Real>(term, cfg, &b)
                .map_err(|e| Error::Domain(format!("term {k} of the hyperfinite operation at index {n}: {e}")))?
                .into_value();
            acc = if product { acc * v } else { acc + v }.tame(bits);
        }
        if !uses_n {
            *guard = Some((count, acc.clone()));
        }
        Ok(acc)
    }

    /// Applies a termwise operation whose failures are patched; failures
    /// in the sampled tail are fatal.
    fn patched_op(
        cfg: &Arc<FieldConfig>,
        rule: Rule,
        closed: Option<Expr>,
        label: String,
        fatal: impl Fn(String) -> Error,
    ) -> Result<HyperSeq> {
        let s = HyperSeq::build(cfg, rule, closed.map(|e| e.fold()), label, true);
        let top = s.top();
        for n in probe_indices(top) {
            s.term(n)?;
        }
        let from = 1u64 << (top / 2);
        let own = s.0.exceptions.lock().expect("exception lock").clone();
        if let Some(bad) = own.iter().find(|&&n| n >= from) {
            return Err(fatal(format!(
                "{} fails at sampled tail index {bad}; exceptions must be finitely many",
                s.label()
            )));
        }
        Ok(s)
    }

    pub fn hs_arith(op: BinOp, a: &HyperSeq, b: &HyperSeq) -> Result<HyperSeq> {
        let cfg = a.cfg();
        let closed = match (a.closed_form(), b.closed_form()) {
            (Some(x), Some(y)) => Some(Expr::bin(op, x.clone(), y.clone())),
            _ => None,
        };
        let label = format!("({}) {} ({})", a.label(), op.symbol(), b.label());
        let rule = Rule::Arith(op, a.clone(), b.clone());
        if op != BinOp::Div {
            return Ok(HyperSeq::build(cfg, rule, closed.map(|e| e.fold()), label, false));
        }
        HyperSeq::patched_op(cfg, rule, closed, label, Error::NotEventuallyNonzero)
    }

    /// Term-by-term application of `f` (an expression in `x`).
    pub fn hs_apply(f: &Expr, a: &HyperSeq) -> Result<HyperSeq> {
        for v in [Var::N, Var::K] {
            if f.contains(v) {
                return Err(Error::UnboundVariable(v.name().into()));
            }
        }
        let closed = a.closed_form().and_then(|c| substitute_x(f, c));
        let label = format!("{f} at x = {}", a.label());
        HyperSeq::patched_op(a.cfg(), Rule::Apply(f.clone(), a.clone()), closed, label, Error::Domain)
    }

    /// `a(n)^b(n)` with integer `b(n)`.
    pub fn pow_seq(a: &HyperSeq, b: &HyperSeq) -> Result<HyperSeq> {
        let closed = match (a.closed_form(), b.closed_form()) {
            (Some(x), Some(Expr::Var(Var::N))) => Some(Expr::Pow(Box::new(x.clone()), Power::Var(Var::N))),
            (Some(x), Some(y)) => Some(Expr::call(Func::Exp, Expr::mul(y.clone(), Expr::call(Func::Log, x.clone())))),
            _ => None,
        };
        let label = format!("({})^({})", a.label(), b.label());
        HyperSeq::patched_op(a.cfg(), Rule::PowSeq(a.clone(), b.clone()), closed, label, Error::Domain)
    }

    /// `Σ_{k=1}^{N} term(k)` for a hyperinteger `N`.
    pub fn hyperfinite_sum(term: &Expr, count: &HyperNat) -> Result<HyperSeq> {
        check_term(term)?;
        let label = format!("sum of {term} for k = 1..{}", count.seq().label());
        Ok(HyperSeq::build(count.seq().cfg(), Rule::Sum(term.clone(), count.clone()), None, label, false))
    }

    /// `Π_{k=1}^{N} term(k)` for a hyperinteger `N`.
    pub fn hyperfinite_product(term: &Expr, count: &HyperNat) -> Result<HyperSeq> {
        check_term(term)?;
        let label = format!("product of {term} for k = 1..{}", count.seq().label());
        Ok(HyperSeq::build(count.seq().cfg(), Rule::Product(term.clone(), count.clone()), None, label, false))
    }

    /// `Σ_{k>N} term(k, x)` for a series term in `k` and `x`.
    pub fn series_tail(term: &Expr, point: &HyperSeq, count: &HyperNat) -> Result<HyperSeq> {
        if term.contains(Var::N) {
            return Err(Error::UnboundVariable("n".into()));
        }
        let label = format!("sum of {term} for k > {} at x = {}", count.seq().label(), point.label());
        Ok(HyperSeq::build(point.cfg(), Rule::Tail(term.clone(), point.clone(), count.clone()), None, label, false))
    }

    /// The same sequence with finitely many terms replaced.
    pub fn with_prefix(&self, overrides: BTreeMap<u64, Q>) -> HyperSeq {
        let label = format!("{} (with {} terms altered)", self.label(), overrides.len());
        HyperSeq::build(self.cfg(), Rule::Patched(self.clone(), overrides), self.closed_form().cloned(), label, false)
    }

    fn unary(&self, rule: Rule, closed: Option<Expr>, label: String) -> Result<HyperSeq> {
        HyperSeq::patched_op(self.cfg(), rule, closed, label, Error::Domain)
    }

    /// Samples for numeric tail analysis. Sums of `c·k^p` terms (`p < -1`)
    /// get the integral tail `∫_N^∞ c·t^p dt` added.
    pub fn profile(&self) -> Result<Profile> {
        let top = self.top();
        if top < 3 {
            return Err(Error::Undecided(format!(
                "{} is too expensive to sample beyond index {}",
                self.label(),
                1u64 << top
            )));
        }
        let (js, ns) = Profile::indices(top);
        let mut order: Vec<u64> = js.iter().map(|j| 1u64 << j).chain(ns.iter().copied()).collect();
        order.sort_unstable();
        let correction = self.tail_correction();
        let mut values = HashMap::new();
        for n in order {
            let mut v = self.term(n)?;
            if let Some(c) = &correction {
                v = v + c(n)?;
            }
            values.insert(n, v);
        }
        Ok(Profile {
            main: js.iter().map(|&j| (j, values[&(1u64 << j)].clone())).collect(),
            neighbors: ns.iter().map(|n| (*n, values[n].clone())).collect(),
        })
    }

    #[allow(clippy::type_complexity)]
    fn tail_correction(&self) -> Option<Box<dyn Fn(u64) -> Result<Q> + '_>> {
        let Rule::Sum(term, nat) = &self.0.rule else {
            return None;
        };
        if term.contains(Var::N) {
            return None;
        }
        let cfg = self.cfg();
        let asym = expand(&term.substitute(Var::K, &Expr::var(Var::N)), cfg).ok()?;
        let [(s, c)] = asym.terms() else {
            return None;
        };
        if asym.error_scale().is_some() || !s.q.is_zero() || s.p >= -Q::one() {
            return None;
        }
        let (c, p) = (c.clone(), s.p.clone());
        // ∫_N^∞ c t^p dt = c N^(p+1) / -(p+1)
        Some(Box::new(move |n| {
            let count = index_real(cfg, nat.at(n)?);
            let e = &p + &Q::one();
            let scale = &c / &(-&e);
            let base = match e.numer().try_into() {
                Ok(num) => {
                    count.root(e.denom().try_into().map_err(|_| Error::Domain("exponent".into()))?)?.powi(num)?
                }
                Err(_) => return Err(Error::Domain(format!("exponent {e} too large"))),
            };
            Ok(base.value() * &scale)
        }))
    }

    pub fn has_tail_correction(&self) -> bool {
        self.tail_correction().is_some()
    }

    /// Classification and standard part, from the first pattern that
    /// applies: rational function of `n`, power-log expansion, numeric tail.
    pub fn analyze(&self) -> Analysis {
        let cfg = self.cfg();
        if let Some(e) = self.closed_form() {
            if let Ok(r) = eval(e, cfg, &Binding::n(RatFunc::x(cfg))) {
                let st = r.st().map(|value| StEstimate { value, exact: true, error: Q::zero() });
                return Analysis {
                    classification: r.classify(),
                    symbolic: true,
                    dominance_pattern: format!("rational function of n: {}", r.to_string().replace('x', "n")),
                    st,
                };
            }
            if let Ok(a) = expand(e, cfg) {
                if let Ok(c) = a.classify() {
                    let st = a.st().map(|value| StEstimate {
                        value,
                        exact: a.is_exact(),
                        error: if a.is_exact() { Q::zero() } else { cfg.coefficient_tolerance() },
                    });
                    return Analysis { classification: Ok(c), symbolic: true, dominance_pattern: a.describe(), st };
                }
            }
        }
        self.numeric_analysis()
    }

    /// Analysis from sampled terms alone, ignoring any closed form.
    /// Magnitude class of `|a(n)|` from sampled terms; decides sequences
    /// whose sign oscillates but whose size does not.
    pub fn magnitude_class(&self) -> Result<Tag> {
        let p = self.profile()?;
        let abs = Profile {
            main: p.main.iter().map(|(j, v)| (*j, v.abs())).collect(),
            neighbors: p.neighbors.iter().map(|(n, v)| (*n, v.abs())).collect(),
        };
        limit::classify(&abs, &self.cfg().st_tolerance).map(|(c, _)| c.tag)
    }

    pub fn numeric_analysis(&self) -> Analysis {
        let cfg = self.cfg();
        let pattern = if self.has_tail_correction() {
            "numeric tail with integral-tail correction (no symbolic pattern)"
        } else {
            "numeric tail (no symbolic pattern)"
        };
        let profile = match self.profile() {
            Ok(p) => p,
            Err(e) => {
                return Analysis {
                    classification: Err(e.clone()),
                    symbolic: false,
                    dominance_pattern: pattern.into(),
                    st: Err(e),
                }
            }
        };
        let tol = &cfg.st_tolerance;
        let classification = limit::classify(&profile, tol);
        let st = match &classification {
            Ok((c, _)) if c.tag == Tag::Infinite => Err(Error::NotFinite(self.label().to_string())),
            Ok((_, Some(est))) => Ok(estimate(est)),
            _ => match limit::limit(&profile, tol) {
                Some(est) => Ok(estimate(&est)),
                None => Err(Error::Undecided(format!(
                    "limit of {} does not stabilize within {} by index {}",
                    self.label(),
                    tol,
                    profile.top_index()
                ))),
            },
        };
        Analysis {
            classification: classification.map(|(c, _)| c),
            symbolic: false,
            dominance_pattern: pattern.into(),
            st,
        }
    }

    pub fn st_estimate(&self) -> Result<StEstimate> {
        self.analyze().st
    }
}

fn estimate(est: &LimitEstimate) -> StEstimate {
    StEstimate { value: est.value.clone(), exact: false, error: est.error.clone() }
}

fn check_term(term: &Expr) -> Result<()> {
    if term.contains(Var::X) {
        return Err(Error::UnboundVariable("x".into()));
    }
    Ok(())
}

/// `Σ_{k>count} term(k, x)`, stopping once terms are negligible or the
/// ratio of consecutive terms has settled (then the geometric remainder is
/// added in closed form).
fn tail_sum(cfg: &Arc<FieldConfig>, term: &Expr, x: &Real, count: u64) -> Result<Q> {
    let thr = Q::pow10_neg(cfg.working_precision);
    let bits = cfg.precision_bits();
    let mut acc = Q::zero();
    let mut prev: Option<Q> = None;
    let mut prev_ratio: Option<Q> = None;
    let mut negligible = 0;
    for i in 1..=TAIL_BUDGET {
        let k = count + i;
        let b = Binding::x(x.clone()).with(Var::K, index_real(cfg, k));
        let u = eval::<Real>(term, cfg, &b)?.into_value();
        if Real::is_underflow(&u, cfg) {
            // below the underflow bound only the leading sign is meaningful;
            // summing saturated terms could cancel it to a spurious zero
            return Ok(if acc.is_zero() { u } else { acc });
        }
        acc = (&acc + &u).tame(bits);
        if u.abs() <= &thr * &acc.abs() {
            negligible += 1;
            if negligible >= 2 {
                return Ok(acc);
            }
        } else {
            negligible = 0;
        }
        if let Some(p) = prev.as_ref().filter(|p| !p.is_zero()) {
            let ratio = &u / p;
            if let Some(pr) = &prev_ratio {
                if (&ratio - pr).abs() <= &thr * &ratio.abs() && ratio.abs() < Q::one() {
                    // remaining terms u·r, u·r², ...
                    let rest = &(&u * &ratio) / &(Q::one() - &ratio);
                    return Ok((acc + rest).tame(bits));
                }
            }
            prev_ratio = Some(ratio);
        }
        prev = Some(u);
    }
    Err(Error::Undecided(format!("series tail beyond term {count} did not converge within {TAIL_BUDGET} terms")))
}

impl fmt::Display for HyperSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.0.label)
    }
}

impl Backend for HyperSeq {
    const NAME: &'static str = "omega";

    fn config(&self) -> &Arc<FieldConfig> {
        &self.0.cfg
    }

    fn constant(cfg: &Arc<FieldConfig>, q: &Q) -> Self {
        HyperSeq::constant_seq(cfg, q)
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        HyperSeq::hs_arith(BinOp::Add, self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        HyperSeq::hs_arith(BinOp::Sub, self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        HyperSeq::hs_arith(BinOp::Mul, self, rhs)
    }

    fn neg(&self) -> Self {
        let closed = self.closed_form().map(|e| Expr::neg(e.clone()).fold());
        HyperSeq::build(self.cfg(), Rule::Neg(self.clone()), closed, format!("-({})", self.label()), false)
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        HyperSeq::hs_arith(BinOp::Div, self, rhs)
    }

    fn powi(&self, e: i64) -> Result<Self> {
        let closed = self.closed_form().map(|c| Expr::powq(c.clone(), e));
        self.unary(Rule::Powi(self.clone(), e), closed, format!("({})^{e}", self.label()))
    }

    fn root(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("zeroth root".into()));
        }
        let closed = self.closed_form().map(|c| Expr::powq(c.clone(), Q::ratio(1, k as i64)));
        self.unary(Rule::Root(self.clone(), k), closed, format!("({})^(1/{k})", self.label()))
    }

    fn pow_by(&self, exponent: &Self) -> Result<Self> {
        match exponent.as_standard_integer() {
            Some(e) => self.powi(e),
            None => HyperSeq::pow_seq(self, exponent),
        }
    }

    fn apply(&self, f: Func) -> Result<Self> {
        let closed = self.closed_form().map(|c| Expr::call(f, c.clone()));
        self.unary(Rule::Func(f, self.clone()), closed, format!("{}({})", f.name(), self.label()))
    }

    fn classify(&self) -> Result<Classification> {
        self.analyze().classification
    }

    fn st(&self) -> Result<Q> {
        self.st_estimate().map(|e| e.value)
    }

    fn as_standard_integer(&self) -> Option<i64> {
        match self.closed_form()?.fold() {
            Expr::Num(q) => q.to_i64(),
            _ => None,
        }
    }
}

/// Asymptotic expansion of the closed form, if it has one.
pub fn expansion(s: &HyperSeq) -> Option<Asym> {
    expand(s.closed_form()?, s.cfg()).ok()
}
