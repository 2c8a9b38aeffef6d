use std::sync::Arc;

use crate::error::Result;
use crate::expr::parse;
use crate::levi_civita::LcNumber;
use crate::numeric::{Backend, ExactRational, FieldConfig};
use crate::omega::{probe_indices, HyperSeq};
use crate::ratfunc::RatFunc;

type Q = ExactRational;

/// A backend the calculus procedures can probe: it names its own
/// infinitesimal increments and says when a computed value is trustworthy.
pub trait ProbeField: Backend {
    /// Increments for difference quotients; the first one is reported.
    fn derivative_probes(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)>;

    /// Increments for continuity and microcontinuity tests.
    fn continuity_probes(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)>;

    /// Default sample points for identity spot-checks.
    fn transfer_points(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)>;

    /// Configurations to try in order, cheapest first.
    fn refinements(cfg: &Arc<FieldConfig>) -> Vec<Arc<FieldConfig>> {
        vec![cfg.clone()]
    }

    /// Whether the standard part of this value is determined.
    fn st_reliable(&self) -> bool {
        true
    }

    /// Whether the classification of this value is determined.
    fn class_reliable(&self) -> bool {
        true
    }

    /// Largest disagreement tolerated between standard parts from
    /// different probes.
    fn agreement_tolerance(cfg: &Arc<FieldConfig>) -> Q;

    /// Largest coefficient or sampled term magnitude.
    fn magnitude(&self) -> Result<Q>;
}

fn lc(cfg: &Arc<FieldConfig>, c: i64, e: Q) -> LcNumber {
    LcNumber::monomial(cfg, Q::from(c), e)
}

impl ProbeField for LcNumber {
    fn derivative_probes(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)> {
        vec![
            ("eps".into(), lc(cfg, 1, Q::one())),
            ("-eps".into(), lc(cfg, -1, Q::one())),
            ("2*eps".into(), lc(cfg, 2, Q::one())),
            ("eps^2".into(), lc(cfg, 1, Q::from(2))),
        ]
    }

    fn continuity_probes(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)> {
        let mut v = Self::derivative_probes(cfg);
        v.push(("eps^1/2".into(), lc(cfg, 1, Q::ratio(1, 2))));
        v
    }

    fn transfer_points(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)> {
        vec![
            ("eps".into(), lc(cfg, 1, Q::one())),
            ("1 + eps".into(), LcNumber::from_terms(cfg, [(Q::zero(), Q::one()), (Q::one(), Q::one())])),
            (
                "1/3 + 2*eps^2".into(),
                LcNumber::from_terms(cfg, [(Q::zero(), Q::ratio(1, 3)), (Q::from(2), Q::from(2))]),
            ),
        ]
    }

    /// Truncation orders 4, 8, 16, ... up to the configured one.
    fn refinements(cfg: &Arc<FieldConfig>) -> Vec<Arc<FieldConfig>> {
        let top = cfg.truncation_order;
        let mut out = Vec::new();
        let mut t = 4;
        while t < top {
            out.push(Arc::new(FieldConfig { truncation_order: t, ..(**cfg).clone() }));
            t *= 2;
        }
        out.push(cfg.clone());
        out
    }

    fn st_reliable(&self) -> bool {
        self.horizon().is_none_or(|h| h.is_positive())
    }

    fn class_reliable(&self) -> bool {
        !self.terms().is_empty() || self.st_reliable()
    }

    fn agreement_tolerance(cfg: &Arc<FieldConfig>) -> Q {
        cfg.coefficient_tolerance()
    }

    fn magnitude(&self) -> Result<Q> {
        Ok(self.max_coefficient())
    }
}

fn seq(cfg: &Arc<FieldConfig>, rule: &str) -> HyperSeq {
    let e = parse(rule).expect("built-in probe rule parses");
    HyperSeq::from_expr(cfg, &e).expect("built-in probe rule is a valid sequence")
}

impl ProbeField for HyperSeq {
    fn derivative_probes(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)> {
        ["1/n", "-1/n", "2/n", "1/n^2"].iter().map(|r| (format!("⟨{r}⟩"), seq(cfg, r))).collect()
    }

    fn continuity_probes(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)> {
        ["1/n", "-1/n", "1/n^2", "1/log(n+1)"].iter().map(|r| (format!("⟨{r}⟩"), seq(cfg, r))).collect()
    }

    fn transfer_points(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)> {
        ["1/n", "n", "1 + 1/n"].iter().map(|r| (format!("⟨{r}⟩"), seq(cfg, r))).collect()
    }

    fn agreement_tolerance(cfg: &Arc<FieldConfig>) -> Q {
        &Q::from(2) * &cfg.st_tolerance
    }

    fn magnitude(&self) -> Result<Q> {
        let mut m = Q::zero();
        for n in probe_indices(self.top()) {
            m = m.max(self.term(n)?.abs());
        }
        Ok(m)
    }
}

impl ProbeField for RatFunc {
    fn derivative_probes(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)> {
        let x = RatFunc::x(cfg);
        let inv = |c: i64, p: i64| -> RatFunc {
            RatFunc::constant(cfg, &Q::from(c)).div(&x.powi(p).expect("small power")).expect("x is nonzero")
        };
        vec![
            ("1/x".into(), inv(1, 1)),
            ("-1/x".into(), inv(-1, 1)),
            ("2/x".into(), inv(2, 1)),
            ("1/x^2".into(), inv(1, 2)),
        ]
    }

    fn continuity_probes(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)> {
        Self::derivative_probes(cfg)
    }

    fn transfer_points(cfg: &Arc<FieldConfig>) -> Vec<(String, Self)> {
        let x = RatFunc::x(cfg);
        let one = RatFunc::constant(cfg, &Q::one());
        let inv = one.div(&x).expect("x is nonzero");
        let shifted = one.add(&inv).expect("degree is small");
        vec![("x".into(), x), ("1/x".into(), inv), ("1 + 1/x".into(), shifted)]
    }

    fn agreement_tolerance(cfg: &Arc<FieldConfig>) -> Q {
        cfg.coefficient_tolerance()
    }

    fn magnitude(&self) -> Result<Q> {
        Ok(self.num().coeffs().iter().map(Q::abs).max().unwrap_or_default())
    }
}

/// `x0 + dx` in the backend.
pub(crate) fn shifted<B: Backend>(cfg: &Arc<FieldConfig>, x0: &Q, dx: &B) -> Result<B> {
    B::constant(cfg, x0).add(dx)
}
