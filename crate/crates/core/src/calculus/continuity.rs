use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::probe::{shifted, ProbeField};
use super::report::{NumberFormat, Report};
use crate::error::{Error, Result};
use crate::expr::{eval, Binding, Expr};
use crate::levi_civita::LcNumber;
use crate::numeric::{Backend, Classification, ExactRational, FieldConfig};

type Q = ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ContinuityVerdict {
    /// Every probed increment is infinitesimal or zero. Evidence for the
    /// probe set used, not a proof.
    PassToOrder,
    /// Some infinitesimal perturbation moved the value appreciably.
    Fail,
    Undecided,
}

impl fmt::Display for ContinuityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuityProbe {
    pub point: String,
    pub alpha: String,
    /// `f(point + alpha) - f(point)`, rendered in the backend.
    pub increment: Option<String>,
    pub class: Option<Classification>,
    /// Standard part of a finite increment.
    pub st: Option<Q>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuityReport {
    pub operation: &'static str,
    pub f: Expr,
    pub backend: &'static str,
    /// The standard point, or the interval for uniform probes.
    pub point: String,
    pub probes: Vec<ContinuityProbe>,
    pub verdict: ContinuityVerdict,
    pub truncation: Option<usize>,
}

impl ContinuityReport {
    /// First probe with a non-negligible increment.
    pub fn witness(&self) -> Option<&ContinuityProbe> {
        self.probes.iter().find(|p| matches!(p.class, Some(c) if !c.is_negligible()))
    }

    pub fn report(&self, fmt: NumberFormat) -> Report {
        let mut r = Report::new(self.operation, self.verdict.to_string())
            .input("f", &self.f)
            .input("at", &self.point)
            .input("backend", self.backend);
        if let Some(t) = self.truncation {
            r = r.value("truncation_order", t);
        }
        if let Some(w) = self.witness() {
            r = r.value("witness_point", &w.point).value("witness_alpha", &w.alpha);
            if let Some(st) = &w.st {
                r = r.value("witness_increment_st", fmt.show(st));
            }
        }
        for p in &self.probes {
            let mut fields = vec![("point", p.point.clone()), ("alpha", p.alpha.clone())];
            if let Some(i) = &p.increment {
                fields.push(("increment", i.clone()));
            }
            fields.push(("class", p.class.map_or("undetermined".into(), |c| c.to_string())));
            if let Some(st) = &p.st {
                fields.push(("st", fmt.show(st)));
            }
            if let Some(n) = &p.note {
                fields.push(("note", n.clone()));
            }
            r = r.probe(fields);
        }
        r
    }
}

fn at<B: Backend>(f: &Expr, cfg: &Arc<FieldConfig>, x: B) -> Result<B> {
    eval(f, cfg, &Binding::x(x))
}

/// Failures that mean "f has no value here".
fn undefined(e: &Error) -> bool {
    matches!(
        e,
        Error::Domain(_)
            | Error::DivisionByZero
            | Error::NegativeLeading(_)
            | Error::NotFinite(_)
            | Error::NotEventuallyNonzero(_)
    )
}

/// Outcome of one battery at one configuration; `None` means the
/// truncation was too coarse to decide something.
type Battery = Option<Vec<ContinuityProbe>>;

fn probe_point<B: ProbeField>(
    f: &Expr,
    cfg: &Arc<FieldConfig>,
    name: &str,
    point: &B,
    base: &B,
    alphas: &[(String, B)],
    out: &mut Vec<ContinuityProbe>,
) -> Result<bool> {
    for (label, alpha) in alphas {
        let mut probe = ContinuityProbe {
            point: name.to_string(),
            alpha: label.clone(),
            increment: None,
            class: None,
            st: None,
            note: None,
        };
        let moved = match point.add(alpha).and_then(|x| at(f, cfg, x)) {
            Ok(v) => v,
            Err(e) if undefined(&e) => {
                probe.note = Some(format!("skipped: {e}"));
                out.push(probe);
                continue;
            }
            Err(e) if e.is_undecided() => {
                probe.note = Some(e.to_string());
                out.push(probe);
                continue;
            }
            Err(e) => return Err(e),
        };
        let inc = moved.sub(base)?;
        if !inc.class_reliable() {
            return Ok(false);
        }
        probe.increment = Some(inc.to_string());
        match inc.classify() {
            Ok(c) => {
                probe.class = Some(c);
                if c.is_finite() && inc.st_reliable() {
                    probe.st = inc.st().ok();
                }
            }
            Err(e) if e.is_undecided() => probe.note = Some(e.to_string()),
            Err(e) => return Err(e),
        }
        out.push(probe);
    }
    Ok(true)
}

fn verdict(probes: &[ContinuityProbe]) -> ContinuityVerdict {
    if probes.iter().any(|p| matches!(p.class, Some(c) if !c.is_negligible())) {
        ContinuityVerdict::Fail
    } else if !probes.is_empty()
        && probes.iter().all(|p| p.class.is_some() || p.note.as_deref().is_some_and(|n| n.starts_with("skipped")))
        && probes.iter().any(|p| p.class.is_some())
    {
        ContinuityVerdict::PassToOrder
    } else {
        ContinuityVerdict::Undecided
    }
}

fn continuity<B: ProbeField>(f: &Expr, x0: &Q, value: Option<&Q>, cfg: &Arc<FieldConfig>) -> Result<ContinuityReport> {
    let refinements = B::refinements(cfg);
    for c in &refinements {
        let base = match value {
            Some(v) => B::constant(c, v),
            None => at(f, c, B::constant(c, x0)).map_err(|e| {
                if undefined(&e) {
                    Error::Domain(format!("{f} is undefined at {x0}: {e}"))
                } else {
                    e
                }
            })?,
        };
        let point = B::constant(c, x0);
        let mut probes = Vec::new();
        let battery: Battery =
            probe_point(f, c, &x0.to_string(), &point, &base, &B::continuity_probes(c), &mut probes)?.then_some(probes);
        if let Some(probes) = battery {
            return Ok(ContinuityReport {
                operation: "continuity_at",
                f: f.clone(),
                backend: B::NAME,
                point: x0.to_string(),
                verdict: verdict(&probes),
                probes,
                truncation: (refinements.len() > 1).then_some(c.truncation_order),
            });
        }
    }
    Err(Error::Undecided(format!(
        "increments of {f} at {x0} are not determined at truncation order {}",
        cfg.truncation_order
    )))
}

/// Tests whether every probed infinitesimal increment of the argument
/// produces an infinitesimal increment of `f` at the standard point `x0`.
pub fn continuity_at<B: ProbeField>(f: &Expr, x0: &Q, cfg: &Arc<FieldConfig>) -> Result<ContinuityReport> {
    continuity::<B>(f, x0, None, cfg)
}

/// As [`continuity_at`], with `f(x0)` defined to be `value` (for functions
/// given piecewise, such as a step with a chosen value at the jump).
pub fn continuity_at_with_value<B: ProbeField>(
    f: &Expr,
    x0: &Q,
    value: &Q,
    cfg: &Arc<FieldConfig>,
) -> Result<ContinuityReport> {
    continuity::<B>(f, x0, Some(value), cfg)
}

/// Microcontinuity probe on the open interval `(a, b)`: increments at the
/// near-edge hyperpoints `a + eps`, `b - eps` (perturbed by `±eps^2`,
/// `2 eps^2`) and at a standard grid (perturbed by `±eps`, `eps^2`).
pub fn uniform_continuity_probe(f: &Expr, a: &Q, b: &Q, cfg: &Arc<FieldConfig>) -> Result<ContinuityReport> {
    if a >= b {
        return Err(Error::Domain(format!("empty interval ({a}, {b})")));
    }
    let refinements = LcNumber::refinements(cfg);
    'refine: for c in &refinements {
        let eps = |coef: i64, e: i64| LcNumber::monomial(c, Q::from(coef), Q::from(e));
        let fine = vec![
            ("eps^2".to_string(), eps(1, 2)),
            ("-eps^2".to_string(), eps(-1, 2)),
            ("2*eps^2".to_string(), eps(2, 2)),
        ];
        let coarse =
            vec![("eps".to_string(), eps(1, 1)), ("-eps".to_string(), eps(-1, 1)), ("eps^2".to_string(), eps(1, 2))];
        let mut points = vec![
            (format!("{a} + eps"), shifted(c, a, &eps(1, 1))?, &fine),
            (format!("{b} - eps"), shifted(c, b, &eps(-1, 1))?, &fine),
        ];
        for i in 1..4 {
            let x = a + &(&(b - a) * &Q::ratio(i, 4));
            points.push((x.to_string(), LcNumber::constant(c, &x), &coarse));
        }
        let mut probes = Vec::new();
        for (name, point, alphas) in &points {
            let base = at(f, c, point.clone()).map_err(|e| {
                if undefined(&e) {
                    Error::Domain(format!("{f} is undefined at {name}: {e}"))
                } else {
                    e
                }
            })?;
            if !probe_point(f, c, name, point, &base, alphas, &mut probes)? {
                continue 'refine;
            }
        }
        return Ok(ContinuityReport {
            operation: "uniform_continuity_probe",
            f: f.clone(),
            backend: LcNumber::NAME,
            point: format!("({a}, {b})"),
            verdict: verdict(&probes),
            probes,
            truncation: (refinements.len() > 1).then_some(c.truncation_order),
        });
    }
    Err(Error::Undecided(format!(
        "increments of {f} on ({a}, {b}) are not determined at truncation order {}",
        cfg.truncation_order
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::numeric::Tag;
    use crate::omega::HyperSeq;
    use crate::ratfunc::RatFunc;

    fn cfg() -> Arc<FieldConfig> {
        Arc::new(FieldConfig::default())
    }

    fn cont<B: ProbeField>(f: &str, x0: i64) -> Result<ContinuityReport> {
        continuity_at::<B>(&parse(f).unwrap(), &Q::from(x0), &cfg())
    }

    #[test]
    fn polynomial_passes_everywhere() {
        assert_eq!(cont::<LcNumber>("x^2", 5).unwrap().verdict, ContinuityVerdict::PassToOrder);
        assert_eq!(cont::<HyperSeq>("x^2", 5).unwrap().verdict, ContinuityVerdict::PassToOrder);
        assert_eq!(cont::<RatFunc>("x^2", 5).unwrap().verdict, ContinuityVerdict::PassToOrder);
    }

    #[test]
    fn reciprocal_is_undefined_at_zero() {
        assert_eq!(cont::<LcNumber>("1/x", 0).unwrap_err().name(), "DomainError");
    }

    #[test]
    fn step_with_assigned_value_fails() {
        let f = parse("(abs(x) + x) / (2*x)").unwrap();
        assert_eq!(continuity_at::<LcNumber>(&f, &Q::zero(), &cfg()).unwrap_err().name(), "DomainError");
        let r = continuity_at_with_value::<LcNumber>(&f, &Q::zero(), &Q::zero(), &cfg()).unwrap();
        assert_eq!(r.verdict, ContinuityVerdict::Fail);
        let w = r.witness().unwrap();
        assert_eq!(w.alpha, "eps");
        assert_eq!(w.st, Some(Q::one()));
    }

    #[test]
    fn root_at_boundary_skips_outside_probes() {
        let r = cont::<LcNumber>("sqrt(x)", 0).unwrap();
        assert_eq!(r.verdict, ContinuityVerdict::PassToOrder);
        assert!(r.probes.iter().any(|p| p.note.is_some()));
    }

    #[test]
    fn reciprocal_fails_microcontinuity_near_zero() {
        let r = uniform_continuity_probe(&parse("1/x").unwrap(), &Q::zero(), &Q::one(), &cfg()).unwrap();
        assert_eq!(r.verdict, ContinuityVerdict::Fail);
        let w = r.witness().unwrap();
        assert_eq!(w.point, "0 + eps");
        assert_eq!(w.class.unwrap().tag, Tag::Appreciable);
        assert_eq!(w.st, Some(-Q::one()));
    }

    #[test]
    fn square_and_root_pass_uniform_probe() {
        for f in ["x^2", "sqrt(x)"] {
            let r = uniform_continuity_probe(&parse(f).unwrap(), &Q::zero(), &Q::one(), &cfg()).unwrap();
            assert_eq!(r.verdict, ContinuityVerdict::PassToOrder, "{f}");
        }
    }
}
