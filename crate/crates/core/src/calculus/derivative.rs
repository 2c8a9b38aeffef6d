use std::sync::Arc;

use super::probe::{shifted, ProbeField};
use super::report::{NumberFormat, Report};
use crate::error::{Error, Result};
use crate::expr::{eval, Binding, Expr};
use crate::numeric::{Backend, ExactRational, FieldConfig, Tag};

type Q = ExactRational;

/// One difference quotient `(f(x0 + dx) - f(x0)) / dx`.
#[derive(Clone, Debug)]
pub struct DerivativeProbe<B> {
    pub label: String,
    pub dx: B,
    pub dy: B,
    pub ratio: B,
    pub st: Q,
}

#[derive(Clone, Debug)]
pub struct Derivative<B> {
    pub f: Expr,
    pub x0: Q,
    /// Standard part of the first probe's ratio.
    pub value: Q,
    pub probes: Vec<DerivativeProbe<B>>,
    pub tolerance: Q,
    /// Truncation order that certified the result (Levi-Civita only).
    pub truncation: Option<usize>,
}

impl<B: ProbeField> Derivative<B> {
    pub fn report(&self, fmt: NumberFormat) -> Report {
        let mut r = Report::new("derivative", "Differentiable")
            .input("f", &self.f)
            .input("x0", &self.x0)
            .input("backend", B::NAME)
            .value("derivative", fmt.show(&self.value))
            .tolerance("probe_agreement", &self.tolerance);
        if let Some(t) = self.truncation {
            r = r.value("truncation_order", t);
        }
        for p in &self.probes {
            r = r.probe([
                ("dx", p.label.clone()),
                ("dy", p.dy.to_string()),
                ("ratio", p.ratio.to_string()),
                ("st", fmt.show(&p.st)),
            ]);
        }
        r
    }
}

fn at<B: Backend>(f: &Expr, cfg: &Arc<FieldConfig>, x: B) -> Result<B> {
    eval(f, cfg, &Binding::x(x))
}

/// `st((f(x0 + dx) - f(x0)) / dx)` over the backend's probe increments.
///
/// Fails with `NotDifferentiable` when a ratio is infinite or two probes
/// disagree beyond the backend's agreement tolerance.
pub fn derivative<B: ProbeField>(f: &Expr, x0: &Q, cfg: &Arc<FieldConfig>) -> Result<Derivative<B>> {
    let tolerance = B::agreement_tolerance(cfg);
    let refinements = B::refinements(cfg);
    'refine: for c in &refinements {
        let base = at(f, c, B::constant(c, x0))?;
        let mut probes: Vec<DerivativeProbe<B>> = Vec::new();
        for (label, dx) in B::derivative_probes(c) {
            let dy = at(f, c, shifted(c, x0, &dx)?)?.sub(&base)?;
            let ratio = dy.div(&dx)?;
            if !ratio.st_reliable() {
                continue 'refine;
            }
            if ratio.classify()?.tag == Tag::Infinite {
                return Err(Error::NotDifferentiable(format!(
                    "{f} at {x0}: the difference quotient for dx = {label} is infinite"
                )));
            }
            let st = ratio.st()?;
            if let Some(first) = probes.first() {
                if (&st - &first.st).abs() > tolerance {
                    return Err(Error::NotDifferentiable(format!(
                        "{f} at {x0}: dx = {} gives {}, dx = {label} gives {st}",
                        first.label, first.st
                    )));
                }
            }
            probes.push(DerivativeProbe { label, dx, dy, ratio, st });
        }
        let value = probes[0].st.clone();
        let truncation = (refinements.len() > 1).then_some(c.truncation_order);
        return Ok(Derivative { f: f.clone(), x0: x0.clone(), value, probes, tolerance, truncation });
    }
    Err(Error::Undecided(format!(
        "difference quotients of {f} at {x0} are not determined at truncation order {}",
        cfg.truncation_order
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, symbolic_diff};
    use crate::levi_civita::LcNumber;
    use crate::numeric::{real, Real};
    use crate::omega::HyperSeq;
    use crate::ratfunc::RatFunc;

    fn cfg() -> Arc<FieldConfig> {
        Arc::new(FieldConfig::default())
    }

    fn d<B: ProbeField>(f: &str, x0: Q) -> Result<Q> {
        derivative::<B>(&parse(f).unwrap(), &x0, &cfg()).map(|d| d.value)
    }

    #[test]
    fn square_at_three() {
        assert_eq!(d::<LcNumber>("x^2", Q::from(3)).unwrap(), Q::from(6));
        assert_eq!(d::<HyperSeq>("x^2", Q::from(3)).unwrap(), Q::from(6));
        assert_eq!(d::<RatFunc>("x^2", Q::from(3)).unwrap(), Q::from(6));
    }

    #[test]
    fn sine_at_zero_matches_cosine() {
        let v = d::<LcNumber>("sin(x)", Q::zero()).unwrap();
        assert!((v - Q::one()).abs() < cfg().coefficient_tolerance());
    }

    #[test]
    fn kink_and_cusp() {
        let e = d::<LcNumber>("abs(x)", Q::zero()).unwrap_err();
        assert_eq!(e.name(), "NotDifferentiable");
        let e = d::<LcNumber>("sqrt(x)", Q::zero()).unwrap_err();
        assert_eq!(e.name(), "NotDifferentiable");
    }

    #[test]
    fn transcendental_on_ratfunc_does_not_transfer() {
        assert_eq!(d::<RatFunc>("sin(x)", Q::zero()).unwrap_err().name(), "NoTransfer");
    }

    #[test]
    fn composition_matches_symbolic_oracle() {
        let c = cfg();
        let f = parse("exp(sin(x)) * log(1 + x^2)").unwrap();
        let x0 = Q::ratio(2, 3);
        let got = derivative::<LcNumber>(&f, &x0, &c).unwrap().value;
        let want = eval(&symbolic_diff(&f), &c, &Binding::x(Real::new(x0, &c))).unwrap().into_value();
        assert!((got - want).abs() < c.coefficient_tolerance());
    }

    #[test]
    fn cosine_oracle_on_sequences() {
        let c = cfg();
        let got = d::<HyperSeq>("sin(x)", Q::ratio(1, 2)).unwrap();
        let want = real::cos(&Q::ratio(1, 2), c.digits()).unwrap();
        assert!((got - want).abs() < c.st_tolerance);
    }

    #[test]
    fn probes_agree() {
        let r = derivative::<LcNumber>(&parse("x^3 - 2*x").unwrap(), &Q::from(2), &cfg()).unwrap();
        assert_eq!(r.probes.len(), 4);
        assert!(r.probes.iter().all(|p| p.st == 10));
        assert_eq!(r.report(NumberFormat::Exact).values["derivative"], "10");
    }
}
