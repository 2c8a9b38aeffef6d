use std::fmt;

use serde::Serialize;

use super::report::{NumberFormat, Report};
use crate::error::{Error, Result};
use crate::expr::{parse, BinOp, Expr};
use crate::numeric::{Backend, Classification, ExactRational, Tag};
use crate::omega::{HyperNat, HyperSeq};

type Q = ExactRational;

/// Infinitesimal displacement from the standard point.
#[derive(Clone, Debug, PartialEq)]
pub enum HyperOffset {
    /// `q / N` (negative `q` for `x0 - |q|/N`).
    Reciprocal(Q),
    /// `⟨rule(n)⟩`.
    Sequence(Expr),
}

impl HyperOffset {
    /// Accepts `1/N`, `-1/N`, `+2/N`, `-3/4/N`, or a rule in `n`.
    pub fn parse(text: &str) -> Result<HyperOffset> {
        let t = text.trim();
        if let Some(head) = t.strip_suffix("/N").map(str::trim) {
            let q = match head {
                "" | "+" => Q::one(),
                "-" => -Q::one(),
                h => h.trim_start_matches('+').parse()?,
            };
            return Ok(HyperOffset::Reciprocal(q));
        }
        Ok(HyperOffset::Sequence(parse(t)?))
    }

    fn build(&self, count: &HyperNat) -> Result<HyperSeq> {
        let cfg = count.seq().cfg();
        match self {
            HyperOffset::Reciprocal(q) => HyperSeq::hs_arith(BinOp::Div, &HyperSeq::constant_seq(cfg, q), count.seq()),
            HyperOffset::Sequence(rule) => HyperSeq::from_expr(cfg, rule),
        }
    }
}

impl fmt::Display for HyperOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperOffset::Reciprocal(q) if q.is_negative() => write!(f, "- {}/N", q.abs()),
            HyperOffset::Reciprocal(q) => write!(f, "+ {q}/N"),
            HyperOffset::Sequence(rule) => write!(f, "+ ⟨{rule}⟩"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SumTheoremVerdict {
    UniformEvidence,
    NonUniformWitness,
    Undecided,
}

impl fmt::Display for SumTheoremVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The remainder `Σ_{k>N} u_k(x)` at one probe point.
#[derive(Clone, Debug)]
pub struct RemainderProbe {
    pub point: String,
    pub remainder: HyperSeq,
    pub class: Result<Classification>,
    /// Magnitude class; from `|remainder|` when the signed class is
    /// undecided (a remainder may alternate in sign yet be negligible).
    pub magnitude: Result<Tag>,
    pub st: Option<Q>,
}

#[derive(Clone, Debug)]
pub struct SumTheoremReport {
    pub series_term: Expr,
    pub x0: Q,
    pub offset: HyperOffset,
    pub count: HyperNat,
    /// The hyper-point first, then the standard point itself.
    pub probes: Vec<RemainderProbe>,
    pub verdict: SumTheoremVerdict,
}

impl SumTheoremReport {
    pub fn probe_point(&self) -> String {
        format!("{} {}", self.x0, self.offset)
    }

    /// Classification of the remainder at the hyper-point.
    pub fn remainder_class(&self) -> &Result<Classification> {
        &self.probes[0].class
    }

    pub fn report(&self, fmt: NumberFormat) -> Report {
        let cfg = self.count.seq().cfg();
        let mut r = Report::new("sum_theorem_probe", self.verdict.to_string())
            .input("series_term", &self.series_term)
            .input("x0", &self.x0)
            .input("offset", &self.offset)
            .input("N", &self.count)
            .value("probe_point", self.probe_point())
            .tolerance("st_tolerance", &cfg.st_tolerance);
        match self.remainder_class() {
            Ok(c) => r = r.value("remainder_class", c),
            Err(e) => r = r.value("remainder_class", e.name()),
        }
        if let Some(st) = &self.probes[0].st {
            r = r
                .value("remainder_st", fmt.show(st))
                .value("remainder_st_decimal", st.to_decimal(cfg.working_precision));
        }
        for p in &self.probes {
            let mut fields = vec![("point", p.point.clone()), ("remainder", p.remainder.to_string())];
            match &p.class {
                Ok(c) => fields.push(("class", c.to_string())),
                Err(e) => fields.push(("class", format!("{}: {e}", e.name()))),
            }
            if p.class.is_err() {
                if let Ok(t) = &p.magnitude {
                    fields.push(("magnitude", t.to_string()));
                }
            }
            if let Some(st) = &p.st {
                fields.push(("st", fmt.show(st)));
            }
            r = r.probe(fields);
        }
        r
    }
}

fn probe(term: &Expr, point: &HyperSeq, name: String, count: &HyperNat) -> Result<RemainderProbe> {
    let remainder = HyperSeq::series_tail(term, point, count)?;
    let analysis = remainder.numeric_analysis();
    let st = match &analysis.classification {
        Ok(c) if c.is_finite() => analysis.st.ok().map(|s| s.value),
        _ => None,
    };
    let magnitude = match &analysis.classification {
        Ok(c) => Ok(c.tag),
        Err(e) if e.is_undecided() => remainder.magnitude_class().map_err(|_| e.clone()),
        Err(e) => Err(e.clone()),
    };
    Ok(RemainderProbe { point: name, remainder, class: analysis.classification, magnitude, st })
}

/// Evaluates the remainder of `Σ u_k(x)` after `N` terms at the hyper-point
/// `x0 + offset` and at `x0` itself. An appreciable or infinite remainder
/// at a point infinitely close to `x0` witnesses non-uniform convergence.
pub fn sum_theorem_probe(term: &Expr, x0: &Q, offset: &HyperOffset, count: &HyperNat) -> Result<SumTheoremReport> {
    let cfg = count.seq().cfg();
    let base = HyperSeq::constant_seq(cfg, x0);
    let shift = offset.build(count)?;
    match shift.classify() {
        Ok(c) if c.is_negligible() => {}
        Ok(c) => return Err(Error::Domain(format!("offset {offset} is {c}, not infinitesimal"))),
        Err(e) => return Err(e),
    }
    let hyper = base.add(&shift)?;
    let probes =
        vec![probe(term, &hyper, format!("{x0} {offset}"), count)?, probe(term, &base, x0.to_string(), count)?];
    let big = |p: &RemainderProbe| matches!(&p.magnitude, Ok(Tag::Appreciable | Tag::Infinite));
    let verdict = if probes.iter().any(big) {
        SumTheoremVerdict::NonUniformWitness
    } else if probes.iter().all(|p| matches!(&p.magnitude, Ok(Tag::Zero | Tag::Infinitesimal))) {
        SumTheoremVerdict::UniformEvidence
    } else {
        SumTheoremVerdict::Undecided
    };
    Ok(SumTheoremReport {
        series_term: term.clone(),
        x0: x0.clone(),
        offset: offset.clone(),
        count: count.clone(),
        probes,
        verdict,
    })
}
