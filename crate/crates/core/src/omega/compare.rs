use serde::Serialize;

use super::hyperseq::{probe_indices, HyperSeq};
use crate::expr::BinOp;
use crate::numeric::{FieldConfig, Sign, Tag};

/// Equality of sequences on cofinite index sets (the Fréchet filter). The
/// mode is fixed: a free ultrafilter cannot be constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementPolicy {
    /// Largest index examined.
    pub cutoff: u64,
}

impl AgreementPolicy {
    pub fn new(cutoff: u64) -> AgreementPolicy {
        AgreementPolicy { cutoff: cutoff.max(2) }
    }

    pub fn from_config(cfg: &FieldConfig) -> AgreementPolicy {
        AgreementPolicy::new(cfg.sequence_cutoff)
    }

    pub fn mode(&self) -> &'static str {
        "FrechetFilter"
    }

    fn top(&self) -> u32 {
        63 - self.cutoff.leading_zeros()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Less,
    Greater,
    EventuallyEqual,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub verdict: Verdict,
    pub probe_indices: Vec<u64>,
    pub exception_set: Vec<u64>,
    pub dominance_pattern: String,
    /// First index of the sampled run with constant sign of `a - b`.
    pub sign_constant_from: Option<u64>,
    pub reason: String,
}

/// Eventual order of `a` and `b`. `Less`/`Greater` need both a sign of
/// `a - b` that is constant over the sampled tail and a closed-form
/// dominance pattern agreeing with it; `EventuallyEqual` needs the
/// difference to vanish identically. Everything else is `Undecided`.
pub fn hs_compare(a: &HyperSeq, b: &HyperSeq, policy: &AgreementPolicy) -> CompareReport {
    let mut report = CompareReport {
        verdict: Verdict::Undecided,
        probe_indices: Vec::new(),
        exception_set: Vec::new(),
        dominance_pattern: "none".into(),
        sign_constant_from: None,
        reason: String::new(),
    };
    let d = match HyperSeq::hs_arith(BinOp::Sub, a, b) {
        Ok(d) => d,
        Err(e) => {
            report.reason = format!("difference not formed: {e}");
            return report;
        }
    };
    let top = policy.top().min(d.top());
    report.probe_indices = probe_indices(top);
    let mut signs = Vec::with_capacity(report.probe_indices.len());
    for &n in &report.probe_indices {
        match d.term(n) {
            Ok(v) => signs.push(Sign::of(v.signum())),
            Err(e) => {
                report.reason = format!("term {n} of the difference failed: {e}");
                return report;
            }
        }
    }
    report.exception_set = d.exception_set().into_iter().collect();
    let last = *signs.last().expect("probe set is nonempty");
    let run = signs.iter().rev().take_while(|s| **s == last).count();
    let from = report.probe_indices[signs.len() - run];
    report.sign_constant_from = Some(from);

    let analysis = d.analyze();
    report.dominance_pattern = analysis.dominance_pattern.clone();
    if !analysis.symbolic {
        report.reason = format!(
            "no closed-form dominance pattern for the difference; sampled signs alone cannot exclude a sign change beyond index {}",
            policy.cutoff
        );
        return report;
    }
    let c = match analysis.classification {
        Ok(c) => c,
        Err(e) => {
            report.reason = e.to_string();
            return report;
        }
    };
    if c.tag == Tag::Zero {
        report.verdict = Verdict::EventuallyEqual;
        report.reason = "the difference vanishes identically".into();
        return report;
    }
    // the sampled constant-sign run must cover at least the top three probe triples
    let needed = 1u64 << top.saturating_sub(2);
    if c.sign != last || from > needed {
        report.reason = format!(
            "dominance pattern gives a {} difference but sampled signs up to {} do not settle on it",
            c.sign.word(),
            policy.cutoff
        );
        return report;
    }
    report.verdict = if c.sign == Sign::Negative { Verdict::Less } else { Verdict::Greater };
    report.reason = format!("difference is {} from index {from} on the samples and by its leading term", c.sign.word());
    report
}
