use std::fmt;
use std::sync::Arc;

use super::hyperseq::{probe_indices, HyperSeq};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::numeric::{Backend, FieldConfig, Sign, Tag};

/// An infinite hyperinteger: a sequence of positive integers that is
/// nondecreasing and unbounded, checked on the probe indices.
#[derive(Clone, Debug)]
pub struct HyperNat {
    seq: HyperSeq,
}

impl HyperNat {
    pub fn new(seq: HyperSeq) -> Result<HyperNat> {
        let bad = |why: String| Error::Domain(format!("{seq} is not an infinite hyperinteger: {why}"));
        let mut last = 0u64;
        for n in probe_indices(seq.cfg().cutoff_log2()) {
            let v = seq.term(n)?;
            let k = v
                .to_i64()
                .filter(|k| *k >= 1 && v.is_integer())
                .ok_or_else(|| bad(format!("term {n} is {v}, not a positive integer")))? as u64;
            if k < last {
                return Err(bad(format!("term {n} = {k} is smaller than an earlier term {last}")));
            }
            last = k;
        }
        match seq.classify() {
            Ok(c) if c.tag == Tag::Infinite && c.sign == Sign::Positive => Ok(HyperNat { seq }),
            Ok(c) => Err(bad(format!("it is {c}, not unbounded"))),
            Err(e) => Err(bad(format!("unboundedness not established ({e})"))),
        }
    }

    /// `⟨n⟩`.
    pub fn identity(cfg: &Arc<FieldConfig>) -> HyperNat {
        HyperNat { seq: HyperSeq::index(cfg) }
    }

    pub fn from_expr(cfg: &Arc<FieldConfig>, rule: &Expr) -> Result<HyperNat> {
        HyperNat::new(HyperSeq::from_expr(cfg, rule)?)
    }

    pub fn parse(cfg: &Arc<FieldConfig>, text: &str) -> Result<HyperNat> {
        HyperNat::from_expr(cfg, &crate::expr::parse(text)?)
    }

    pub fn seq(&self) -> &HyperSeq {
        &self.seq
    }

    /// `N(n)`.
    pub fn at(&self, n: u64) -> Result<u64> {
        let v = self.seq.term(n)?;
        match v.to_i64() {
            Some(k) if k >= 1 && v.is_integer() => Ok(k as u64),
            _ => Err(Error::Domain(format!("{} at index {n} is {v}, not a positive integer", self.seq))),
        }
    }
}

impl fmt::Display for HyperNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.seq, f)
    }
}
