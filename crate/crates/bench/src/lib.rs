//! Fixed workloads shared by the benchmarks.

use std::sync::Arc;

pub use btrack_core::{Backend, ExactRational, FieldConfig, Func, HyperSeq, LcNumber, RatFunc};

pub fn config(truncation_order: usize) -> Arc<FieldConfig> {
    Arc::new(FieldConfig { truncation_order, ..FieldConfig::default() })
}

/// A dense series `1 + 2ε + 3ε² + … ` up to the truncation order.
pub fn dense_lc(cfg: &Arc<FieldConfig>) -> LcNumber {
    let terms = (0..cfg.truncation_order as i64).map(|i| (ExactRational::from(i), ExactRational::ratio(i + 1, i + 2)));
    LcNumber::from_terms(cfg, terms)
}

/// `(x^3 - 2x + 1) / (x^2 + 3)`.
pub fn sample_ratfunc(cfg: &Arc<FieldConfig>) -> RatFunc {
    let x = RatFunc::x(cfg);
    let c = |v: i64| RatFunc::constant(cfg, &ExactRational::from(v));
    let num = x.powi(3).unwrap().sub(&x.mul(&c(2)).unwrap()).unwrap().add(&c(1)).unwrap();
    let den = x.powi(2).unwrap().add(&c(3)).unwrap();
    num.div(&den).unwrap()
}
