use serde::Serialize;

use super::hyperseq::HyperSeq;
use crate::error::{Error, Result};
use crate::expr::BinOp;
use crate::numeric::{Backend, Tag};

/// How a convergent sequence of rationals names a real, and why the same
/// quotient construction cannot be carried out computably for hyperreals.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub sequence: String,
    /// Decimal value of the represented real.
    pub represented_real: String,
    pub exact: Option<String>,
    pub tolerance: String,
    /// `a - ⟨st⟩`, the null sequence witnessing the coset.
    pub coset_witness: String,
    pub witness_class: String,
    pub dominance_pattern: String,
    pub explanation: Vec<String>,
}

pub fn hs_null_quotient_demo(a: &HyperSeq) -> Result<QuotientReport> {
    let cfg = a.cfg();
    let analysis = a.analyze();
    let not_cauchy = |why: String| Error::NotCauchy(format!("{a}: {why}"));
    match &analysis.classification {
        Ok(c) if c.tag == Tag::Infinite => return Err(not_cauchy(format!("the sequence is {c}"))),
        Ok(_) => {}
        Err(e) => return Err(not_cauchy(e.to_string())),
    }
    let st = analysis.st.map_err(|e| not_cauchy(e.to_string()))?;
    let digits = cfg.st_tolerance.to_f64().log10().abs().ceil() as u32 + 1;
    let witness = HyperSeq::hs_arith(BinOp::Sub, a, &HyperSeq::constant_seq(cfg, &st.value))?;
    let witness_class = match witness.classify() {
        Ok(c) if c.tag == Tag::Infinite || c.tag == Tag::Appreciable => {
            return Err(not_cauchy(format!("the coset witness is {c}, not null")));
        }
        Ok(c) => c.to_string(),
        Err(_) => "null to within tolerance (sign not decided)".to_string(),
    };
    let shown = if st.exact { st.value.to_string() } else { st.value.to_decimal(digits) };
    let coset_witness = if st.value.is_zero() { a.to_string() } else { format!("⟨{} - {}⟩", a.label(), shown) };
    let real = st.value.to_decimal(digits);
    Ok(QuotientReport {
        sequence: a.to_string(),
        represented_real: real.clone(),
        exact: st.exact.then(|| st.value.to_string()),
        tolerance: if st.exact { "0".into() } else { cfg.st_tolerance.to_string() },
        coset_witness: coset_witness.clone(),
        witness_class,
        dominance_pattern: analysis.dominance_pattern,
        explanation: vec![
            format!(
                "Reals as a quotient: {a} is Cauchy, and modulo the ideal of null sequences it is the class of the real {real}."
            ),
            format!("Its coset differs from the constant sequence by the null sequence {coset_witness}."),
            "Hyperreals use the same recipe on all real sequences, but divide by a maximal ideal that contains every finitely supported sequence.".into(),
            "Fixing that ideal is the same as fixing a free ultrafilter on the indices, and no free ultrafilter can be written down explicitly.".into(),
            "This tool works in the cofinite fragment: two sequences are identified only when they agree from some index on, and comparisons that depend on the ultrafilter are reported as Undecided.".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::numeric::{real, ExactRational, FieldConfig};

    fn seq(s: &str) -> HyperSeq {
        HyperSeq::parse(&Arc::new(FieldConfig::default()), s).unwrap()
    }

    #[test]
    fn euler_sequence_names_e() {
        let r = hs_null_quotient_demo(&seq("(1 + 1/n)^n")).unwrap();
        let e = real::exp(&ExactRational::one(), 60).unwrap();
        let got: ExactRational = r.represented_real.parse().unwrap();
        assert!((got - e).abs() < ExactRational::pow10_neg(9));
        assert!(r.represented_real.starts_with("2.718281828"));
    }

    #[test]
    fn null_sequence_is_its_own_witness() {
        let r = hs_null_quotient_demo(&seq("1/n")).unwrap();
        assert_eq!(r.exact.as_deref(), Some("0"));
        assert_eq!(r.coset_witness, "⟨1 / n⟩");
    }

    #[test]
    fn alternating_is_not_cauchy() {
        assert!(matches!(hs_null_quotient_demo(&seq("(-1)^n")), Err(Error::NotCauchy(_))));
        assert!(matches!(hs_null_quotient_demo(&seq("n")), Err(Error::NotCauchy(_))));
    }

    #[test]
    fn send_and_sync() {
        fn is<T: Send + Sync>() {}
        is::<HyperSeq>();
    }
}
