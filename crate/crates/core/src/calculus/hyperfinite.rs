use super::report::{NumberFormat, Report};
use crate::error::{Error, Result};
use crate::expr::{BinOp, Expr};
use crate::numeric::{real, Backend, ExactRational};
use crate::omega::{Analysis, HyperNat, HyperSeq, StEstimate};

type Q = ExactRational;

/// A hyperfinite sum or product together with its analysis.
#[derive(Clone, Debug)]
pub struct Hyperfinite {
    pub operation: &'static str,
    pub term: Expr,
    pub count: HyperNat,
    pub seq: HyperSeq,
    pub analysis: Analysis,
}

impl Hyperfinite {
    pub fn report(&self, fmt: NumberFormat) -> Report {
        let a = &self.analysis;
        let verdict = match &a.classification {
            Ok(c) => c.to_string(),
            Err(e) => e.name().to_string(),
        };
        let mut r = Report::new(self.operation, verdict)
            .input("term", &self.term)
            .input("N", &self.count)
            .value("sequence", &self.seq)
            .value("dominance_pattern", &a.dominance_pattern)
            .tolerance("st_tolerance", &self.seq.cfg().st_tolerance);
        match &a.st {
            Ok(st) => {
                r = r
                    .value("st", fmt.show(&st.value))
                    .value("st_exact", st.exact)
                    .value("st_error", fmt.show(&st.error));
            }
            Err(e) => r = r.value("st", e.name()),
        }
        if let Err(e) = &a.classification {
            r = r.value("reason", e);
        }
        r
    }
}

/// `⟨Σ_{k=1}^{N(n)} term(k)⟩`.
pub fn hyperfinite_sum(term: &Expr, count: &HyperNat) -> Result<Hyperfinite> {
    let seq = HyperSeq::hyperfinite_sum(term, count)?;
    let analysis = seq.analyze();
    Ok(Hyperfinite { operation: "hyperfinite_sum", term: term.clone(), count: count.clone(), seq, analysis })
}

/// `⟨Π_{k=1}^{N(n)} term(k)⟩`.
pub fn hyperfinite_product(term: &Expr, count: &HyperNat) -> Result<Hyperfinite> {
    let seq = HyperSeq::hyperfinite_product(term, count)?;
    let analysis = seq.analyze();
    Ok(Hyperfinite { operation: "hyperfinite_product", term: term.clone(), count: count.clone(), seq, analysis })
}

/// `(1 + kz/N)^N` with its standard part estimated from the sampled tail,
/// checked against the exponential computed directly.
#[derive(Clone, Debug)]
pub struct EulerExp {
    pub k: Q,
    pub z: Q,
    pub count: HyperNat,
    pub seq: HyperSeq,
    pub estimate: StEstimate,
    /// `exp(kz)` by series at working precision.
    pub oracle: Q,
    pub tolerance: Q,
}

impl EulerExp {
    pub fn difference(&self) -> Q {
        (&self.estimate.value - &self.oracle).abs()
    }

    pub fn within_tolerance(&self) -> bool {
        self.difference() < self.tolerance
    }

    pub fn report(&self, fmt: NumberFormat) -> Report {
        let digits = self.seq.cfg().working_precision;
        Report::new("euler_exp", if self.within_tolerance() { "Match" } else { "Mismatch" })
            .input("k", &self.k)
            .input("z", &self.z)
            .input("N", &self.count)
            .value("sequence", &self.seq)
            .value("st", fmt.show(&self.estimate.value))
            .value("st_decimal", self.estimate.value.to_decimal(digits))
            .value("exp_kz", self.oracle.to_decimal(digits))
            .value("difference", self.difference().to_decimal(digits))
            .value("extrapolation_error", self.estimate.error.to_decimal(digits))
            .tolerance("st_tolerance", &self.tolerance)
    }
}

fn constant(count: &HyperNat, q: &Q) -> HyperSeq {
    HyperSeq::constant_seq(count.seq().cfg(), q)
}

pub fn euler_exp(k: &Q, z: &Q, count: &HyperNat) -> Result<EulerExp> {
    let cfg = count.seq().cfg();
    let kz = k * z;
    let n = count.seq();
    let base = HyperSeq::hs_arith(BinOp::Add, &constant(count, &Q::one()), &constant(count, &kz).div(n)?)?;
    let seq = HyperSeq::pow_seq(&base, n)?;
    // the closed form would hand the limit to the exponential itself, so the
    // estimate comes from the terms alone
    let estimate = seq.numeric_analysis().st.map_err(|e| match e {
        Error::Undecided(why) => Error::Undecided(format!("standard part of {seq} does not stabilize: {why}")),
        other => other,
    })?;
    let oracle = real::exp(&kz, cfg.digits())?;
    Ok(EulerExp {
        k: k.clone(),
        z: z.clone(),
        count: count.clone(),
        seq,
        estimate,
        oracle,
        tolerance: cfg.st_tolerance.clone(),
    })
}

/// `C(N, r) (kz/N)^r`, one term of the binomial expansion of
/// `(1 + kz/N)^N`.
#[derive(Clone, Debug)]
pub struct BinomialTerm {
    pub r: u32,
    pub seq: HyperSeq,
    pub st: StEstimate,
}

pub fn euler_binomial_expand(k: &Q, z: &Q, count: &HyperNat, m: u32) -> Result<Vec<BinomialTerm>> {
    let n = count.seq();
    let top = 1u64 << n.top();
    let available = count.at(top)?;
    if m == 0 || u64::from(m) > available {
        return Err(Error::Domain(format!(
            "term count {m} must lie in 1..={available} (N at the top probe index {top})"
        )));
    }
    let step = constant(count, &(k * z)).div(n)?;
    let mut out = Vec::with_capacity(m as usize);
    for r in 0..m {
        // C(N, r) = Π_{i<r} (N - i) / (i + 1)
        let mut choose = constant(count, &Q::one());
        for i in 0..r {
            let factor =
                n.sub(&constant(count, &Q::from(i64::from(i))))?.div(&constant(count, &Q::from(i64::from(i) + 1)))?;
            choose = choose.mul(&factor)?;
        }
        let seq = choose.mul(&step.powi(i64::from(r))?)?;
        let st = seq.st_estimate()?;
        out.push(BinomialTerm { r, seq, st });
    }
    Ok(out)
}

pub fn binomial_report(k: &Q, z: &Q, count: &HyperNat, terms: &[BinomialTerm], fmt: NumberFormat) -> Report {
    let all_exact = terms.iter().all(|t| t.st.exact);
    let mut r = Report::new("euler_binomial_expand", if all_exact { "Exact" } else { "Estimated" })
        .input("k", k)
        .input("z", z)
        .input("N", count)
        .input("m", terms.len());
    for t in terms {
        r = r.probe([
            ("r", t.r.to_string()),
            ("term", t.seq.to_string()),
            ("st", fmt.show(&t.st.value)),
            ("exact", t.st.exact.to_string()),
        ]);
    }
    r
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::expr::parse;
    use crate::numeric::{FieldConfig, Tag};

    fn n() -> HyperNat {
        HyperNat::identity(&Arc::new(FieldConfig::default()))
    }

    #[test]
    fn geometric_sum_and_counting() {
        let h = hyperfinite_sum(&parse("(1/2)^k").unwrap(), &n()).unwrap();
        let st = h.analysis.st.unwrap();
        assert!((st.value - Q::one()).abs() < n().seq().cfg().st_tolerance);
        let h = hyperfinite_sum(&parse("1").unwrap(), &n()).unwrap();
        assert_eq!(h.analysis.classification.unwrap().tag, Tag::Infinite);
    }

    #[test]
    fn products() {
        let h = hyperfinite_product(&parse("1 - 1/(k+1)^2").unwrap(), &n()).unwrap();
        assert!((h.analysis.st.unwrap().value - Q::ratio(1, 2)).abs() < n().seq().cfg().st_tolerance);
        let h = hyperfinite_product(&parse("1 + 1/k").unwrap(), &n()).unwrap();
        assert_eq!(h.analysis.classification.unwrap().tag, Tag::Infinite);
    }

    #[test]
    fn euler_exponential() {
        for (z, want) in [(1, "2.718281828"), (-1, "0.367879441")] {
            let e = euler_exp(&Q::one(), &Q::from(z), &n()).unwrap();
            assert!(e.within_tolerance(), "z = {z}: {}", e.difference());
            assert_eq!(e.estimate.value.to_decimal_floor(9), want);
        }
        let e = euler_exp(&Q::zero(), &Q::from(5), &n()).unwrap();
        assert_eq!(e.estimate.value, Q::one());
    }

    #[test]
    fn binomial_terms() {
        let t = euler_binomial_expand(&Q::one(), &Q::one(), &n(), 3).unwrap();
        assert_eq!(t[0].st.value, Q::one());
        assert_eq!(t[2].st.value, Q::ratio(1, 2));
        assert!(t.iter().all(|t| t.st.exact));
        let t = euler_binomial_expand(&Q::one(), &Q::from(2), &n(), 4).unwrap();
        assert_eq!(t[3].st.value, Q::ratio(4, 3));
        assert_eq!(euler_binomial_expand(&Q::one(), &Q::one(), &n(), 0).unwrap_err().name(), "DomainError");
    }
}
