//! Properties of the calculus layer against independent oracles: symbolic
//! differentiation, the real exponential, and exact decimal search.

mod common;

use common::*;
use proptest::prelude::*;

use btrack_core::calculus::{
    continuity_at, derivative, euler_exp, ivt_root, sum_theorem_probe, ContinuityVerdict, HyperOffset,
    SumTheoremVerdict,
};
use btrack_core::expr::{eval, symbolic_diff, Binding, Var};
use btrack_core::numeric::Real;
use btrack_core::{Error, Expr, Func, HyperNat, HyperSeq, LcNumber, RatFunc};

/// `f'(x0)` by symbolic differentiation and exact real evaluation.
fn oracle(f: &Expr, x0: &Q) -> Q {
    let cfg = cfg();
    eval(&symbolic_diff(f), &cfg, &Binding::x(Real::new(x0.clone(), &cfg))).unwrap().into_value()
}

/// A transcendental function composed with a polynomial whose values keep
/// `log` and `sqrt` inside their domains.
fn composition() -> impl Strategy<Value = Expr> {
    (prop::sample::select(vec![Func::Sin, Func::Cos, Func::Exp, Func::Log, Func::Sqrt]), polynomial_expr(2)).prop_map(
        |(f, p)| {
            let arg = match f {
                Func::Log | Func::Sqrt => Expr::add(Expr::num(4), Expr::mul(p.clone(), p)),
                _ => p,
            };
            Expr::call(f, arg)
        },
    )
}

fn unit_point() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=4).prop_map(|(p, d)| Q::ratio(p, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn polynomial_derivatives_match_oracle_exactly(f in polynomial_expr(6), x0 in small_q()) {
        let cfg = cfg();
        let expected = oracle(&f, &x0);
        let lc = derivative::<LcNumber>(&f, &x0, &cfg).unwrap();
        prop_assert_eq!(&lc.value, &expected);
        let rf = derivative::<RatFunc>(&f, &x0, &cfg).unwrap();
        prop_assert_eq!(&rf.value, &expected);
        // every probe increment yields the same standard part
        for p in &lc.probes {
            prop_assert_eq!(&p.st, &expected, "probe {}", p.label);
        }
        for p in &rf.probes {
            prop_assert_eq!(&p.st, &expected, "probe {}", p.label);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn transcendental_derivatives_match_oracle(f in composition(), x0 in unit_point()) {
        let cfg = cfg();
        let expected = oracle(&f, &x0);
        let d = derivative::<LcNumber>(&f, &x0, &cfg).unwrap();
        let tol = &cfg.coefficient_tolerance() * &(Q::one() + expected.abs());
        prop_assert!((&d.value - &expected).abs() < tol, "{} at {}: {} vs {}", f, x0, d.value, expected);
        for p in &d.probes {
            prop_assert!((&p.st - &d.value).abs() < tol, "probe {} disagrees", p.label);
        }
    }

    #[test]
    fn differentiable_implies_continuous(
        f in prop_oneof![polynomial_expr(4), composition(), polynomial_expr(2).prop_map(|p| Expr::call(Func::Abs, p))],
        x0 in unit_point(),
    ) {
        let cfg = cfg();
        if derivative::<LcNumber>(&f, &x0, &cfg).is_ok() {
            let c = continuity_at::<LcNumber>(&f, &x0, &cfg).unwrap();
            prop_assert_eq!(c.verdict, ContinuityVerdict::PassToOrder, "{} at {}", f, x0);
        }
    }

    #[test]
    fn sequence_derivatives_agree_with_oracle(f in polynomial_expr(3), x0 in unit_point()) {
        let cfg = cfg();
        let expected = oracle(&f, &x0);
        let d = derivative::<HyperSeq>(&f, &x0, &cfg).unwrap();
        prop_assert!((&d.value - &expected).abs() <= &Q::from(2) * &cfg.st_tolerance);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// On `[m, m + 1]` the search keeps the left endpoint on the decimal
    /// grid, so more digits only extend the reported prefix. `(x - r)(x^2 + c)`
    /// with `c > 0` has the single real root `r`; `(x - m)^2 - s/10` has the
    /// irrational root `m + sqrt(s/10)`.
    #[test]
    fn ivt_digits_extend_as_prefixes(
        m in 0i64..=20,
        frac in (1i64..=8, prop::sample::select(vec![3i64, 7, 9])).prop_filter("proper", |(p, q)| p < q && p % 3 != 0),
        c in 1i64..=5,
        s in prop::sample::select(vec![2i64, 3, 5, 6, 7]),
        irrational in prop::bool::ANY,
    ) {
        let cfg = cfg();
        let x = Expr::var(Var::X);
        let (a, b) = (Q::from(m), Q::from(m + 1));
        let r = &a + &Q::ratio(frac.0, frac.1);
        let f = if irrational {
            Expr::sub(Expr::powq(Expr::sub(x, Expr::Num(a.clone())), 2), Expr::Num(Q::ratio(s, 10)))
        } else {
            Expr::mul(Expr::sub(x.clone(), Expr::Num(r.clone())), Expr::add(Expr::powq(x, 2), Expr::num(c)))
        };
        let six = ivt_root(&f, &a, &b, 6, &cfg).unwrap();
        let ten = ivt_root(&f, &a, &b, 10, &cfg).unwrap();
        prop_assert!(!six.exact_hit && !ten.exact_hit);
        prop_assert!(ten.decimal.starts_with(&six.decimal), "{} then {}", six.decimal, ten.decimal);
        // the reported digits are the truncation of the root
        if !irrational {
            prop_assert_eq!(&six.decimal, &r.to_decimal_floor(6));
            prop_assert_eq!(&ten.decimal, &r.to_decimal_floor(10));
        }
    }

    #[test]
    fn euler_exponential_matches_exp(k in (-3i64..=3, 1i64..=2), z in (-3i64..=3, 1i64..=2)) {
        let (k, z) = (Q::ratio(k.0, k.1), Q::ratio(z.0, z.1));
        prop_assume!((&k * &z).abs() <= 3);
        let e = euler_exp(&k, &z, &HyperNat::identity(&cfg())).unwrap();
        prop_assert!(e.difference() < cfg().st_tolerance, "{} vs {}", e.estimate.value, e.oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn geometric_series_never_witness_non_uniformity(
        c in nonzero_q(),
        x0 in (0i64..=4).prop_map(|p| Q::ratio(p, 8)),
        offset in prop::sample::select(vec!["-1/N", "+1/N", "-2/N", "1/N"]),
    ) {
        // c·x^k on [0, 1/2]: the ratio x stays at most 1/2 + 1/N
        let term = Expr::mul(Expr::Num(c), Expr::Pow(Box::new(Expr::var(Var::X)), btrack_core::expr::Power::Var(Var::K)));
        let offset = HyperOffset::parse(offset).unwrap();
        let r = sum_theorem_probe(&term, &x0, &offset, &HyperNat::identity(&cfg()));
        match r {
            Ok(report) => prop_assert_ne!(report.verdict, SumTheoremVerdict::NonUniformWitness),
            // a probe point left of 0 can fall outside a domain; never a witness
            Err(e) => prop_assert!(matches!(e, Error::Domain(_)), "{}", e),
        }
    }
}
