//! Generators shared by the property suites.
#![allow(dead_code)]

use std::sync::Arc;

use btrack_core::expr::{BinOp, Power, Var};
use btrack_core::ratfunc::Poly;
use btrack_core::{ExactRational, Expr, FieldConfig, Func, LcNumber, RatFunc};
use proptest::prelude::*;

pub type Q = ExactRational;

pub fn cfg() -> Arc<FieldConfig> {
    Arc::new(FieldConfig::default())
}

pub fn q(s: &str) -> Q {
    s.parse().unwrap()
}

/// Small rationals `p/q` with `|p| ≤ 12`, `1 ≤ q ≤ 6`.
pub fn small_q() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, d)| Q::ratio(p, d))
}

pub fn nonzero_q() -> impl Strategy<Value = Q> {
    small_q().prop_filter("nonzero", |x| !x.is_zero())
}

/// Exponents `p/d` with `-2 ≤ p/d ≤ 3`, `d ∈ {1, 2, 3}`.
pub fn exponent(min: i64) -> impl Strategy<Value = Q> {
    (1i64..=3).prop_flat_map(move |d| (min * d..=3 * d).prop_map(move |p| Q::ratio(p, d)))
}

fn lc_with(min_exp: i64, max_terms: usize) -> impl Strategy<Value = LcNumber> {
    prop::collection::vec((exponent(min_exp), nonzero_q()), 0..=max_terms)
        .prop_map(|terms| LcNumber::from_terms(&cfg(), terms))
}

/// Levi-Civita numbers with at most three terms and exponents in [-2, 3].
pub fn lc() -> impl Strategy<Value = LcNumber> {
    lc_with(-2, 3)
}

/// Finite Levi-Civita numbers (no negative exponents).
pub fn lc_finite() -> impl Strategy<Value = LcNumber> {
    lc_with(0, 3)
}

pub fn lc_nonzero() -> impl Strategy<Value = LcNumber> {
    lc().prop_filter("nonzero", |x| !x.is_zero())
}

/// Nonzero infinitesimal: leading exponent strictly positive.
pub fn lc_infinitesimal() -> impl Strategy<Value = LcNumber> {
    (exponent(0).prop_filter("positive", |e| e.is_positive()), nonzero_q(), lc_finite()).prop_map(|(e, c, tail)| {
        let lead = LcNumber::monomial(&cfg(), c, e.clone());
        let tail = tail.lc_mul(&LcNumber::monomial(&cfg(), Q::one(), e));
        lead.lc_add(&tail.lc_mul(&LcNumber::eps(&cfg())))
    })
}

/// Appreciable: nonzero standard part.
pub fn lc_appreciable() -> impl Strategy<Value = LcNumber> {
    (nonzero_q(), lc_finite())
        .prop_map(|(c, rest)| LcNumber::monomial(&cfg(), c, Q::zero()).lc_add(&rest.lc_mul(&LcNumber::eps(&cfg()))))
}

/// Infinite: leading exponent strictly negative.
pub fn lc_infinite() -> impl Strategy<Value = LcNumber> {
    (exponent(-2).prop_filter("negative", |e| e.is_negative()), nonzero_q(), lc_finite())
        .prop_map(|(e, c, rest)| LcNumber::monomial(&cfg(), c, e).lc_add(&rest))
}

pub fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_q(), 1..=max_degree + 1).prop_map(Poly::new)
}

/// Rational functions with numerator and denominator of degree at most 2.
pub fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(2), poly(2).prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| RatFunc::new(&cfg(), n, d).unwrap())
}

pub fn ratfunc_nonzero() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("nonzero", |r| !r.is_zero())
}

/// Non-negative literals the parser can produce: integers and terminating
/// decimals.
fn literal() -> impl Strategy<Value = Q> {
    prop_oneof![
        (0i64..=1000).prop_map(Q::from),
        (0i64..=9999, prop::sample::select(vec![10i64, 100, 4, 8])).prop_map(|(p, d)| Q::ratio(p, d)),
    ]
}

/// Abstract syntax trees of depth at most `depth`, in the shapes the parser
/// produces (non-negative literals, negation as a node).
pub fn ast(depth: u32) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        literal().prop_map(Expr::Num),
        prop::sample::select(vec![Var::X, Var::N, Var::K]).prop_map(Expr::Var),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        let op = prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div]);
        let power = prop_oneof![
            (-9i64..=9, 1i64..=4).prop_map(|(p, d)| Power::Rational(Q::ratio(p, d))),
            prop::sample::select(vec![Var::X, Var::N, Var::K]).prop_map(Power::Var),
        ];
        prop_oneof![
            inner.clone().prop_map(Expr::neg),
            (op, inner.clone(), inner.clone()).prop_map(|(op, a, b)| Expr::bin(op, a, b)),
            (inner.clone(), power).prop_map(|(a, p)| Expr::Pow(Box::new(a), p)),
            (prop::sample::select(Func::ALL.to_vec()), inner).prop_map(|(f, a)| Expr::call(f, a)),
        ]
    })
}

pub fn depth(e: &Expr) -> u32 {
    match e {
        Expr::Num(_) | Expr::Var(_) => 0,
        Expr::Neg(a) | Expr::Call(_, a) | Expr::Pow(a, _) => 1 + depth(a),
        Expr::Bin(_, a, b) => 1 + depth(a).max(depth(b)),
    }
}

/// Polynomial in `x` with rational coefficients, as an expression in
/// Horner-free monomial form.
pub fn polynomial_expr(max_degree: usize) -> impl Strategy<Value = Expr> {
    prop::collection::vec(small_q(), 1..=max_degree + 1).prop_map(|coeffs| {
        let x = Expr::var(Var::X);
        coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| Expr::mul(Expr::Num(c), Expr::powq(x.clone(), i as i64)))
            .reduce(Expr::add)
            .unwrap()
    })
}
