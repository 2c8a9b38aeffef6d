//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one PASS/FAIL line. Built without the libtest harness so the verdict
//! lines always reach the terminal; exits non-zero if any criterion fails.
//!
//! Numeric oracles here are independent of the engine: exact-rational
//! Taylor series and Newton square roots, Horner evaluation of polynomial
//! derivatives, and direct evaluation of rational sequence rules.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use btrack_core::calculus::{
    derivative, euler_binomial_expand, euler_exp, ivt_root, sum_theorem_probe, uniform_continuity_probe,
    ContinuityVerdict, HyperOffset, SumTheoremVerdict,
};
use btrack_core::expr::{eval, BinOp, Binding, Power, Var};
use btrack_core::omega::{hs_compare, AgreementPolicy, Verdict};
use btrack_core::ratfunc::Poly;
use btrack_core::{
    parse, Backend, ExactRational, Expr, FieldConfig, Func, HyperNat, HyperSeq, LcNumber, RatFunc, Sign, Tag,
};

type Q = ExactRational;
type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn cfg() -> Arc<FieldConfig> {
    Arc::new(FieldConfig::default())
}

fn ok<T>(r: btrack_core::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn sci(q: &Q) -> String {
    format!("{:.1e}", q.to_f64())
}

// ---- independent oracles -------------------------------------------------

/// Bits kept by the oracle series; far beyond every tolerance checked here.
const ORACLE_BITS: u64 = 480;

fn oracle_cut() -> Q {
    Q::pow10_neg(90)
}

/// `Σ sign^i u^(start + step·i) / (start + step·i)!` until terms fall
/// below the cut.
fn taylor(u: &Q, start: u32, step: u32, alternating: bool) -> Q {
    let mut term = u.powi(i64::from(start)).unwrap();
    for j in 1..=start {
        term = term.checked_div(&Q::from(i64::from(j))).unwrap();
    }
    let mut sum = Q::zero();
    let mut n = start;
    let mut negative = false;
    loop {
        sum = if negative { &sum - &term } else { &sum + &term }.round_significant(ORACLE_BITS);
        if term.abs() < oracle_cut() && n > 1 {
            return sum;
        }
        for _ in 0..step {
            n += 1;
            term = (&term * u).checked_div(&Q::from(i64::from(n))).unwrap().round_significant(ORACLE_BITS);
        }
        negative ^= alternating;
    }
}

fn exp_oracle(u: &Q) -> Q {
    taylor(u, 0, 1, false)
}

fn sin_oracle(u: &Q) -> Q {
    taylor(u, 1, 2, true)
}

fn cos_oracle(u: &Q) -> Q {
    taylor(u, 0, 2, true)
}

/// Newton iteration for `sqrt(u)`, `u > 0`.
fn sqrt_oracle(u: &Q) -> Q {
    let two = Q::from(2);
    let mut s = (u + &Q::one()).checked_div(&two).unwrap();
    for _ in 0..60 {
        s = (&s + &u.checked_div(&s).unwrap()).checked_div(&two).unwrap().round_significant(ORACLE_BITS);
    }
    s
}

/// `p(x0)` and `p'(x0)` by Horner's rule on coefficients (constant first).
fn horner(coeffs: &[Q], x0: &Q) -> (Q, Q) {
    let mut value = Q::zero();
    let mut slope = Q::zero();
    for c in coeffs.iter().rev() {
        slope = &(&slope * x0) + &value;
        value = &(&value * x0) + c;
    }
    (value, slope)
}

fn polynomial(coeffs: &[Q], var: Var) -> Expr {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| Expr::mul(Expr::Num(c.clone()), Expr::powq(Expr::var(var), i as i64)))
        .reduce(Expr::add)
        .unwrap()
}

fn rational(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Q {
    Q::ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=max_den))
}

fn nonzero_rational(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Q {
    loop {
        let q = rational(rng, bound, max_den);
        if !q.is_zero() {
            return q;
        }
    }
}

// ---- criteria ------------------------------------------------------------

fn derivative_correctness() -> Outcome {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..50 {
        let degree = rng.gen_range(0..=6);
        let coeffs: Vec<Q> = (0..=degree).map(|_| rational(&mut rng, 12, 6)).collect();
        let x0 = rational(&mut rng, 12, 6);
        let f = polynomial(&coeffs, Var::X);
        let (_, expected) = horner(&coeffs, &x0);
        let lc = ok(derivative::<LcNumber>(&f, &x0, &cfg), "LC derivative")?.value;
        ensure!(lc == expected, "LC d/dx {f} at {x0}: {lc} != {expected}");
        let rf = ok(derivative::<RatFunc>(&f, &x0, &cfg), "RatFunc derivative")?.value;
        ensure!(rf == expected, "RatFunc d/dx {f} at {x0}: {rf} != {expected}");
    }

    // f(v(x)) with v linear; log and sqrt see 4 + v^2 so they stay in domain
    let tol = Q::pow10_neg(45);
    let mut worst = Q::zero();
    for f in [Func::Sin, Func::Cos, Func::Exp, Func::Log, Func::Sqrt] {
        for _ in 0..10 {
            let (a, b) = (nonzero_rational(&mut rng, 4, 2), rational(&mut rng, 4, 2));
            let x0 = rational(&mut rng, 4, 4);
            let v = Expr::add(Expr::mul(Expr::Num(a.clone()), Expr::var(Var::X)), Expr::Num(b.clone()));
            let v0 = &(&a * &x0) + &b;
            let (arg, u, du) = match f {
                Func::Log | Func::Sqrt => {
                    (Expr::add(Expr::num(4), Expr::powq(v, 2)), &Q::from(4) + &(&v0 * &v0), &Q::from(2) * &(&v0 * &a))
                }
                _ => (v, v0, a),
            };
            let outer = match f {
                Func::Sin => cos_oracle(&u),
                Func::Cos => -sin_oracle(&u),
                Func::Exp => exp_oracle(&u),
                Func::Log => u.recip().unwrap(),
                _ => Q::one().checked_div(&(&Q::from(2) * &sqrt_oracle(&u))).unwrap(),
            };
            let expected = &outer * &du;
            let e = Expr::call(f, arg);
            let got = ok(derivative::<LcNumber>(&e, &x0, &cfg), "LC derivative")?.value;
            let err = (&got - &expected).abs();
            ensure!(err < tol, "d/dx {e} at {x0}: error {} exceeds 1e-45", sci(&err));
            if err > worst {
                worst = err;
            }
        }
    }
    Ok(format!("50 polynomials exact on LC and RatFunc; 50 compositions, max error {} < 1e-45", sci(&worst)))
}

fn transfer_spot_check() -> Outcome {
    let cfg = cfg();
    let f = parse("sin(x)^2 + cos(x)^2 - 1").unwrap();
    let eps = LcNumber::eps(&cfg);
    let points = [
        ("eps", eps.clone()),
        ("1+eps", LcNumber::constant(&cfg, &Q::one()).lc_add(&eps)),
        (
            "1/3+2eps^2",
            LcNumber::constant(&cfg, &Q::ratio(1, 3)).lc_add(&LcNumber::monomial(&cfg, Q::from(2), Q::from(2))),
        ),
    ];
    let tol = Q::pow10_neg(45);
    let mut worst = Q::zero();
    for (name, x) in points {
        let r = ok(eval(&f, &cfg, &Binding::x(x)), name)?;
        for (e, c) in r.terms() {
            ensure!(c.abs() < tol, "at {name}: coefficient {} at exponent {e}", sci(c));
        }
        worst = worst.max(r.max_coefficient());
    }
    Ok(format!("3 points, max retained coefficient {} < 1e-45", sci(&worst)))
}

fn infinitesimal_ordering() -> Outcome {
    let cfg = cfg();
    let a = HyperSeq::parse(&cfg, "1/n").unwrap();
    let b = HyperSeq::parse(&cfg, "1/n^2").unwrap();
    for s in [&a, &b] {
        let c = ok(s.classify(), "classify")?;
        ensure!(c.tag == Tag::Infinitesimal && c.sign == Sign::Positive, "{s} classified as {c:?}");
    }
    let v = hs_compare(&b, &a, &AgreementPolicy::from_config(&cfg)).verdict;
    ensure!(v == Verdict::Less, "compare(1/n^2, 1/n) = {v:?}");
    let eps = LcNumber::eps(&cfg);
    let chain = [
        eps.lc_mul(&eps),
        eps.clone(),
        LcNumber::constant(&cfg, &Q::ratio(1, 1_000_000)),
        LcNumber::monomial(&cfg, Q::one(), Q::from(-1)),
    ];
    for w in chain.windows(2) {
        ensure!(w[0] < w[1], "{} is not below {}", w[0], w[1]);
    }
    Ok("<1/n> and <1/n^2> infinitesimal, <1/n^2> < <1/n>; eps^2 < eps < 1e-6 < 1/eps".into())
}

fn euler_exponential() -> Outcome {
    let cfg = cfg();
    let count = HyperNat::identity(&cfg);
    let ks = [Q::ratio(-3, 2), Q::from(-1), Q::ratio(1, 2), Q::one(), Q::ratio(3, 2)];
    let zs = [Q::from(-2), Q::from(-1), Q::ratio(1, 2), Q::one(), Q::from(2)];
    let mut worst = Q::zero();
    for k in &ks {
        for z in &zs {
            let kz = k * z;
            let e = ok(euler_exp(k, z, &count), "euler_exp")?;
            let err = (&e.estimate.value - &exp_oracle(&kz)).abs();
            ensure!(err < cfg.st_tolerance, "k={k}, z={z}: error {}", sci(&err));
            worst = worst.max(err);
            let terms = ok(euler_binomial_expand(k, z, &count, 7), "binomial expansion")?;
            let mut factorial = Q::one();
            for t in &terms {
                if t.r > 0 {
                    factorial = &factorial * &Q::from(i64::from(t.r));
                }
                let expected = kz.powi(i64::from(t.r)).unwrap().checked_div(&factorial).unwrap();
                ensure!(t.st.exact, "k={k}, z={z}: binomial term {} is not exact", t.r);
                ensure!(
                    t.st.value == expected,
                    "k={k}, z={z}: term {} has st {}, expected {expected}",
                    t.r,
                    t.st.value
                );
            }
        }
    }
    Ok(format!("25 grid points, max |st - exp(kz)| {} < 1e-9; binomial terms r <= 6 exact", sci(&worst)))
}

fn ivt_subdivision() -> Outcome {
    let cfg = cfg();
    let f = parse("x^2 - 2").unwrap();
    let start = Instant::now();
    let six = ok(ivt_root(&f, &Q::one(), &Q::from(2), 6, &cfg), "ivt 6")?;
    let ten = ok(ivt_root(&f, &Q::one(), &Q::from(2), 10, &cfg), "ivt 10")?;
    let elapsed = start.elapsed();
    ensure!(six.decimal == "1.414213", "6 digits: {}", six.decimal);
    ensure!(ten.decimal == "1.4142135623", "10 digits: {}", ten.decimal);
    ensure!(ten.decimal.starts_with(&six.decimal), "not prefix-consistent");
    // oracle: d^2 <= 2 < (d + 10^-digits)^2
    for (d, digits) in [(&six.decimal, 6), (&ten.decimal, 10)] {
        let lo: Q = d.parse().unwrap();
        let hi = &lo + &Q::pow10_neg(digits);
        ensure!(&lo * &lo <= 2 && &hi * &hi > 2, "{d} does not bracket sqrt 2");
    }
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("1.414213 -> 1.4142135623 in {elapsed:.0?}"))
}

fn sum_theorem() -> Outcome {
    let count = HyperNat::identity(&cfg());
    let term = parse("x^k*(1-x)").unwrap();
    let r = ok(sum_theorem_probe(&term, &Q::one(), &HyperOffset::parse("-1/N").unwrap(), &count), "x^k(1-x)")?;
    ensure!(r.verdict == SumTheoremVerdict::NonUniformWitness, "x^k(1-x) at 1 - 1/N: {:?}", r.verdict);
    let st = r.probes[0].st.clone().ok_or("remainder has no standard part")?;
    let err = (&st - &exp_oracle(&Q::from(-1))).abs();
    ensure!(err < Q::pow10_neg(6), "remainder st {} is {} from 1/e", st.to_decimal(10), sci(&err));

    let geometric = parse("x^k").unwrap();
    let mut probes = 0;
    for (x0, offset) in
        [(Q::zero(), "+1/N"), (Q::ratio(1, 4), "-1/N"), (Q::ratio(1, 4), "+1/N"), (Q::ratio(1, 2), "-1/N")]
    {
        let r = ok(sum_theorem_probe(&geometric, &x0, &HyperOffset::parse(offset).unwrap(), &count), "x^k")?;
        ensure!(r.verdict == SumTheoremVerdict::UniformEvidence, "x^k at {x0} {offset}: {:?}", r.verdict);
        probes += 1;
    }
    Ok(format!(
        "x^k(1-x) at 1 - 1/N: NonUniformWitness, st {} (|st - 1/e| = {}); x^k UniformEvidence at {probes} points of [0, 1/2]",
        st.to_decimal(8),
        sci(&err)
    ))
}

fn uniform_continuity() -> Outcome {
    let cfg = cfg();
    let r = ok(uniform_continuity_probe(&parse("1/x").unwrap(), &Q::zero(), &Q::one(), &cfg), "1/x")?;
    ensure!(r.verdict == ContinuityVerdict::Fail, "1/x on (0, 1): {:?}", r.verdict);
    let w = r.witness().ok_or("no witness")?;
    ensure!(w.point == "0 + eps", "witness at {}", w.point);
    ensure!(w.st == Some(-Q::one()), "increment st {:?}", w.st);
    let s = ok(uniform_continuity_probe(&parse("x^2").unwrap(), &Q::zero(), &Q::one(), &cfg), "x^2")?;
    ensure!(s.verdict == ContinuityVerdict::PassToOrder, "x^2 on (0, 1): {:?}", s.verdict);
    Ok(format!("1/x fails at 0 + eps (alpha = {}, st = -1); x^2 passes", w.alpha))
}

// ---- ordered-field suite -------------------------------------------------

fn random_lc(rng: &mut ChaCha8Rng, cfg: &Arc<FieldConfig>) -> LcNumber {
    let n = rng.gen_range(0..=3);
    let terms: Vec<(Q, Q)> = (0..n)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            (Q::ratio(rng.gen_range(-2 * d..=3 * d), d), nonzero_rational(rng, 12, 6))
        })
        .collect();
    LcNumber::from_terms(cfg, terms)
}

fn random_ratfunc(rng: &mut ChaCha8Rng, cfg: &Arc<FieldConfig>) -> RatFunc {
    let poly = |rng: &mut ChaCha8Rng| Poly::new((0..rng.gen_range(1..=3)).map(|_| rational(rng, 12, 6)).collect());
    let num = poly(rng);
    loop {
        let den = poly(rng);
        if !den.is_zero() {
            return RatFunc::new(cfg, num, den).unwrap();
        }
    }
}

fn sign<B: Backend>(x: &B) -> Sign {
    x.classify().unwrap().sign
}

fn less<B: Backend>(a: &B, b: &B) -> bool {
    sign(&a.sub(b).unwrap()) == Sign::Negative
}

/// Field and order axioms on one triple; returns the number of checks made.
fn axioms<B: Backend>(a: &B, b: &B, c: &B, same: impl Fn(&B, &B) -> bool) -> Result<usize, String> {
    let cfg = a.config().clone();
    let zero = B::constant(&cfg, &Q::zero());
    let one = B::constant(&cfg, &Q::one());
    let add = |x: &B, y: &B| x.add(y).unwrap();
    let mul = |x: &B, y: &B| x.mul(y).unwrap();
    let mut checks = 0;
    let mut check = |holds: bool, law: &str| {
        checks += 1;
        if holds {
            Ok(())
        } else {
            Err(format!("{law} fails for a = {a}, b = {b}, c = {c}"))
        }
    };
    check(same(&add(&add(a, b), c), &add(a, &add(b, c))), "additive associativity")?;
    check(same(&add(a, b), &add(b, a)), "additive commutativity")?;
    check(same(&add(a, &zero), a), "additive identity")?;
    check(same(&add(a, &a.neg()), &zero), "additive inverse")?;
    check(same(&mul(&mul(a, b), c), &mul(a, &mul(b, c))), "multiplicative associativity")?;
    check(same(&mul(a, b), &mul(b, a)), "multiplicative commutativity")?;
    check(same(&mul(a, &one), a), "multiplicative identity")?;
    check(same(&mul(a, &add(b, c)), &add(&mul(a, b), &mul(a, c))), "distributivity")?;
    if sign(b) == Sign::Zero {
        check(a.div(b).is_err(), "division by zero is an error")?;
    } else {
        check(same(&mul(b, &one.div(b).unwrap()), &one), "multiplicative inverse")?;
    }
    let rels = [less(a, b), sign(&a.sub(b).unwrap()) == Sign::Zero, less(b, a)];
    check(rels.iter().filter(|r| **r).count() == 1, "trichotomy")?;
    if less(a, b) {
        check(less(&add(a, c), &add(b, c)), "translation invariance")?;
        if sign(c) == Sign::Positive {
            check(less(&mul(a, c), &mul(b, c)), "positive scaling")?;
        }
        if less(b, c) {
            check(less(a, c), "transitivity")?;
        }
    }
    check(sign(&mul(a, a)) != Sign::Negative, "squares are non-negative")?;
    Ok(checks)
}

/// Rule `p(n) / q(n)` with `q` positive for `n ≥ 1`, evaluated directly.
struct RationalRule {
    num: Vec<Q>,
    den: Vec<Q>,
}

impl RationalRule {
    fn random(rng: &mut ChaCha8Rng) -> RationalRule {
        let num = (0..rng.gen_range(1..=3)).map(|_| rational(rng, 12, 6)).collect();
        let mut den = vec![Q::from(rng.gen_range(1..=5))];
        den.extend((0..rng.gen_range(0..=2)).map(|_| Q::ratio(rng.gen_range(0..=6), rng.gen_range(1..=4))));
        RationalRule { num, den }
    }

    fn at(&self, n: u64) -> Q {
        let n = Q::from_integer(n);
        horner(&self.num, &n).0.checked_div(&horner(&self.den, &n).0).unwrap()
    }

    fn seq(&self, cfg: &Arc<FieldConfig>) -> HyperSeq {
        HyperSeq::from_expr(cfg, &Expr::div(polynomial(&self.num, Var::N), polynomial(&self.den, Var::N))).unwrap()
    }
}

fn ordered_field_suite() -> Outcome {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut lc_checks = 0;
    while lc_checks < 10_000 {
        let (a, b, c) = (random_lc(&mut rng, &cfg), random_lc(&mut rng, &cfg), random_lc(&mut rng, &cfg));
        lc_checks += axioms(&a, &b, &c, |x, y| x.lc_sub(y).is_zero())?;
    }
    let mut rf_checks = 0;
    while rf_checks < 10_000 {
        let (a, b, c) =
            (random_ratfunc(&mut rng, &cfg), random_ratfunc(&mut rng, &cfg), random_ratfunc(&mut rng, &cfg));
        rf_checks += axioms(&a, &b, &c, |x, y| x == y)?;
    }
    let mut indices = 0;
    while indices < 1000 {
        let rules = [RationalRule::random(&mut rng), RationalRule::random(&mut rng), RationalRule::random(&mut rng)];
        let [a, b, c] = rules.each_ref().map(|r| r.seq(&cfg));
        let sum = HyperSeq::hs_arith(BinOp::Add, &a, &b).unwrap();
        let prod = HyperSeq::hs_arith(BinOp::Mul, &a, &b).unwrap();
        let distributed = HyperSeq::hs_arith(BinOp::Mul, &a, &HyperSeq::hs_arith(BinOp::Add, &b, &c).unwrap()).unwrap();
        for _ in 0..10 {
            let n = if rng.gen_bool(0.5) { rng.gen_range(1..=64) } else { rng.gen_range(1..=1u64 << 20) };
            let (x, y, z) = (rules[0].at(n), rules[1].at(n), rules[2].at(n));
            ensure!(ok(sum.term(n), "sum")? == &x + &y, "(a+b)(n) at n = {n}");
            ensure!(ok(prod.term(n), "product")? == &x * &y, "(ab)(n) at n = {n}");
            ensure!(ok(distributed.term(n), "distributivity")? == &x * &(&y + &z), "(a(b+c))(n) at n = {n}");
            indices += 1;
        }
    }
    Ok(format!("{lc_checks} LC and {rf_checks} RatFunc axiom checks exact; ring laws at {indices} sequence indices"))
}

fn ultrafilter_frontier() -> Outcome {
    let mut runs = 0;
    for j in 10..=20 {
        for (a, b) in [("(-1)^n", "0"), ("0", "(-1)^n")] {
            let args: Vec<String> = ["compare", a, b, "--backend", "omega", "--cutoff"]
                .iter()
                .map(|s| s.to_string())
                .chain([(1u64 << j).to_string()])
                .collect();
            let (stdout, _, code) = common::btrack(&args);
            ensure!(code == 3, "cutoff 2^{j}, compare {a} {b}: exit {code}");
            ensure!(stdout.starts_with("Undecided"), "cutoff 2^{j}, compare {a} {b}: {stdout}");
            runs += 1;
        }
    }
    Ok(format!("{runs} comparisons at cutoffs 2^10..2^20 all Undecided with exit 3"))
}

/// Random tree in the shapes the parser produces: non-negative literals
/// (integers and terminating decimals), negation as a node.
fn random_ast(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let vars = [Var::X, Var::N, Var::K];
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.5) {
            let q = if rng.gen_bool(0.5) {
                Q::from(rng.gen_range(0..=1000))
            } else {
                Q::ratio(rng.gen_range(0..=9999), [10, 100, 4, 8][rng.gen_range(0..4)])
            };
            Expr::Num(q)
        } else {
            Expr::var(vars[rng.gen_range(0..3)])
        };
    }
    match rng.gen_range(0..4) {
        0 => Expr::neg(random_ast(rng, depth - 1)),
        1 => {
            let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div][rng.gen_range(0..4)];
            Expr::bin(op, random_ast(rng, depth - 1), random_ast(rng, depth - 1))
        }
        2 => {
            let p = if rng.gen_bool(0.5) {
                Power::Rational(Q::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
            } else {
                Power::Var(vars[rng.gen_range(0..3)])
            };
            Expr::Pow(Box::new(random_ast(rng, depth - 1)), p)
        }
        _ => Expr::call(Func::ALL[rng.gen_range(0..Func::ALL.len())], random_ast(rng, depth - 1)),
    }
}

fn parser_and_fixtures() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..500 {
        let e = random_ast(&mut rng, 8);
        let text = e.to_string();
        let back = parse(&text).map_err(|err| format!("{text}: {err}"))?;
        ensure!(back == e, "{text} parses to a different tree");
    }
    let fixtures = common::fixtures();
    let failures: Vec<String> = fixtures.iter().filter_map(|f| common::check(f).err()).collect();
    ensure!(failures.is_empty(), "{}", failures.join("\n"));
    Ok(format!("500 random trees round-trip; {} fixtures byte-identical", fixtures.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("derivative correctness", derivative_correctness),
        ("transfer spot-check", transfer_spot_check),
        ("infinitesimal ordering", infinitesimal_ordering),
        ("Euler exponential", euler_exponential),
        ("decimal subdivision", ivt_subdivision),
        ("sum theorem", sum_theorem),
        ("uniform continuity", uniform_continuity),
        ("ordered-field suite", ordered_field_suite),
        ("ultrafilter frontier", ultrafilter_frontier),
        ("parser and fixtures", parser_and_fixtures),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), total.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
