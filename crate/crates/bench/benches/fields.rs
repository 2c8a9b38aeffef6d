use std::hint::black_box;

use btrack_bench::*;
use btrack_core::calculus::derivative;
use btrack_core::omega::{hs_compare, AgreementPolicy};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn levi_civita(c: &mut Criterion) {
    let mut g = c.benchmark_group("levi_civita");
    for order in [8usize, 16, 32] {
        let cfg = config(order);
        let a = dense_lc(&cfg);
        let b = a.lc_add(&LcNumber::eps(&cfg));
        g.bench_with_input(BenchmarkId::new("mul", order), &order, |bn, _| {
            bn.iter(|| black_box(&a).lc_mul(black_box(&b)))
        });
        g.bench_with_input(BenchmarkId::new("div", order), &order, |bn, _| {
            bn.iter(|| black_box(&a).div(black_box(&b)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("exp", order), &order, |bn, _| {
            bn.iter(|| black_box(&b).lc_transcendental(Func::Exp).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("sin", order), &order, |bn, _| {
            bn.iter(|| black_box(&b).lc_transcendental(Func::Sin).unwrap())
        });
    }
    g.finish();
}

fn rational_functions(c: &mut Criterion) {
    let cfg = config(32);
    let r = sample_ratfunc(&cfg);
    let s = r.add(&RatFunc::x(&cfg)).unwrap();
    c.bench_function("ratfunc/mul", |b| b.iter(|| black_box(&r).mul(black_box(&s)).unwrap()));
    c.bench_function("ratfunc/div", |b| b.iter(|| black_box(&r).div(black_box(&s)).unwrap()));
    c.bench_function("ratfunc/classify", |b| b.iter(|| black_box(&r).classify().unwrap()));
}

fn sequences(c: &mut Criterion) {
    let cfg = config(32);
    let policy = AgreementPolicy::from_config(&cfg);
    c.bench_function("omega/compare_rational", |b| {
        b.iter(|| {
            // fresh sequences so the memo cache does not absorb the work
            let a = HyperSeq::parse(&cfg, "(n^2 + 1) / (2*n^2 + n)").unwrap();
            let z = HyperSeq::parse(&cfg, "1/2").unwrap();
            hs_compare(&a, &z, &policy).verdict
        })
    });
    c.bench_function("omega/compare_undecided", |b| {
        b.iter(|| {
            let a = HyperSeq::parse(&cfg, "(-1)^n").unwrap();
            let z = HyperSeq::parse(&cfg, "0").unwrap();
            hs_compare(&a, &z, &policy).verdict
        })
    });
}

fn derivatives(c: &mut Criterion) {
    let cfg = config(32);
    let f = btrack_core::parse("sin(x)^2 + exp(x) / (1 + x^2)").unwrap();
    let x0 = ExactRational::ratio(1, 3);
    c.bench_function("derivative/lc", |b| b.iter(|| derivative::<LcNumber>(black_box(&f), &x0, &cfg).unwrap().value));
    let p = btrack_core::parse("x^5 - 3*x^2 + 1/x").unwrap();
    c.bench_function("derivative/ratfunc", |b| {
        b.iter(|| derivative::<RatFunc>(black_box(&p), &x0, &cfg).unwrap().value)
    });
}

criterion_group!(benches, levi_civita, rational_functions, sequences, derivatives);
criterion_main!(benches);
