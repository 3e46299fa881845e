use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use chtri::words::{detect_finite_order, word_wa};
use chtri::{build_rep, evaluate, search_elliptic_infinite_order};

fn bench_words(c: &mut Criterion) {
    let rep = build_rep(3.0, 2.0, 2.0 * (1.0f64 / 25.0).asin()).unwrap();
    let long = word_wa(6);
    c.bench_function("evaluate/w_a(6)", |b| b.iter(|| evaluate(black_box(&long), &rep).unwrap()));
    let m = evaluate(&word_wa(2), &rep).unwrap();
    c.bench_function("detect_finite_order/2000", |b| b.iter(|| detect_finite_order(black_box(&m), 2000, 1e-8)));
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for len in [6, 8] {
        g.bench_function(format!("max_len_{len}"), |b| {
            b.iter(|| search_elliptic_infinite_order(&rep, len, 2000, 1e-8).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_words);
criterion_main!(benches);
