use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use chtri::criteria::wak_elliptic_window;
use chtri::{classify_region, conditions_star, decide, shimizu_test, wb_ellipticity, DecideOptions, TriangleParams};

fn bench_criteria(c: &mut Criterion) {
    let type_a = TriangleParams::new(3.0, 2.0, 1.0).unwrap();
    let near_isosceles = TriangleParams::new(1.31, 1.3, 0.4).unwrap();

    c.bench_function("conditions_star/type_a", |b| b.iter(|| conditions_star(black_box(&type_a))));
    c.bench_function("conditions_star/near_isosceles", |b| {
        b.iter(|| conditions_star(black_box(&near_isosceles)))
    });
    c.bench_function("shimizu_test", |b| b.iter(|| shimizu_test(black_box(&type_a))));
    c.bench_function("classify_region", |b| b.iter(|| classify_region(black_box(3.0), black_box(2.0))));
    c.bench_function("wb_ellipticity", |b| b.iter(|| wb_ellipticity(black_box(1.3), black_box(1.2))));
    c.bench_function("wak_elliptic_window", |b| b.iter(|| wak_elliptic_window(black_box(3.0), black_box(2.0), 2)));
    let opts = DecideOptions::default();
    c.bench_function("decide/type_a", |b| b.iter(|| decide(black_box(&type_a), &opts).unwrap()));
}

criterion_group!(benches, bench_criteria);
criterion_main!(benches);
