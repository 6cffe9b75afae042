use criterion::{black_box, criterion_group, criterion_main, Criterion};
use maghom::fixtures;
use maghom::magnitude::{magnitude_rational, magnitude_series};

fn bench(c: &mut Criterion) {
    let g1 = fixtures::g1();
    c.bench_function("rational/G1", |b| {
        b.iter(|| magnitude_rational(black_box(&g1)).unwrap())
    });
    let c12 = fixtures::cycle(12);
    c.bench_function("rational/C12", |b| {
        b.iter(|| magnitude_rational(black_box(&c12)).unwrap())
    });
    c.bench_function("series/G1/30", |b| {
        b.iter(|| magnitude_series(black_box(&g1), 30))
    });
}

criterion_group!(benches, bench);
criterion_main!(benches);
