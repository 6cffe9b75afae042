use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use maghom::fixtures;
use maghom::mag_homology::{mh_table, HomologyOptions};
use maghom::num_bigint::BigInt;
use maghom::snf::{smith, smith_dense, SparseMatrix};
use rand::{Rng, SeedableRng};

fn random_dense(n: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        rng.gen_range(-3..=3)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

fn bench(c: &mut Criterion) {
    let opts = HomologyOptions::default();
    let g3 = fixtures::g3();
    let mut group = c.benchmark_group("mh_table");
    group.sample_size(10);
    group.bench_function("G3/l6", |b| {
        b.iter(|| mh_table(black_box(&g3), 6, &opts).unwrap())
    });
    group.finish();

    let m = random_dense(60, 7);
    let sparse = SparseMatrix::from_dense(&m);
    c.bench_function("smith/sparse/60", |b| b.iter(|| smith(black_box(&sparse))));
    c.bench_function("smith/dense/60", |b| {
        b.iter_batched(
            || {
                m.iter()
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                    .collect()
            },
            smith_dense,
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, bench);
criterion_main!(benches);
