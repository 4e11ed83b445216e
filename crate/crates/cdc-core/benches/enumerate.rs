//! Gabidulin enumeration, rank histograms, and the bound search.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use cdc_core::bounds::{best_bound, Registry};
use cdc_core::field::FieldSpec;
use cdc_core::rankmetric::{
    min_pairwise_rank_distance, rank_histogram, GabidulinCode, MrdCodeSpec, DEFAULT_ENUM_CAP,
};

fn bench_enumerate(c: &mut Criterion) {
    let f2 = Arc::new(FieldSpec::new(2, 1).unwrap());
    let code = GabidulinCode::new(&f2, MrdCodeSpec::new(2, 4, 4, 2).unwrap()).unwrap();

    c.bench_function("gabidulin/enumerate_4096", |b| {
        b.iter(|| {
            code.enumerate(DEFAULT_ENUM_CAP)
                .unwrap()
                .map(|w| w.entries()[0])
                .sum::<u64>()
        })
    });

    let words: Vec<_> = code.enumerate(DEFAULT_ENUM_CAP).unwrap().collect();
    c.bench_function("gabidulin/rank_histogram_4096", |b| {
        b.iter(|| rank_histogram(&words))
    });

    let small: Vec<_> = words.iter().take(512).cloned().collect();
    let mut group = c.benchmark_group("gabidulin/min_rank_distance_512");
    group.sample_size(20);
    group.bench_function("pairwise", |b| b.iter(|| min_pairwise_rank_distance(&small)));
    group.finish();

    let reg = Registry::builtin();
    c.bench_function("bounds/best_bound_2_17_4_4", |b| {
        b.iter(|| best_bound(2, 17, 4, 4, &reg).unwrap())
    });
}

criterion_group!(benches, bench_enumerate);
criterion_main!(benches);
