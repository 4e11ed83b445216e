//! Pairwise minimum-distance verification: rayon scan vs the sequential
//! reference on the same codes.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use cdc_core::construct::lifted_mrd;
use cdc_core::field::FieldSpec;
use cdc_core::rankmetric::DEFAULT_ENUM_CAP;
use cdc_core::subspace::ConstantDimensionCode;
use cdc_core::verify::{verify_subspaces_sequential, PairSampling};

#[cfg(feature = "parallel")]
use cdc_core::verify::verify_subspaces;

fn codes() -> Vec<(&'static str, ConstantDimensionCode)> {
    let f2 = Arc::new(FieldSpec::new(2, 1).unwrap());
    vec![
        // 256 words, ~33k pairs
        ("lmrd_2_7_3_4", lifted_mrd(&f2, 7, 3, 4, DEFAULT_ENUM_CAP).unwrap()),
        // 1024 words, ~524k pairs
        ("lmrd_2_9_4_6", lifted_mrd(&f2, 9, 4, 6, DEFAULT_ENUM_CAP).unwrap()),
    ]
}

fn bench_verify(c: &mut Criterion) {
    for (name, code) in codes() {
        let d = code.claimed_min_distance().unwrap();
        let mut group = c.benchmark_group(format!("verify/{name}"));
        group.sample_size(10);
        group.bench_function("sequential", |b| {
            b.iter(|| verify_subspaces_sequential(code.words(), d, PairSampling::Full).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_function("parallel", |b| {
            b.iter(|| verify_subspaces(code.words(), d, PairSampling::Full).unwrap())
        });
        group.finish();
    }
}

criterion_group!(benches, bench_verify);
criterion_main!(benches);
