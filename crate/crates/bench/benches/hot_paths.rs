use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qcvol_bench::channel_batch;
use qcvol_core::analytic::{cdf_z_general, kappa_general};
use qcvol_core::choi::permute_general;
use qcvol_core::sample::{
    propose_general, propose_unital, rejection_sample_unital, sequential_sample_general, sequential_sample_unital,
};
use qcvol_core::RngStream;

fn minors(c: &mut Criterion) {
    let batch: Vec<_> = channel_batch(256, 1).iter().map(|p| permute_general(&p.choi())).collect();
    c.bench_function("leading_minor_4 closed form x256", |b| {
        b.iter(|| batch.iter().map(|m| black_box(m).leading_minor(4)).sum::<f64>())
    });
    c.bench_function("leading_minors cofactor x256", |b| {
        b.iter(|| batch.iter().map(|m| black_box(m).leading_minors()[3]).sum::<f64>())
    });
}

fn samplers(c: &mut Criterion) {
    let mut rng = RngStream::new(2, 0);
    c.bench_function("sequential general", |b| b.iter(|| sequential_sample_general(&mut rng)));
    c.bench_function("sequential unital", |b| b.iter(|| sequential_sample_unital(&mut rng)));
    c.bench_function("rejection unital", |b| b.iter(|| rejection_sample_unital(&mut rng)));
}

fn volume_trials(c: &mut Criterion) {
    let mut rng = RngStream::new(3, 0);
    c.bench_function("volume trial general", |b| b.iter(|| propose_general(&mut rng).is_some()));
    c.bench_function("volume trial unital", |b| b.iter(|| propose_unital(&mut rng).is_some()));
}

fn closed_forms(c: &mut Criterion) {
    c.bench_function("kappa_general", |b| b.iter(|| kappa_general(black_box(0.37), black_box(0.6))));
    c.bench_function("cdf_z_general", |b| b.iter(|| cdf_z_general(black_box(-0.2), black_box(0.6))));
}

criterion_group!(benches, minors, samplers, volume_trials, closed_forms);
criterion_main!(benches);
