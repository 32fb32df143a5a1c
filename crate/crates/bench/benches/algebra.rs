//! Benchmarks for the convolution algebra and the quantization layer.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use num_complex::Complex64;
use spectrolab_core::cocycle::Cocycle;
use spectrolab_core::groupoid::build_pair_groupoid;
use spectrolab_core::kernel::{Carrier, Kernel};
use spectrolab_core::pseudodiff::HarperModel;

fn seeded_kernel(carrier: &std::sync::Arc<Carrier>, seed: u64) -> Kernel {
    let mut state = seed;
    let n = carrier.groupoid().n_arrows();
    let values = (0..n)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let re = ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5;
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let im = ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5;
            Complex64::new(re, im)
        })
        .collect();
    Kernel::new(carrier.clone(), values).unwrap()
}

fn bench_convolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("twisted_convolution");
    for n in [4usize, 8, 12] {
        let g = build_pair_groupoid(n);
        let mut state = 3u64;
        let sigma: Vec<Complex64> = (0..g.n_arrows())
            .map(|_| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                Complex64::from_polar(
                    1.0,
                    ((state >> 33) as f64 / (1u64 << 31) as f64) * std::f64::consts::TAU,
                )
            })
            .collect();
        let omega = Cocycle::coboundary(&g, sigma).unwrap();
        let carrier = Carrier::with_cocycle(g, omega);
        let f = seeded_kernel(&carrier, 5);
        let h = seeded_kernel(&carrier, 9);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| black_box(&f).convolve(black_box(&h)).unwrap())
        });
    }
    group.finish();
}

fn bench_regular_rep(c: &mut Criterion) {
    let g = build_pair_groupoid(12);
    let carrier = Carrier::plain(g);
    let f = seeded_kernel(&carrier, 21);
    c.bench_function("regular_rep_pair12", |b| {
        b.iter(|| black_box(&f).regular_rep(0).unwrap())
    });
}

fn bench_harper(c: &mut Criterion) {
    let mut group = c.benchmark_group("harper_matrix");
    group.sample_size(10);
    for n in [12usize, 24] {
        let model = HarperModel::new(1, 3, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &model, |b, m| {
            b.iter(|| m.matrix())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_convolution, bench_regular_rep, bench_harper);
criterion_main!(benches);
