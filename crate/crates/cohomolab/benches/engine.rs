//! Benchmarks comparing the data-parallel entry points against their
//! always-sequential twins. With the default `parallel` feature the first
//! group runs on the rayon pool; built with `--no-default-features` both
//! paths coincide.

use cohomolab::cechgeom::fixtures::{random_cochain, torus_band_cover};
use cohomolab::cechgeom::{
    holonomy_loops, holonomy_loops_sequential, line_gauge_transform, ChartedLoop, LineData,
};
use cohomolab::exactalg::IntMatrix;
use cohomolab::spectral::{page, page_sequential, FilteredComplex};
use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

/// Block-built filtered complex, larger than the test-suite sizes so the
/// per-entry lattice work dominates.
fn bench_filtered_complex(gens: usize, length: usize) -> FilteredComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(12345);
    let degrees = 5usize;
    let mut ranks = vec![0usize; degrees];
    let mut filt: Vec<Vec<usize>> = vec![vec![]; degrees];
    let mut arrows = Vec::new();
    let mut total = 0;
    while total + 1 < gens {
        let n = rng.gen_range(0..degrees - 1);
        let p_src = rng.gen_range(0..length);
        let p_tgt = rng.gen_range(p_src..length);
        let k = rng.gen_range(1..=3i64);
        arrows.push((n, ranks[n], ranks[n + 1], k));
        ranks[n] += 1;
        ranks[n + 1] += 1;
        filt[n].push(p_src);
        filt[n + 1].push(p_tgt);
        total += 2;
    }
    let mut diffs: Vec<IntMatrix> = (0..degrees)
        .map(|n| {
            let rows = if n + 1 < degrees { ranks[n + 1] } else { 0 };
            IntMatrix::zeros(rows, ranks[n])
        })
        .collect();
    for (n, src, tgt, k) in arrows {
        diffs[n][(tgt, src)] = BigInt::from(k);
    }
    // Shears to densify while keeping d^2 = 0 and the filtration.
    for _ in 0..6 * gens {
        let n = rng.gen_range(0..degrees);
        if ranks[n] < 2 {
            continue;
        }
        let i = rng.gen_range(0..ranks[n]);
        let j = rng.gen_range(0..ranks[n]);
        if i == j || filt[n][j] < filt[n][i] {
            continue;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        if num_traits::Zero::is_zero(&c) {
            continue;
        }
        if n + 1 < degrees {
            for r in 0..ranks[n + 1] {
                let add = &diffs[n][(r, j)] * &c;
                diffs[n][(r, i)] += add;
            }
        }
        if n >= 1 {
            for col in 0..ranks[n - 1] {
                let sub = &diffs[n - 1][(i, col)] * &c;
                diffs[n - 1][(j, col)] -= sub;
            }
        }
    }
    FilteredComplex::new(0, ranks, diffs, filt).expect("valid complex")
}

fn bench_pages(c: &mut Criterion) {
    let f = bench_filtered_complex(110, 6);
    let mut group = c.benchmark_group("spectral_pages");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            for r in 0..=f.length() + 1 {
                black_box(page(&f, r).unwrap());
            }
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            for r in 0..=f.length() + 1 {
                black_box(page_sequential(&f, r).unwrap());
            }
        })
    });
    group.finish();
}

fn bench_holonomy_batch(c: &mut Criterion) {
    let fix = torus_band_cover();
    let cover = fix.cover;
    let mut rng = ChaCha8Rng::seed_from_u64(999);
    let g = random_cochain(&cover, 0, 0, &mut rng);
    let data = line_gauge_transform(&cover, &LineData::zero(), &g).unwrap();
    // Random walks along the horizontal marked cycle with random charts.
    let (_, cycle) = fix.model.marked_cycles[0].clone();
    let loops: Vec<ChartedLoop> = (0..512)
        .map(|_| {
            let charts: Vec<usize> = cycle
                .iter()
                .map(|&(u, v)| {
                    let key = if u < v { vec![u, v] } else { vec![v, u] };
                    let options = cover.charts_containing(&key);
                    options[rng.gen_range(0..options.len())]
                })
                .collect();
            ChartedLoop::new(&cover, cycle.clone(), charts).unwrap()
        })
        .collect();
    let mut group = c.benchmark_group("holonomy_batch");
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(holonomy_loops(&cover, &data, &loops).unwrap()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(holonomy_loops_sequential(&cover, &data, &loops).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, bench_pages, bench_holonomy_batch);
criterion_main!(benches);
