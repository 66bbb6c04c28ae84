use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use gshape::constants::BoundConstants;
use gshape::geometry::{evenly_spaced_nodes, Simplex};
use gshape::harness::{log_error_bound, BoundVariant, TestFunction};
use gshape::interpolation::build;
use gshape::mn::{advise, mn_curve, numeric_minimizer, ProblemConfig};
use gshape::{Criterion as Density, Space};

fn evenly_config(delta: f64) -> ProblemConfig {
    ProblemConfig::new(1, 1.0, delta, 1.0, Space::BandLimited, Density::EvenlySpaced).unwrap()
}

fn scattered_config() -> ProblemConfig {
    ProblemConfig::new(2, 1.0, 1e-3, 1.0, Space::GaussianCubic, Density::Scattered).unwrap()
}

fn bench_advisor(c: &mut Criterion) {
    let evenly = evenly_config(0.03);
    let scattered = scattered_config();
    c.bench_function("advise_evenly_spaced", |b| {
        b.iter(|| advise(black_box(&evenly)).unwrap())
    });
    c.bench_function("advise_scattered_cubic", |b| {
        b.iter(|| advise(black_box(&scattered)).unwrap())
    });
    c.bench_function("numeric_minimizer", |b| {
        b.iter(|| numeric_minimizer(black_box(&evenly), 1e-6, 10.0).unwrap())
    });
    c.bench_function("mn_curve_1001", |b| {
        b.iter(|| mn_curve(black_box(&evenly), 1e-6, 10.0, 1001).unwrap())
    });
}

fn bench_interpolation(c: &mut Criterion) {
    let f = TestFunction::sinc_band_limited(1.0).unwrap();
    let centers: Vec<Vec<f64>> = (0..41).map(|i| vec![i as f64 / 40.0]).collect();
    let values: Vec<f64> = centers.iter().map(|x| f.evaluate(x[0])).collect();
    c.bench_function("build_41_nodes_cholesky", |b| {
        b.iter(|| build(black_box(&centers), black_box(&values), 400.0).unwrap())
    });
    c.bench_function("build_41_nodes_svd_fallback", |b| {
        b.iter(|| build(black_box(&centers), black_box(&values), 0.0075).unwrap())
    });
    let (interp, _) = build(&centers, &values, 400.0).unwrap();
    let grid: Vec<[f64; 1]> = (0..1000).map(|i| [i as f64 / 999.0]).collect();
    c.bench_function("evaluate_41_nodes_x1000", |b| {
        b.iter(|| {
            grid.iter()
                .map(|x| interp.evaluate(black_box(x)).unwrap())
                .sum::<f64>()
        })
    });
}

fn bench_geometry_and_bounds(c: &mut Criterion) {
    let simplex = Simplex::standard(3, 1.0).unwrap();
    c.bench_function("evenly_spaced_nodes_n3_l8", |b| {
        b.iter(|| evenly_spaced_nodes(black_box(&simplex), 8).unwrap())
    });
    let config = evenly_config(0.03);
    let constants = BoundConstants::compute(1, 1.0, 0.0075).unwrap();
    c.bench_function("log_error_bound_evenly_band_limited", |b| {
        b.iter(|| {
            log_error_bound(
                black_box(&config),
                black_box(&constants),
                2f64.sqrt(),
                BoundVariant::EvenlySpacedBandLimited,
            )
            .unwrap()
        })
    });
    c.bench_function("bound_constants_n32", |b| {
        b.iter(|| BoundConstants::compute(black_box(32), 1.0, 1.0).unwrap())
    });
}

criterion_group!(
    benches,
    bench_advisor,
    bench_interpolation,
    bench_geometry_and_bounds
);
criterion_main!(benches);
