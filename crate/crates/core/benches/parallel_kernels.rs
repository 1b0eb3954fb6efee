//! Parallel vs sequential throughput of the two data-parallel hot paths:
//! resolvent quadrature over contour nodes and the eigensolve sweep over
//! suite instances.
//!
//! The `parallel` feature (default) routes `exec::map_indexed` through
//! rayon; the sequential side always uses `exec::map_indexed_seq`, so one
//! `cargo bench` run shows both.

use std::f64::consts::TAU;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qspec_core::contour::{integrate_left, selection_contour, ContourSpec, QuadratureConfig};
use qspec_core::exec;
use qspec_core::qmatrix::QMatrix;
use qspec_core::random;
use qspec_core::sspectrum::{s_resolvent_left_unchecked, s_spectrum};

/// Sequential mirror of `integrate_left`, same arithmetic in node order.
fn integrate_left_seq(contour: &ContourSpec, a: &QMatrix) -> QMatrix {
    let _ = s_spectrum(a).expect("spectrum");
    let nodes = contour.nodes();
    let terms = exec::map_indexed_seq(nodes.len(), |m| {
        s_resolvent_left_unchecked(&nodes[m].s, a)
            .expect("resolvent")
            .scale_right(nodes[m].weight)
    });
    let mut acc = QMatrix::zeros(a.dim());
    for t in terms {
        acc = acc.add(&t);
    }
    acc.scale(1.0 / TAU)
}

fn bench_quadrature(c: &mut Criterion) {
    let a = random::random_unitary(6, 42).expect("unitary");
    let spectrum = s_spectrum(&a).expect("spectrum");
    let all: Vec<usize> = (0..spectrum.spheres.len()).collect();
    let mut group = c.benchmark_group("riesz_quadrature");
    for nodes in [256usize, 512] {
        let cfg = QuadratureConfig::with_nodes(nodes);
        let contour = selection_contour(&spectrum, &all, &cfg).expect("contour");
        group.bench_with_input(BenchmarkId::new("parallel", nodes), &nodes, |b, _| {
            b.iter(|| integrate_left(&contour, &a).expect("integral"))
        });
        group.bench_with_input(BenchmarkId::new("sequential", nodes), &nodes, |b, _| {
            b.iter(|| integrate_left_seq(&contour, &a))
        });
    }
    group.finish();
}

fn bench_spectrum_sweep(c: &mut Criterion) {
    let instances = 24usize;
    let job = |i: usize| {
        let u = random::random_unitary(6, 1000 + i as u64).expect("unitary");
        s_spectrum(&u).expect("spectrum").spheres.len()
    };
    let mut group = c.benchmark_group("spectrum_sweep");
    group.bench_function("parallel", |b| {
        b.iter(|| exec::map_indexed(instances, job).iter().sum::<usize>())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| exec::map_indexed_seq(instances, job).iter().sum::<usize>())
    });
    group.finish();
}

criterion_group!(benches, bench_quadrature, bench_spectrum_sweep);
criterion_main!(benches);
