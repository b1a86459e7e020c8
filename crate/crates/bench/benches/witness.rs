use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use eppa_core::oracle::check::random_partial_isomorphism;
use eppa_core::oracle::sample_antipodal_space;
use eppa_core::{build_witness, extend_automorphism, WitnessVertex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_witness");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for points in [8, 16, 32, 64] {
        let a = sample_antipodal_space(points, &mut rng).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(points), &a, |b, a| {
            b.iter(|| build_witness(black_box(a)).unwrap())
        });
    }
    group.finish();
}

fn extend(c: &mut Criterion) {
    let mut group = c.benchmark_group("extend_automorphism");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for points in [8, 16, 32, 64] {
        let a = sample_antipodal_space(points, &mut rng).unwrap();
        let ctx = build_witness(&a).unwrap();
        let phi = random_partial_isomorphism(&a, points / 2, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(points), &phi, |b, phi| {
            b.iter(|| extend_automorphism(&ctx, black_box(phi)).unwrap())
        });
    }
    group.finish();
}

// lazy queries on a witness far too large to build
fn lazy_queries(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = sample_antipodal_space(120, &mut rng).unwrap();
    let ctx = build_witness(&a).unwrap();
    let theta = extend_automorphism(&ctx, &random_partial_isomorphism(&a, 20, &mut rng)).unwrap();
    let points: Vec<WitnessVertex> = (0..a.order()).map(|v| ctx.psi(v)).collect();
    c.bench_function("apply_and_distance/60_edges", |b| {
        b.iter(|| {
            let mut total = 0u32;
            for w in points.windows(2) {
                let (x, y) = (theta.apply(&w[0]).unwrap(), theta.apply(&w[1]).unwrap());
                total += u32::from(ctx.distance(&x, &y).unwrap());
            }
            black_box(total)
        })
    });
}

criterion_group!(benches, build, extend, lazy_queries);
criterion_main!(benches);
