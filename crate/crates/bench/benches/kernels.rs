use cglab::arith::{int, parse_quad, rat};
use cglab::cgengine::{closure_bruteforce, integer_hull, schrijver_closure, LatticeBox};
use cglab::diophantine::kronecker_approx;
use cglab::hilbert::hilbert_basis;
use cglab::{sample, ConvexBody, HPolyhedron, RationalCone};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn k1() -> ConvexBody {
    ConvexBody::hyperbola([int(0), int(0)], int(2)).unwrap()
}

fn polytopes() -> Vec<HPolyhedron> {
    let mut rng = ChaCha8Rng::seed_from_u64(sample::DEFAULT_SEED);
    (0..8).map(|_| sample::random_polytope(&mut rng, 10)).collect()
}

fn closures(c: &mut Criterion) {
    let mut g = c.benchmark_group("closure_bruteforce");
    for n in [2usize, 4, 6] {
        g.bench_with_input(BenchmarkId::new("hyperbola", n), &n, |b, &n| b.iter(|| closure_bruteforce(&k1(), black_box(n)).unwrap()));
    }
    g.finish();
    let ps = polytopes();
    c.bench_function("schrijver_closure/8_random", |b| {
        b.iter(|| ps.iter().filter_map(|p| schrijver_closure(black_box(p)).ok()).count())
    });
}

fn hilbert(c: &mut Criterion) {
    let cone = RationalCone::from_i64(&[&[1, 0], &[7, 19]]);
    c.bench_function("hilbert_basis/(1,0),(7,19)", |b| b.iter(|| hilbert_basis(black_box(&cone)).unwrap()));
}

fn hull(c: &mut Criterion) {
    c.bench_function("integer_hull/hyperbola_0..10", |b| b.iter(|| integer_hull(&k1(), &LatticeBox::cube(2, 0, 10)).unwrap()));
}

fn kronecker(c: &mut Criterion) {
    let pi = vec![parse_quad("sqrt(2)").unwrap(), parse_quad("sqrt(2)").unwrap()];
    c.bench_function("kronecker/(sqrt2,sqrt2)", |b| {
        b.iter(|| kronecker_approx(black_box(&pi), &[int(0), int(0)], &rat(1, 10_000), 50).unwrap())
    });
}

criterion_group!(benches, closures, hilbert, hull, kronecker);
criterion_main!(benches);
