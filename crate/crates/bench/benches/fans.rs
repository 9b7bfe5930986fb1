use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use morifan::{git_fan, h0, zariski, Cone, FixtureLibrary, RationalVector};
use morifan_bench::{blowup_classes, fresh, grid, rank_three_family};

fn fans(c: &mut Criterion) {
    let mut group = c.benchmark_group("git_fan");
    for n in [6, 8, 10, 12] {
        let classes = rank_three_family(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &classes, |b, classes| {
            b.iter(|| git_fan(&fresh(classes)).len())
        });
    }
    group.finish();
}

fn cones(c: &mut Criterion) {
    let gens: Vec<RationalVector> = blowup_classes().iter().map(|g| RationalVector::from_ints(g)).collect();
    c.bench_function("cone_from_generators", |b| {
        b.iter(|| Cone::from_generators(3, black_box(&gens)).unwrap())
    });
}

fn decompositions(c: &mut Criterion) {
    let ws = FixtureLibrary::weight_system("bl2p3").unwrap();
    git_fan(&ws);
    let classes = grid(3, 3);
    c.bench_function("zariski_grid", |b| {
        b.iter(|| classes.iter().map(|d| zariski(&ws, d).unwrap().coefficients.len()).sum::<usize>())
    });
    let d = RationalVector::from_ints(&[8, 4, 4]);
    c.bench_function("h0", |b| b.iter(|| h0(&ws, black_box(&d)).unwrap()));
}

criterion_group!(benches, fans, cones, decompositions);
criterion_main!(benches);
