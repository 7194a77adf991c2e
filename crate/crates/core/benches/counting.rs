use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fano_toric_core::chow::count_k_planes;
use fano_toric_core::{corpus, enumerate_cayley_structures, maximal_cayley_structures, Budget};
use rayon::ThreadPoolBuilder;

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let default = ThreadPoolBuilder::new().build().unwrap();
    let label = format!("rayon-{}", default.current_num_threads());
    vec![
        (label, default),
        (
            "sequential".into(),
            ThreadPoolBuilder::new().num_threads(1).build().unwrap(),
        ),
    ]
}

fn cayley(c: &mut Criterion) {
    let cfg = corpus::bl_p2_p5();
    let mut group = c.benchmark_group("cayley_enumeration");
    for (label, pool) in pools() {
        group.bench_function(BenchmarkId::new("bl_p2_p5", &label), |b| {
            b.iter(|| {
                pool.install(|| enumerate_cayley_structures(black_box(&cfg), 1, &Budget::default()))
            })
        });
    }
    group.finish();
}

fn localization(c: &mut Criterion) {
    let cfg = corpus::bl_p2_p5();
    let b = Budget::default();
    let p1 = maximal_cayley_structures(&cfg, 1, &b)
        .unwrap()
        .into_iter()
        .find(|p| p.length() == 3)
        .unwrap();
    let p6 = corpus::simplex(6);
    let full = fano_toric_core::CayleyStructure::new(
        &p6,
        p6.full_face(),
        (0..7).map(|i| vec![i]).collect(),
    )
    .unwrap();
    let mut group = c.benchmark_group("localization");
    for (label, pool) in pools() {
        group.bench_function(BenchmarkId::new("bl_p2_p5_77875", &label), |bch| {
            bch.iter(|| pool.install(|| count_k_planes(&cfg, black_box(&p1), 1, &[5], &b).unwrap()))
        });
        // Planes on two quadrics in P^6; Gr(3,7) has 35 fixed points.
        group.bench_function(
            BenchmarkId::new("p6_planes_on_two_quadrics", &label),
            |bch| {
                bch.iter(|| {
                    pool.install(|| count_k_planes(&p6, black_box(&full), 2, &[2, 2], &b).unwrap())
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, cayley, localization);
criterion_main!(benches);
