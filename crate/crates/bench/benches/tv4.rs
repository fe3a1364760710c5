use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tv4_core::homology::{invariant_factors, ChainComplexZ};
use tv4_core::tvr::{tv4_bruteforce_exact, DEFAULT_BUDGET};
use tv4_core::{generate_bipyramid_lens_space, generate_lens_space, integral_h1, tv4_compute, QuadraticFormZ2, Z2Matrix};

fn class_sum_on_lens_spaces(c: &mut Criterion) {
    let mut group = c.benchmark_group("tv4_compute");
    for (p, q) in [(16u64, 1i64), (48, 7), (101, 1), (203, 1)] {
        let t = generate_lens_space(p, q).unwrap();
        group.bench_with_input(BenchmarkId::new("lens", format!("{p}_{q}_n{}", t.size())), &t, |b, t| {
            b.iter(|| tv4_compute(black_box(t), 1).unwrap())
        });
    }
    group.finish();
}

fn class_sum_against_enumeration(c: &mut Criterion) {
    let t = generate_bipyramid_lens_space(5, 2).unwrap();
    let mut group = c.benchmark_group("bipyramid_5_2");
    group.bench_function("class_sum", |b| b.iter(|| tv4_compute(black_box(&t), 1).unwrap()));
    group.bench_function("enumeration", |b| {
        b.iter(|| tv4_bruteforce_exact(black_box(&t), 1, DEFAULT_BUDGET).unwrap())
    });
    group.finish();
}

fn quadratic_form_canonical(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("quadratic_form");
    for k in [16usize, 64, 256] {
        let mut m = Z2Matrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                m.set(i, j, rng.gen_bool(0.5));
            }
        }
        let form = QuadraticFormZ2::new(m).unwrap();
        group.bench_with_input(BenchmarkId::new("canonical", k), &form, |b, f| b.iter(|| black_box(f).canonical()));
    }
    group.finish();
}

fn smith_normal_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology");
    for p in [64u64, 203] {
        let t = generate_lens_space(p, 1).unwrap();
        let d2 = ChainComplexZ::new(&t).d2;
        group.bench_with_input(BenchmarkId::new("invariant_factors", p), &d2, |b, d2| {
            b.iter(|| invariant_factors(black_box(d2)))
        });
        group.bench_with_input(BenchmarkId::new("integral_h1", p), &t, |b, t| b.iter(|| integral_h1(black_box(t))));
    }
    group.finish();
}

criterion_group!(
    benches,
    class_sum_on_lens_spaces,
    class_sum_against_enumeration,
    quadratic_form_canonical,
    smith_normal_form
);
criterion_main!(benches);
