use criterion::{criterion_group, criterion_main, Criterion};
use kloc_cli::sample;
use kloc_core::{
    finite_coefficients, hom_set, iso_detector, parse_graded, point_rc, s_equivalence_test,
    smith_normal_form, splitting_check, FreeComplex, IntMatrix, PrimeSet, SplitCoefficient,
};
use std::hint::black_box;

fn dense_matrix(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| {
        (((i * 7 + j * 13 + 3) % 19) as i64 - 9).into()
    })
}

fn bench_smith(c: &mut Criterion) {
    let m = dense_matrix(12);
    c.bench_function("smith_normal_form 12x12", |b| {
        b.iter(|| smith_normal_form(black_box(&m)))
    });
}

fn bench_hom_set(c: &mut Criterion) {
    let cq = FreeComplex::two_term(1, IntMatrix::from_rows_i64(&[vec![24]], 1));
    c.bench_function("hom_set cone self-pairing", |b| {
        b.iter(|| hom_set(black_box(&cq), black_box(&cq), 0))
    });
}

fn bench_s_equivalence(c: &mut Criterion) {
    let mut rng = sample::trial_rng(0xC0FFEE, 6, 17);
    let a = sample::complex(&mut rng, 4, 3, 6);
    let b2 = sample::complex(&mut rng, 4, 3, 6);
    let f = sample::chain_map(&mut rng, &a, &b2);
    let s = PrimeSet::finite(&[2, 3]).expect("valid primes");
    c.bench_function("s_equivalence_test sampled map", |b| {
        b.iter(|| s_equivalence_test(black_box(&f), black_box(&s)))
    });
}

fn bench_finite_coefficients(c: &mut Criterion) {
    let f = parse_graded("period=1: [Z + Z/16]").expect("valid literal");
    c.bench_function("finite_coefficients mod 8, enumerated", |b| {
        b.iter(|| finite_coefficients(black_box(&f), 8, 4096).expect("within bound"))
    });
}

fn bench_detection(c: &mut Criterion) {
    let mut rng = sample::trial_rng(0xC0FFEE, 11, 23);
    let phi = sample::theory_map(&mut rng, &[2, 3, 4, 5, 8, 9]);
    let s = PrimeSet::single(2).expect("valid prime");
    c.bench_function("iso_detector sampled map", |b| {
        b.iter(|| iso_detector(black_box(&phi), black_box(&s)))
    });
}

fn bench_splitting(c: &mut Criterion) {
    let pair = point_rc();
    let h = SplitCoefficient::Localisation(PrimeSet::single(2).expect("valid prime"));
    c.bench_function("splitting_check Z[1/2]", |b| {
        b.iter(|| splitting_check(black_box(&pair), black_box(&h)).expect("splits"))
    });
}

criterion_group!(
    benches,
    bench_smith,
    bench_hom_set,
    bench_s_equivalence,
    bench_finite_coefficients,
    bench_detection,
    bench_splitting
);
criterion_main!(benches);
