use criterion::{criterion_group, criterion_main, Criterion};

use bmslab::aops::{acheck_e_coeff, acheck_e_direct};
use bmslab::exactmath::rat::frac;
use bmslab::quasipoly::{fit_poly, FIT_SIZE_CAP};
use bmslab::spectral::xi_from_poly;
use bmslab::toporec::{Recursion, DEFAULT_BUDGET};
use bmslab::UPoly;

fn calculus(c: &mut Criterion) {
    let l = frac(3, 2);
    c.bench_function("acheck_closed_m3_k4_q3_p2", |b| b.iter(|| acheck_e_coeff(3, 4, 3, 2, &l).unwrap()));
    c.bench_function("acheck_direct_m3_k4_q3_p2", |b| b.iter(|| acheck_e_direct(3, 4, 3, 2, &l).unwrap()));
    let p = UPoly::from_coeffs(vec![frac(1, 2), frac(-3, 1), frac(2, 5), frac(1, 1)]);
    c.bench_function("xi_solve_m2_d1", |b| b.iter(|| xi_from_poly(2, 1, &p).unwrap()));
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("fit_m2_g1_n1", |b| b.iter(|| fit_poly(2, 1, 1, 1, None, FIT_SIZE_CAP).unwrap()));
    g.bench_function("recursion_up_to_g2_n1", |b| {
        b.iter(|| Recursion::new(DEFAULT_BUDGET).unwrap().omega(2, 1).unwrap())
    });
    g.finish();
}

criterion_group!(benches, calculus);
criterion_main!(benches);
