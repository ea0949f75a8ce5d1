use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bmslab::fockspace::bms_fock;
use bmslab::permoracle::{bms_connected_bruteforce, genus0_formula, EnumBudget};
use bmslab_bench::route_inputs;

fn routes(c: &mut Criterion) {
    let mut g = c.benchmark_group("bms_m2_genus0");
    g.sample_size(10);
    for mu in route_inputs() {
        let id = format!("{:?}", mu.parts());
        g.bench_with_input(BenchmarkId::new("fock", &id), &mu, |b, mu| b.iter(|| bms_fock(2, 0, mu).unwrap()));
        g.bench_with_input(BenchmarkId::new("genus0", &id), &mu, |b, mu| b.iter(|| genus0_formula(2, mu).unwrap()));
        if mu.size() <= 5 {
            g.bench_with_input(BenchmarkId::new("brute", &id), &mu, |b, mu| {
                b.iter(|| bms_connected_bruteforce(2, 0, mu, &EnumBudget::default_for(2)).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, routes);
criterion_main!(benches);
