use bmslab::exactmath::rat::rat;
use bmslab::permoracle::{genus0_formula, Partition};
use bmslab::quasipoly::{denominator_product, fit_poly, prefactor, FIT_SIZE_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_points(rng: &mut ChaCha8Rng, n: usize, max_size: u32, count: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    while out.len() < count {
        let parts: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=max_size / n as u32)).collect();
        out.push(Partition::of(&parts));
    }
    out
}

#[test]
fn fits_validate_on_fresh_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 2..=3u32 {
        for (g, n) in [(0u32, 3usize), (0, 4), (1, 1), (1, 2)] {
            let f = fit_poly(m, g, n, 1, None, FIT_SIZE_CAP).unwrap();
            assert!(f.poly.is_symmetric());
            f.check_points(&f.grid).unwrap();
            f.check_points(&f.held_out).unwrap();
            f.check_points(&random_points(&mut rng, n, 16, 3)).unwrap();
        }
    }
}

#[test]
fn four_point_genus_zero_is_the_closed_formula() {
    // a polynomial of degree ≤ d in each variable is fixed by its values on {1..d+1}^n
    for m in 2..=3u32 {
        let f = fit_poly(m, 0, 4, 1, None, FIT_SIZE_CAP).unwrap();
        let side = f.degree + 1;
        for a in 1..=side {
            for b in 1..=side {
                for c in 1..=side {
                    for d in 1..=side {
                        let mu = [a, b, c, d];
                        let mut pre = rat(1);
                        for &x in &mu {
                            pre *= prefactor(m, x).unwrap();
                        }
                        let want = genus0_formula(m, &Partition::of(&mu)).unwrap()
                            * denominator_product(m, 0, 4, &mu).unwrap()
                            / pre;
                        let pt: Vec<_> = mu.iter().map(|&x| rat(x as i64)).collect();
                        assert_eq!(f.poly.eval(&pt), want, "m={m} μ={mu:?}");
                    }
                }
            }
        }
    }
}
