use bmslab::exactmath::rat::frac;
use bmslab::exactmath::UPoly;
use bmslab::quasipoly::{fit_poly, FIT_SIZE_CAP};
use bmslab::spectral::{omega01_check, omega02_check, w_check, xi_from_poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_polynomials_solve_and_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for m in 2..=3u32 {
        for d in 0..=2u32 {
            let dim = (m * (d + 1)) as usize;
            for _ in 0..20 {
                let deg = rng.gen_range(0..dim);
                let c = (0..=deg).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
                xi_from_poly(m, d, &UPoly::from_coeffs(c)).unwrap();
            }
        }
    }
}

#[test]
fn unstable_expansions_to_order_ten() {
    for m in 2..=4u32 {
        let r = omega01_check(m, 10).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = omega02_check(m, 10).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}

#[test]
fn w_reproduces_bms_numbers() {
    for m in 2..=3u32 {
        for (g, n) in [(0u32, 3usize), (0, 4), (1, 1), (1, 2)] {
            let form = fit_poly(m, g, n, 1, None, FIT_SIZE_CAP).unwrap();
            let r = w_check(&form, 4).unwrap();
            assert!(r.passed(), "m={m} g={g} n={n}: {:?}", r.failures);
        }
    }
    // (2, 1, 1) up to μ = 6
    let form = fit_poly(2, 1, 1, 1, None, FIT_SIZE_CAP).unwrap();
    assert!(w_check(&form, 6).unwrap().passed());
}
