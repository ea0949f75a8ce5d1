use bmslab::aops::{acheck_e_coeff, acheck_e_direct, acheck_id_coeff};
use bmslab::exactmath::rat::frac;
use bmslab::fockspace::windowed_conjugation_oracle;

#[test]
fn closed_direct_and_windowed_agree() {
    for m in 2..=3u32 {
        for k in 1..=4u32 {
            let order = k as i64 + 5;
            let a = windowed_conjugation_oracle(m, k, k as i64 + order, order).unwrap();
            for q in 1..=3i64 {
                for p in 0..=2u32 {
                    for l2 in (-7..=7).step_by(2) {
                        let l = frac(l2, 2);
                        let closed = acheck_e_coeff(m, k as i64, q, p, &l).unwrap();
                        let direct = acheck_e_direct(m, k as i64, q, p, &l).unwrap();
                        let window = a.diagonal_entry(q, l2).coeff(q + p as i64);
                        assert_eq!(closed, direct, "m={m} k={k} q={q} p={p} l={l}");
                        assert_eq!(closed, window, "m={m} k={k} q={q} p={p} l={l}");
                    }
                }
            }
            for p in -1..=2i64 {
                assert_eq!(a.identity().coeff(p), acheck_id_coeff(m, k as i64, p).unwrap(), "Id m={m} k={k} p={p}");
            }
        }
    }
}
