use std::sync::OnceLock;

use bmslab::exactmath::rat::serde_string;
use bmslab::exactmath::{frac, parse_rat, rat, LSeries, Rat, UPoly};
use bmslab::permoracle::Partition;
use bmslab::toporec::{MultiDiff, Recursion, DEFAULT_BUDGET};
use num_traits::{One, Zero};
use proptest::prelude::*;
use serde::{Deserialize, Serialize};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=7).prop_map(|(p, q)| frac(p, q))
}

fn series(val: std::ops::Range<i64>) -> impl Strategy<Value = LSeries> {
    (val, prop::collection::vec(small_rat(), 1..8)).prop_map(|(v, c)| LSeries::new(v, c))
}

fn agree(a: &LSeries, b: &LSeries) -> Result<(), TestCaseError> {
    let lo = a.val().min(b.val());
    let hi = a.prec().min(b.prec());
    for e in lo..hi {
        prop_assert_eq!(a.coeff(e), b.coeff(e), "t^{}", e);
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct Wrapped {
    #[serde(with = "serde_string")]
    v: Rat,
}

fn omegas() -> &'static (MultiDiff, MultiDiff) {
    static CELL: OnceLock<(MultiDiff, MultiDiff)> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut r = Recursion::new(DEFAULT_BUDGET).unwrap();
        (r.omega(0, 4).unwrap(), r.omega(1, 2).unwrap())
    })
}

// points away from the poles at ±1
fn regular_point() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("pole", |z| z.clone() * z != Rat::one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_parse_round_trip(mut v in prop::collection::vec(1u32..9, 0..7)) {
        let p = Partition::of(&v);
        let text: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
        prop_assert_eq!(Partition::parse(&text.join(",")).unwrap(), p.clone());
        v.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(p.parts(), &v[..]);
        prop_assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn rational_text_round_trip(r in small_rat()) {
        prop_assert_eq!(parse_rat(&r.to_string()).unwrap(), r.clone());
        let json = serde_json::to_string(&Wrapped { v: r.clone() }).unwrap();
        let back: Wrapped = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.v, r);
    }

    #[test]
    fn series_inverse(s in series(-3..3)) {
        let n = s.clone().normalized();
        prop_assume!(n.val() < n.prec() && !n.coeff(n.val()).is_zero());
        let one = LSeries::monomial(rat(1), 0, s.prec() - s.val());
        agree(&s.mul(&s.inverse()), &one)?;
    }

    #[test]
    fn series_mul_associative(a in series(-2..2), b in series(-2..2), c in series(-2..2)) {
        agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)))?;
        agree(&a.mul(&b), &b.mul(&a))?;
    }

    #[test]
    fn upoly_eval_is_ring_map(
        p in prop::collection::vec(small_rat(), 1..6),
        q in prop::collection::vec(small_rat(), 1..6),
        x in small_rat(),
    ) {
        let (p, q) = (UPoly::from_coeffs(p), UPoly::from_coeffs(q));
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
    }

    #[test]
    fn recursion_output_is_symmetric(z in prop::collection::vec(regular_point(), 4)) {
        let (w04, w12) = omegas();
        let base = w04.eval(&z).unwrap();
        for perm in [[1, 0, 2, 3], [0, 2, 1, 3], [3, 1, 2, 0], [2, 3, 0, 1]] {
            let zp: Vec<Rat> = perm.iter().map(|&i| z[i].clone()).collect();
            prop_assert_eq!(w04.eval(&zp).unwrap(), base.clone());
        }
        let pair = [z[0].clone(), z[1].clone()];
        let swapped = [z[1].clone(), z[0].clone()];
        prop_assert_eq!(w12.eval(&pair).unwrap(), w12.eval(&swapped).unwrap());
    }
}
