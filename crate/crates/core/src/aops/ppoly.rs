//! P_k(l) = ∏_{i<k} (1 + ħ(l + i + 1/2)) and its finite differences.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::factorial::falling_factorial;
use crate::exactmath::rat::{binomial, frac, rat};
use crate::exactmath::{HSeries, MPoly, Rat, UPoly};

pub const LH: [&str; 2] = ["l", "h"];

/// P_k as a polynomial in (l, ħ); ħ is the indeterminate "h".
pub fn p_poly(k: u32) -> MPoly {
    let l = MPoly::var(&LH, "l");
    let h = MPoly::var(&LH, "h");
    let one = MPoly::constant(&LH, Rat::one());
    let mut acc = one.clone();
    for i in 0..k {
        let shift = MPoly::constant(&LH, frac(2 * i as i64 + 1, 2));
        acc = &acc * &(&one + &(&h * &(&l + &shift)));
    }
    acc
}

/// (Δf)(l) = f(l) - f(l-1) in the first indeterminate.
pub fn delta_l(f: &MPoly) -> MPoly {
    let l = f.var_like(0);
    let lm1 = &l - &f.constant_like(Rat::one());
    f - &f.subst(0, &lm1)
}

/// Checks Δ^t P_k = (k)_t ħ^t P_{k-t} (zero for t > k) as a polynomial identity.
pub fn check_delta_power(t: u32, k: u32) -> Result<()> {
    let mut lhs = p_poly(k);
    for _ in 0..t {
        lhs = delta_l(&lhs);
    }
    let rhs = if t > k {
        MPoly::zero(&LH)
    } else {
        let c = falling_factorial(&rat(k as i64), t as i64)?;
        (&MPoly::var(&LH, "h").pow(t) * &p_poly(k - t)).scale(&c)
    };
    if lhs != rhs {
        return Err(Error::Mismatch(format!("Δ^{t} P_{k}")));
    }
    Ok(())
}

/// P_k(l) at a concrete l, as a polynomial in ħ.
pub fn p_at(k: u32, l: &Rat) -> UPoly {
    let mut acc = UPoly::one();
    for i in 0..k {
        acc = &acc * &UPoly::from_coeffs(vec![Rat::one(), l + frac(2 * i as i64 + 1, 2)]);
    }
    acc
}

/// P̃_k(l) = ∏_{i<k} (1 - ħ(-l + i + 1/2)) at a concrete l.
pub fn p_tilde_at(k: u32, l: &Rat) -> UPoly {
    let mut acc = UPoly::one();
    for i in 0..k {
        let c = -(frac(2 * i as i64 + 1, 2) - l);
        acc = &acc * &UPoly::from_coeffs(vec![Rat::one(), c]);
    }
    acc
}

/// (Δ^t f)(l) = Σ_j (-1)^j C(t, j) f(l - j) for ħ-polynomial valued f.
pub fn delta_power_at(t: u32, l: &Rat, f: impl Fn(&Rat) -> UPoly) -> UPoly {
    let mut acc = UPoly::zero();
    for j in 0..=t as i64 {
        let c = binomial(t as i64, j) * if j % 2 == 0 { Rat::one() } else { -Rat::one() };
        acc = &acc + &f(&(l - rat(j))).scale(&c);
    }
    acc
}

/// Same as delta_power_at for truncated ħ-series.
pub fn delta_power_series_at(t: u32, l: &Rat, f: impl Fn(&Rat) -> HSeries) -> HSeries {
    let mut acc = HSeries::zero();
    for j in 0..=t as i64 {
        let c = binomial(t as i64, j) * if j % 2 == 0 { Rat::one() } else { -Rat::one() };
        if !c.is_zero() {
            acc = acc.add(&f(&(l - rat(j))).scale(&c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(p_poly(0), MPoly::constant(&LH, rat(1)));
        assert_eq!(delta_l(&p_poly(1)), MPoly::var(&LH, "h"));
        let mut d = p_poly(2);
        for _ in 0..3 {
            d = delta_l(&d);
        }
        assert!(d.is_zero());
    }

    #[test]
    fn difference_powers() {
        for k in 0..=5 {
            for t in 0..=k + 2 {
                check_delta_power(t, k).unwrap();
            }
        }
    }

    #[test]
    fn numeric_matches_symbolic() {
        let l = frac(-7, 2);
        let p = p_poly(4).partial_eval(0, &l);
        let u = p.to_upoly(1).unwrap();
        assert_eq!(u, p_at(4, &l));
        // P̃_k(l) = P_k(-l) with ħ -> -ħ... checked pointwise: P̃_1(l) = 1 + ħ(l - 1/2)
        assert_eq!(p_tilde_at(1, &rat(2)), UPoly::from_coeffs(vec![rat(1), frac(3, 2)]));
    }
}
