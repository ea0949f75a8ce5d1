//! Closed formulas in genus zero.

use num_traits::Zero;

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::exactmath::factorial::falling_factorial;
use crate::exactmath::rat::{binomial, factorial_rat, rat, Rat};

/// m·((m-1)|μ|-1)_{n-3}·∏ C(mμ_i - 1, μ_i).
pub fn genus0_formula(m: u32, mu: &Partition) -> Result<Rat> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let n = mu.len() as i64;
    let m = m as i64;
    let a = rat((m - 1) * mu.size() as i64 - 1);
    let mut acc = rat(m) * falling_factorial(&a, n - 3)?;
    for &p in mu.parts() {
        acc *= binomial(m * p as i64 - 1, p as i64);
    }
    Ok(acc)
}

/// b°_{0,k} = m(mk-1)!/(k!(mk-k+1)!).
pub fn unstable_onepoint(m: u32, k: u32) -> Result<Rat> {
    if m == 0 || k == 0 {
        return Err(Error::Precondition("m and k must be positive".into()));
    }
    let (m, k) = (m as u64, k as u64);
    Ok(rat(m as i64) * factorial_rat(m * k - 1) / (factorial_rat(k) * factorial_rat(m * k - k + 1)))
}

/// b°_{0,(k1,k2)} = m/((m-1)(k1+k2))·C(mk1-1, k1)·C(mk2-1, k2).
pub fn unstable_twopoint(m: u32, k1: u32, k2: u32) -> Result<Rat> {
    if m == 0 || k1 == 0 || k2 == 0 {
        return Err(Error::Precondition("m, k1 and k2 must be positive".into()));
    }
    let (m, k1, k2) = (m as i64, k1 as i64, k2 as i64);
    let d = rat((m - 1) * (k1 + k2));
    if d.is_zero() {
        return Err(Error::DivisionByZero("two-point formula at m = 1".into()));
    }
    Ok(rat(m) / d * binomial(m * k1 - 1, k1) * binomial(m * k2 - 1, k2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::frac;

    #[test]
    fn examples() {
        assert_eq!(genus0_formula(2, &Partition::of(&[1, 1, 1])).unwrap(), rat(2));
        assert_eq!(genus0_formula(2, &Partition::of(&[3])).unwrap(), frac(5, 3));
        assert_eq!(genus0_formula(3, &Partition::of(&[1])).unwrap(), rat(1));
        assert_eq!(unstable_onepoint(2, 2).unwrap(), rat(1));
        assert_eq!(unstable_twopoint(2, 1, 1).unwrap(), rat(1));
        assert_eq!(unstable_twopoint(2, 1, 2).unwrap(), rat(2));
    }

    #[test]
    fn vanishing_pochhammer_factor_is_an_error() {
        // m = 1, μ = (1): ((0) - 1)_{-2} hits a zero factor
        assert!(matches!(
            genus0_formula(1, &Partition::of(&[1])),
            Err(Error::DivisionByZero(_))
        ));
        assert!(unstable_twopoint(1, 1, 1).is_err());
    }

    #[test]
    fn unstable_forms_agree_with_genus_zero_formula() {
        for m in 2..=5u32 {
            for k in 1..=6u32 {
                assert_eq!(
                    unstable_onepoint(m, k).unwrap(),
                    genus0_formula(m, &Partition::of(&[k])).unwrap()
                );
                for k2 in 1..=6u32 {
                    assert_eq!(
                        unstable_twopoint(m, k, k2).unwrap(),
                        genus0_formula(m, &Partition::of(&[k, k2])).unwrap()
                    );
                }
            }
        }
    }
}
