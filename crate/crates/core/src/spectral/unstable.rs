//! X-expansions of ω_{0,1} and ω_{0,2} against the one- and two-part genus-0 numbers.

use super::xi::z_series;
use super::xseries::XSeries;
use crate::error::Result;
use crate::exactmath::rat::{binomial, rat};
use crate::fockspace::bms_fock;
use crate::permoracle::{unstable_onepoint, unstable_twopoint, Partition};
use crate::report::CheckReport;

/// [X^k] z = k b°_{0,(k)} for 1 ≤ k ≤ order, with b° from the closed form and the Fock route.
pub fn omega01_check(m: u32, order: usize) -> Result<CheckReport> {
    let z = z_series(m, order)?;
    let mut r = CheckReport::new(format!("one-point genus-zero expansion, m = {m}"));
    for k in 1..=order {
        let kk = rat(k as i64);
        let closed = kk.clone() * unstable_onepoint(m, k as u32)?;
        let fock = kk * bms_fock(m, 0, &Partition::of(&[k as u32]))?;
        r.expect_eq(&format!("k = {k}, closed form"), &z.coeff(k), &closed);
        r.expect_eq(&format!("k = {k}, Fock route"), &z.coeff(k), &fock);
    }
    Ok(r)
}

/// E log(z_1 - z_2) = A(X_1)A(X_2) - m B(X_1)B(X_2) with A = (1+z)/(1+z-mz), B = z/(1+z-mz).
fn elog_factors(m: u32, order: usize) -> Result<(XSeries, XSeries)> {
    let z = z_series(m, order)?;
    let one = XSeries::one(order);
    let den = one.add(&z).sub(&z.scale(&rat(m as i64)));
    Ok((one.add(&z).div(&den)?, z.div(&den)?))
}

/// [X_1^{k_1} X_2^{k_2}] E log(z_1 - z_2) three ways: series, binomials and (k_1+k_2) b°_{0,(k_1,k_2)}
/// (closed form and Fock route), for 1 ≤ k_i ≤ order.
pub fn omega02_check(m: u32, order: usize) -> Result<CheckReport> {
    let (a, b) = elog_factors(m, order)?;
    let mi = m as i64;
    let mut r = CheckReport::new(format!("two-point genus-zero expansion, m = {m}"));
    for k1 in 1..=order {
        for k2 in k1..=order {
            let series = a.coeff(k1) * a.coeff(k2) - rat(mi) * b.coeff(k1) * b.coeff(k2);
            let (x1, x2) = (k1 as i64, k2 as i64);
            let binom = binomial(mi * x1, x1) * binomial(mi * x2, x2)
                - rat(mi) * binomial(mi * x1 - 1, x1 - 1) * binomial(mi * x2 - 1, x2 - 1);
            let s = rat(x1 + x2);
            let label = format!("(k1, k2) = ({k1}, {k2})");
            r.expect_eq(&format!("{label}, binomials"), &series, &binom);
            if m >= 2 {
                let closed = &s * unstable_twopoint(m, k1 as u32, k2 as u32)?;
                r.expect_eq(&format!("{label}, closed form"), &series, &closed);
            }
            let fock = &s * bms_fock(m, 0, &Partition::of(&[k1 as u32, k2 as u32]))?;
            r.expect_eq(&format!("{label}, Fock route"), &series, &fock);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        for m in 2..=3 {
            assert!(omega01_check(m, 5).unwrap().passed());
            assert!(omega02_check(m, 4).unwrap().passed());
        }
        // m = 2, k = 3: 3 · 5/3 = 5
        assert_eq!(z_series(2, 3).unwrap().coeff(3), rat(5));
        // m = 2, (1, 1): 4 - 2 = 2 · 1
        let (a, b) = elog_factors(2, 2).unwrap();
        assert_eq!(a.coeff(1) * a.coeff(1) - rat(2) * b.coeff(1) * b.coeff(1), rat(2));
    }
}
