//! Coefficients of Ǎ(k, ħ) and Ǎ†(r, ħ): closed forms through Q^p, and direct Δ-evaluation.

use num_traits::{One, Zero};

use super::ppoly::{delta_power_at, delta_power_series_at, p_at, p_tilde_at};
use super::rpoly::{compositions, q_coeffs};
use crate::error::{Error, Result};
use crate::exactmath::factorial::{falling_factorial, rising_factorial};
use crate::exactmath::rat::{factorial_rat, frac, rat};
use crate::exactmath::{HSeries, Rat};

/// (mk-m)! / (k! (mk-k-1)!), for m ≥ 2 and k ≥ 1.
pub fn a_prefactor(m: u32, k: i64) -> Result<Rat> {
    let (m, k) = (m as i64, k);
    if m < 2 || k < 1 {
        return Err(Error::Precondition(format!("prefactor needs m ≥ 2, k ≥ 1 (m = {m}, k = {k})")));
    }
    Ok(factorial_rat((m * k - m) as u64) / (factorial_rat(k as u64) * factorial_rat((m * k - k - 1) as u64)))
}

fn check_k(k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::Precondition(format!("k must be positive, got {k}")));
    }
    Ok(())
}

/// Σ_{|s|=σ} Q^p_s(x, l) ∏ w(s_j), with Q evaluated at (x, l).
fn q_weighted(p: u32, m: u32, sigma: u32, x: &Rat, l: &Rat, w: impl Fn(u32) -> Rat) -> Result<Rat> {
    let q = q_coeffs(p, m)?;
    let mut acc = Rat::zero();
    for s in compositions(sigma, m) {
        let Some(c) = q.get(&s) else { continue };
        let mut term = c.eval(&[x.clone(), l.clone()]);
        for &sj in &s {
            term *= w(sj);
        }
        acc += term;
    }
    Ok(acc)
}

/// [ħ^{q+p}][E_{l-q,l}] Ǎ(k, ħ) by the closed form
/// (1/k) Σ_σ Σ_{|s|=σ} Q^p_s(k,l) ∏(k)_{s_j} (mk-σ)_{k+q-σ} / (k+q-σ)!.
pub fn acheck_e_coeff(m: u32, k: i64, q: i64, p: u32, l: &Rat) -> Result<Rat> {
    check_k(k)?;
    if q + k < 0 {
        return Ok(Rat::zero());
    }
    let kr = rat(k);
    let mk = m as i64 * k;
    let mut acc = Rat::zero();
    for sigma in 0..=(2 * p).min((q + k) as u32) {
        let v = q_weighted(p, m, sigma, &kr, l, |s| falling_factorial(&kr, s as i64).unwrap())?;
        if v.is_zero() {
            continue;
        }
        let t = q + k - sigma as i64;
        acc += v * falling_factorial(&rat(mk - sigma as i64), t)? / factorial_rat(t as u64);
    }
    Ok(acc / kr)
}

/// The same coefficient as (1/k)[ħ^{q+p+k}] Δ^{q+k} P_k^m (l) / (q+k)!.
pub fn acheck_e_direct(m: u32, k: i64, q: i64, p: u32, l: &Rat) -> Result<Rat> {
    check_k(k)?;
    if q + k < 0 {
        return Ok(Rat::zero());
    }
    let t = (q + k) as u32;
    let d = delta_power_at(t, l, |x| p_at(k as u32, x).pow(m));
    let e = q + p as i64 + k;
    if e < 0 {
        return Ok(Rat::zero());
    }
    Ok(d.coeff(e as usize) / (factorial_rat(t as u64) * rat(k)))
}

/// [ħ^p][Id] Ǎ(k, ħ) by the closed form with Q^{p+1}(k, -1/2); p ≥ -1.
pub fn acheck_id_coeff(m: u32, k: i64, p: i64) -> Result<Rat> {
    check_k(k)?;
    if p < -1 {
        return Ok(Rat::zero());
    }
    let pp = (p + 1) as u32;
    let kr = rat(k);
    let l = frac(-1, 2);
    let mk = m as i64 * k;
    let mut acc = Rat::zero();
    for sigma in 0..=(2 * pp).min((k - 1) as u32) {
        let v = q_weighted(pp, m, sigma, &kr, &l, |s| falling_factorial(&kr, s as i64).unwrap())?;
        if v.is_zero() {
            continue;
        }
        let t = k - 1 - sigma as i64;
        acc += v * falling_factorial(&rat(mk - sigma as i64), t)? / factorial_rat(t as u64);
    }
    Ok(acc / (&kr * &kr))
}

/// The same coefficient as (1/(k·k!))[ħ^{p+k}] Δ^{k-1} P_k^m(-1/2).
pub fn acheck_id_direct(m: u32, k: i64, p: i64) -> Result<Rat> {
    check_k(k)?;
    let e = p + k;
    if e < 0 {
        return Ok(Rat::zero());
    }
    let d = delta_power_at((k - 1) as u32, &frac(-1, 2), |x| p_at(k as u32, x).pow(m));
    Ok(d.coeff(e as usize) / (rat(k) * factorial_rat(k as u64)))
}

/// [ħ^{q+p}][E_{l-q,l}] Ǎ†(r, ħ) by the closed form
/// (-1)^{q-r} Σ Q^p_s(-r,l) ∏ r^{(s_j)} (mr+σ)^{(q-r-σ)} / (r (q-r-σ)!).
pub fn adagger_e_coeff(m: u32, r: i64, q: i64, p: u32, l: &Rat) -> Result<Rat> {
    check_k(r)?;
    if q < r {
        return Ok(Rat::zero());
    }
    let rr = rat(r);
    let mr = m as i64 * r;
    let mut acc = Rat::zero();
    for sigma in 0..=2 * p {
        let t = q - r - sigma as i64;
        if t < 0 {
            break;
        }
        let v = q_weighted(p, m, sigma, &(-&rr), l, |s| rising_factorial(&rr, s as u64))?;
        if v.is_zero() {
            continue;
        }
        acc += v * rising_factorial(&rat(mr + sigma as i64), t as u64) / factorial_rat(t as u64);
    }
    if (q - r) % 2 != 0 {
        acc = -acc;
    }
    Ok(acc / rr)
}

/// The same coefficient as (1/r)[ħ^{q+p-r}] Δ^{q-r} P̃_r^{-m}(l) / (q-r)!, with P̃_r^{-m}
/// obtained by power-series inversion.
pub fn adagger_e_direct(m: u32, r: i64, q: i64, p: u32, l: &Rat) -> Result<Rat> {
    check_k(r)?;
    if q < r {
        return Ok(Rat::zero());
    }
    let t = (q - r) as u32;
    let order = q + p as i64 - r;
    let f = |x: &Rat| {
        HSeries::from_upoly(&p_tilde_at(r as u32, x).pow(m)).inverse(order)
    };
    let d = delta_power_series_at(t, l, f);
    Ok(d.coeff(order) / (factorial_rat(t as u64) * rat(r)))
}

/// c(r) = (-1)^m (mr-r+1)^{(m+r-1)} / r!, the constant stated for the residue relation.
pub fn residue_constant(m: u32, r: i64) -> Rat {
    let m = m as i64;
    let sign = if m % 2 == 0 { Rat::one() } else { -Rat::one() };
    sign * rising_factorial(&rat(m * r - r + 1), (m + r - 1) as u64) / factorial_rat(r as u64)
}

/// -r·c(r) = (-1)^{m+1} (mr-r+1)^{(m+r-1)} / (r-1)!, the ratio the residues actually show.
pub fn residue_constant_measured(m: u32, r: i64) -> Rat {
    -rat(r) * residue_constant(m, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_examples() {
        for l in [frac(-5, 2), frac(1, 2), frac(7, 2)] {
            assert_eq!(acheck_e_coeff(2, 1, 1, 0, &l).unwrap(), rat(1));
            assert_eq!(acheck_e_direct(2, 1, 1, 0, &l).unwrap(), rat(1));
        }
        assert_eq!(acheck_e_coeff(2, 2, -3, 1, &frac(1, 2)).unwrap(), rat(0));
        assert!(acheck_e_coeff(2, 0, 1, 0, &frac(1, 2)).is_err());
    }

    #[test]
    fn id_examples() {
        assert_eq!(acheck_id_coeff(2, 1, -1).unwrap(), rat(1));
        assert_eq!(acheck_id_direct(2, 1, -1).unwrap(), rat(1));
        assert_eq!(acheck_id_coeff(2, 2, -1).unwrap(), rat(1));
        assert_eq!(acheck_id_direct(2, 2, -1).unwrap(), rat(1));
        for p in 0..4 {
            assert_eq!(acheck_id_coeff(2, 1, p).unwrap(), rat(0));
            assert_eq!(acheck_id_direct(2, 1, p).unwrap(), rat(0));
        }
    }

    #[test]
    fn closed_and_direct_agree() {
        for m in 2..=3u32 {
            for k in 1..=5i64 {
                for q in -k..=3 {
                    for p in 0..=2u32 {
                        for l in [frac(-7, 2), frac(-1, 2), frac(1, 2), frac(5, 2)] {
                            assert_eq!(
                                acheck_e_coeff(m, k, q, p, &l).unwrap(),
                                acheck_e_direct(m, k, q, p, &l).unwrap(),
                                "m={m} k={k} q={q} p={p} l={l}"
                            );
                        }
                    }
                }
                for p in -1..=3i64 {
                    assert_eq!(acheck_id_coeff(m, k, p).unwrap(), acheck_id_direct(m, k, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn dagger_closed_and_direct_agree() {
        for m in 1..=3u32 {
            for r in 1..=3i64 {
                for q in 0..=5i64 {
                    for p in 0..=2u32 {
                        for l in [frac(-3, 2), frac(1, 2), frac(5, 2)] {
                            assert_eq!(
                                adagger_e_coeff(m, r, q, p, &l).unwrap(),
                                adagger_e_direct(m, r, q, p, &l).unwrap(),
                                "m={m} r={r} q={q} p={p} l={l}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn prefactor_and_constant() {
        assert_eq!(a_prefactor(2, 1).unwrap(), rat(1));
        assert_eq!(a_prefactor(3, 2).unwrap(), frac(1, 2));
        assert_eq!(residue_constant(2, 1), rat(6));
        assert_eq!(residue_constant(3, 2), frac(-5 * 6 * 7 * 8, 2));
        assert_eq!(residue_constant_measured(2, 1), rat(-6));
        assert_eq!(residue_constant_measured(2, 2), rat(-3 * 4 * 5));
        assert!(a_prefactor(1, 3).is_err());
    }
}
