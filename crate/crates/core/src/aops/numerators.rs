//! Numerator polynomials S, S^Id recovered by interpolation in k, ρ_p, and the residue relation.

use num_traits::{One, Zero};

use super::coeffs::{
    a_prefactor, acheck_e_coeff, acheck_id_coeff, adagger_e_coeff, residue_constant, residue_constant_measured,
};
use super::rpoly::{compositions, q_coeffs, KL};
use crate::error::{Error, Result};
use crate::exactmath::factorial::falling_factorial_linear;
use crate::exactmath::rat::{frac, rat};
use crate::exactmath::{MPoly, Rat, RatFun, UPoly};

/// First k used for interpolation samples.
pub const K_START: i64 = 1;
const HELD_OUT: usize = 3;

/// ∏_{m ≤ j ≤ top, m ∤ j} (k - j/m).
pub fn pole_product(m: u32, top: i64) -> UPoly {
    let m = m as i64;
    let roots: Vec<Rat> = (m..=top).filter(|j| j % m != 0).map(|j| frac(j, m)).collect();
    UPoly::from_roots(&roots)
}

pub(crate) fn rising_shift(q: i64) -> UPoly {
    // (k+1)(k+2)…(k+q)
    let roots: Vec<Rat> = (1..=q).map(|i| rat(-i)).collect();
    UPoly::from_roots(&roots)
}

/// Interpolates samples f(k_start), f(k_start+1), … by a polynomial of degree ≤ deg and
/// checks HELD_OUT further points.
pub fn fit_in_k(deg: usize, k_start: i64, f: &dyn Fn(i64) -> Result<Rat>) -> Result<UPoly> {
    let ks: Vec<i64> = (k_start..k_start + deg as i64 + 1 + HELD_OUT as i64).collect();
    let vals: Vec<Rat> = ks.iter().map(|&k| f(k)).collect::<Result<_>>()?;
    let xs: Vec<Rat> = ks.iter().map(|&k| rat(k)).collect();
    let n = deg + 1;
    let poly = UPoly::interpolate(&xs[..n], &vals[..n])?;
    for i in n..xs.len() {
        if poly.eval(&xs[i]) != vals[i] {
            return Err(Error::Mismatch(format!(
                "degree ≤ {deg} interpolant misses the held-out value at k = {}",
                xs[i]
            )));
        }
    }
    Ok(poly)
}

/// Sampling bound for deg S_{p,l,q}: 6p+q, widened by m for the (mk)_{m-σ} factors of small σ.
pub fn s_degree_bound(m: u32, p: u32, q: i64) -> usize {
    (6 * p as i64 + q + m as i64) as usize
}

/// Sampling bound for deg S^Id_p.
pub fn s_id_degree_bound(m: u32, p: u32) -> usize {
    (8 * p + 2 * m + 8) as usize
}

/// S_{p,l,q}(k) at a fixed l.
pub fn s_numerator_at(m: u32, p: u32, q: i64, l: &Rat) -> Result<UPoly> {
    if q < 1 {
        return Err(Error::Precondition("S_{p,l,q} needs q ≥ 1".into()));
    }
    let poles = pole_product(m, 2 * p as i64 - 1);
    let shift = rising_shift(q);
    let f = |k: i64| -> Result<Rat> {
        let kr = rat(k);
        Ok(acheck_e_coeff(m, k, q, p, l)? / a_prefactor(m, k)? * poles.eval(&kr) * shift.eval(&kr))
    };
    let s = fit_in_k(s_degree_bound(m, p, q), K_START, &f)?;
    Ok(s)
}

/// S_{p,l,q}(k) as a polynomial in (k, l).
pub fn s_numerator(m: u32, p: u32, q: i64) -> Result<MPoly> {
    let deg_l = 2 * p as usize;
    let ls: Vec<Rat> = (0..deg_l as i64 + 1 + HELD_OUT as i64).map(|i| frac(2 * i - 3, 2)).collect();
    let polys: Vec<UPoly> = ls.iter().map(|l| s_numerator_at(m, p, q, l)).collect::<Result<_>>()?;
    let kdeg = polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let n = deg_l + 1;
    let mut out = MPoly::zero(&KL);
    for d in 0..=kdeg {
        let ys: Vec<Rat> = polys.iter().map(|p| p.coeff(d)).collect();
        let c = UPoly::interpolate(&ls[..n], &ys[..n])?;
        for i in n..ls.len() {
            if c.eval(&ls[i]) != ys[i] {
                return Err(Error::Mismatch(format!("S numerator exceeds degree {deg_l} in l")));
            }
        }
        for (e, v) in c.coeffs().iter().enumerate() {
            out.add_term(vec![d as u32, e as u32], v.clone());
        }
    }
    Ok(out)
}

/// S^Id_p(k), with divisibility by k² and by (mk-k+1) asserted.
pub fn s_id_numerator(m: u32, p: u32) -> Result<UPoly> {
    if m < 2 {
        return Err(Error::Precondition("S^Id needs m ≥ 2".into()));
    }
    let mi = m as i64;
    let poles = pole_product(m, 2 * p as i64 + 1);
    let f = |k: i64| -> Result<Rat> {
        let kr = rat(k);
        let extra = &kr * &kr * rat(mi * k - k + 1);
        Ok(acheck_id_coeff(m, k, p as i64)? / a_prefactor(m, k)? * poles.eval(&kr) * extra)
    };
    let s = fit_in_k(s_id_degree_bound(m, p), K_START, &f)?;
    if s.root_multiplicity(&Rat::zero()) < 2 && !s.is_zero() {
        return Err(Error::Mismatch(format!("S^Id_{p} (m = {m}) not divisible by k²")));
    }
    if !s.eval(&frac(1, 1 - mi)).is_zero() {
        return Err(Error::Mismatch(format!("S^Id_{p} (m = {m}) not divisible by mk-k+1")));
    }
    Ok(s)
}

/// ρ_p(k) = Σ_σ (k-1)_σ/(mk)_σ · Σ_{|s|=σ} Q^p_s(k,-1/2) ∏(k)_{s_j}.
pub fn rho(p: u32, m: u32) -> Result<RatFun> {
    let q = q_coeffs(p, m)?;
    let mut acc = RatFun::zero();
    for sigma in 0..=2 * p {
        let mut v = UPoly::zero();
        for s in compositions(sigma, m) {
            let Some(c) = q.get(&s) else { continue };
            let mut term = c
                .partial_eval(1, &frac(-1, 2))
                .to_upoly(0)
                .expect("univariate in k");
            for &sj in &s {
                term = &term * &falling_factorial_linear(&Rat::one(), &Rat::zero(), sj as u64);
            }
            v = &v + &term;
        }
        if v.is_zero() {
            continue;
        }
        let num = &falling_factorial_linear(&Rat::one(), &rat(-1), sigma as u64) * &v;
        let den = falling_factorial_linear(&rat(m as i64), &Rat::zero(), sigma as u64);
        acc = acc.add(&RatFun::new(num, den)?);
    }
    Ok(acc)
}

/// Res_{k=-r} of the interpolated coefficient of ħ^{q+p} E_{l-q,l} in Ǎ(k)/prefactor(k),
/// together with the matching Ǎ†(r) coefficient.
pub fn residue_relation_sides(m: u32, r: i64, q: i64, p: u32, l: &Rat) -> Result<(Rat, Rat)> {
    if r < 1 {
        return Err(Error::Precondition("residue relation needs r ≥ 1".into()));
    }
    let s = s_numerator_at(m, p, q, l)?;
    let den = &pole_product(m, 2 * p as i64 - 1) * &rising_shift(q);
    let a = RatFun::new(s, den)?;
    Ok((a.residue(&rat(-r)), adagger_e_coeff(m, r, q, p, l)?))
}

/// Res_{k=-r} = c(r)·Ǎ† with c(r) = residue_constant.
pub fn residue_relation_check(m: u32, r: i64, q: i64, p: u32, l: &Rat) -> Result<bool> {
    let (res, dag) = residue_relation_sides(m, r, q, p, l)?;
    Ok(res == residue_constant(m, r) * dag)
}

/// Res_{k=-r} = -r·c(r)·Ǎ†.
pub fn residue_relation_check_measured(m: u32, r: i64, q: i64, p: u32, l: &Rat) -> Result<bool> {
    let (res, dag) = residue_relation_sides(m, r, q, p, l)?;
    Ok(res == residue_constant_measured(m, r) * dag)
}
