//! z(X), the ξ-functions and the space Ξ^d spanned by their x-derivatives.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::xseries::XSeries;
use crate::aops::a_prefactor;
use crate::error::{Error, Result};
use crate::exactmath::linalg::solve;
use crate::exactmath::rat::{binomial, frac, rat};
use crate::exactmath::{Rat, UPoly};

/// [X^k] z = C(mk, k-1) - m C(mk-1, k-2), from Lagrange inversion.
pub fn z_coeff(m: u32, k: usize) -> Rat {
    let (m, k) = (m as i64, k as i64);
    binomial(m * k, k - 1) - rat(m) * binomial(m * k - 1, k - 2)
}

/// z(X), the inverse of X = z/(1+z)^m, by the fixed point z = X(1+z)^m; checked
/// against the Lagrange coefficients.
pub fn z_series(m: u32, order: usize) -> Result<XSeries> {
    let x = XSeries::monomial(Rat::one(), 1, order);
    let mut z = XSeries::zero(order);
    for _ in 0..order {
        z = x.mul(&XSeries::one(order).add(&z).pow(m));
    }
    for k in 0..=order {
        if z.coeff(k) != z_coeff(m, k) {
            return Err(Error::Mismatch(format!("[X^{k}] z: fixed point {}, Lagrange {}", z.coeff(k), z_coeff(m, k))));
        }
    }
    Ok(z)
}

/// X(z(X)) - X, which must vanish.
pub fn inversion_defect(m: u32, order: usize) -> Result<XSeries> {
    let z = z_series(m, order)?;
    let back = z.div(&XSeries::one(order).add(&z).pow(m))?;
    Ok(back.sub(&XSeries::monomial(Rat::one(), 1, order)))
}

/// [X^k] ξ_i = -C(mk-m, k-i).
pub fn xi_coeff(m: u32, i: u32, k: usize) -> Rat {
    let (m, k) = (m as i64, k as i64);
    -binomial(m * k - m, k - i as i64)
}

/// ξ_i = z^i / ((1+z)^{m-1} ((m-1)z - 1)) expanded in X, checked against xi_coeff.
pub fn xi_series(m: u32, i: u32, order: usize) -> Result<XSeries> {
    if i >= m {
        return Err(Error::Precondition(format!("ξ_i needs 0 ≤ i < m (i = {i}, m = {m})")));
    }
    let z = z_series(m, order)?;
    let one = XSeries::one(order);
    let den = one
        .add(&z)
        .pow(m - 1)
        .mul(&z.scale(&rat(m as i64 - 1)).sub(&one));
    let s = z.pow(i).div(&den)?;
    for k in 0..=order {
        if s.coeff(k) != xi_coeff(m, i, k) {
            return Err(Error::Mismatch(format!(
                "[X^{k}] ξ_{i} (m = {m}): expansion {}, binomial {}",
                s.coeff(k),
                xi_coeff(m, i, k)
            )));
        }
    }
    Ok(s)
}

/// j with m < j < m(d+1) and m ∤ j.
pub fn xi_pole_indices(m: u32, d: u32) -> Vec<i64> {
    let m = m as i64;
    ((m + 1)..(m * (d as i64 + 1))).filter(|j| j % m != 0).collect()
}

/// prefactor(k) · P(k) / ∏ (k - j/m), the coefficient prescribed for elements of Ξ^d.
pub fn prescribed_coeff(m: u32, d: u32, p: &UPoly, k: i64) -> Result<Rat> {
    let kr = rat(k);
    let mut den = Rat::one();
    for j in xi_pole_indices(m, d) {
        den *= &kr - frac(j, m as i64);
    }
    Ok(a_prefactor(m, k)? * p.eval(&kr) / den)
}

/// Σ c_{a,i} D^a ξ_i.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiElement {
    pub m: u32,
    pub d: u32,
    /// (a, i, c_{a,i}) for the nonzero coefficients.
    #[serde(with = "triples")]
    pub coeffs: Vec<(u32, u32, Rat)>,
}

mod triples {
    use super::Rat;
    use crate::exactmath::rat::{parse_rat, rat_to_string};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[(u32, u32, Rat)], s: S) -> Result<S::Ok, S::Error> {
        let t: Vec<(u32, u32, String)> = v.iter().map(|(a, i, c)| (*a, *i, rat_to_string(c))).collect();
        t.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(u32, u32, Rat)>, D::Error> {
        let t: Vec<(u32, u32, String)> = Vec::deserialize(d)?;
        t.into_iter()
            .map(|(a, i, c)| parse_rat(&c).map(|r| (a, i, r)).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// D^a ξ_i for 0 ≤ a ≤ d, 0 ≤ i < m, in the order (a, i), known to X^order.
pub fn basis_series(m: u32, d: u32, order: usize) -> Result<Vec<((u32, u32), XSeries)>> {
    let mut out = Vec::new();
    for i in 0..m {
        let mut s = xi_series(m, i, order)?;
        for a in 0..=d {
            out.push(((a, i), s.truncate(order)));
            s = s.d_operator();
        }
    }
    out.sort_by_key(|(ai, _)| *ai);
    Ok(out)
}

impl XiElement {
    pub fn zero(m: u32, d: u32) -> Self {
        XiElement { m, d, coeffs: Vec::new() }
    }

    pub fn expansion(&self, order: usize) -> Result<XSeries> {
        let basis = basis_series(self.m, self.d, order)?;
        let mut acc = XSeries::zero(order);
        for (a, i, c) in &self.coeffs {
            let (_, s) = basis.iter().find(|(ai, _)| *ai == (*a, *i)).expect("basis index");
            acc = acc.add(&s.scale(c));
        }
        Ok(acc)
    }
}

const EXTRA_CHECKS: usize = 3;

/// The element of Ξ^d whose X^k coefficients are prescribed_coeff(m, d, P, k), found by
/// matching k = 1..m(d+1) and confirmed at the next three k.
pub fn xi_from_poly(m: u32, d: u32, p: &UPoly) -> Result<XiElement> {
    if m < 2 {
        return Err(Error::Precondition("Ξ^d coefficients need m ≥ 2".into()));
    }
    let dim = (m * (d + 1)) as usize;
    if p.degree().is_some_and(|e| e >= dim) {
        return Err(Error::Precondition(format!("deg P must be below m(d+1) = {dim}")));
    }
    if p.is_zero() {
        return Ok(XiElement::zero(m, d));
    }
    let order = dim + EXTRA_CHECKS;
    let basis = basis_series(m, d, order)?;
    let a: Vec<Vec<Rat>> = (1..=dim).map(|k| basis.iter().map(|(_, s)| s.coeff(k)).collect()).collect();
    let b: Vec<Rat> = (1..=dim as i64).map(|k| prescribed_coeff(m, d, p, k)).collect::<Result<_>>()?;
    let c = solve(&a, &b).map_err(|e| Error::Mismatch(format!("Ξ^{d} system for m = {m}: {e}")))?;
    let coeffs: Vec<(u32, u32, Rat)> = basis
        .iter()
        .zip(c)
        .filter(|(_, v)| !v.is_zero())
        .map(|(((a, i), _), v)| (*a, *i, v))
        .collect();
    let el = XiElement { m, d, coeffs };
    let s = el.expansion(order)?;
    for k in dim + 1..=order {
        let want = prescribed_coeff(m, d, p, k as i64)?;
        if s.coeff(k) != want {
            return Err(Error::Mismatch(format!("Ξ^{d} element misses X^{k}: {} vs {want}", s.coeff(k))));
        }
    }
    Ok(el)
}

/// The two cofactors of the degree-raising step: ∏_{i=(d+1)m+1}^{(d+2)m-1} (k - i/m)
/// and ∏_{i=0}^{m-1} (k - i/(m-1)).
pub fn basis_change_cofactors(m: u32, d: u32) -> (UPoly, UPoly) {
    let mi = m as i64;
    let lo = (d as i64 + 1) * mi + 1;
    let hi = (d as i64 + 2) * mi - 1;
    let a = UPoly::from_roots(&(lo..=hi).map(|i| frac(i, mi)).collect::<Vec<_>>());
    let b = UPoly::from_roots(&(0..mi).map(|i| frac(i, mi - 1)).collect::<Vec<_>>());
    (a, b)
}

/// Resultant of the two cofactors; nonzero means they are coprime.
pub fn basis_change_resultant(m: u32, d: u32) -> Rat {
    let (a, b) = basis_change_cofactors(m, d);
    UPoly::resultant(&a, &b)
}

/// Coefficients of D applied to an element with polynomial P, as the raising step
/// predicts: -prefactor(k) P(k-1) k (m-1)^{m-1} ∏_{i=1}^{m-1}(k - i/(m-1)) / (m^m ∏_{m<j<m(d+2)} (k - j/m)).
pub fn raised_coeff(m: u32, d: u32, p: &UPoly, k: i64) -> Result<Rat> {
    let (mi, kr) = (m as i64, rat(k));
    let mut num = p.eval(&rat(k - 1)) * &kr * num_traits::pow(rat(mi - 1), (m - 1) as usize);
    for i in 1..mi {
        num *= &kr - frac(i, mi - 1);
    }
    let mut den = num_traits::pow(rat(mi), m as usize);
    for j in xi_pole_indices(m, d + 1) {
        den *= &kr - frac(j, mi);
    }
    Ok(-a_prefactor(m, k)? * num / den)
}
