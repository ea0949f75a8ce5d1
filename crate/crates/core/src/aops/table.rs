//! Ǎ(k, ħ) coefficients as rational functions of k, assembled from the interpolated numerators.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::coeffs::{a_prefactor, acheck_e_coeff, acheck_id_coeff};
use super::numerators::{pole_product, rising_shift, s_id_numerator, s_numerator};
use crate::error::{Error, Result};
use crate::exactmath::rat::{frac, rat};
use crate::exactmath::{MPoly, Rat, RatFun, UPoly};

/// Coefficients of the rescaled operator 𝓐(k, ħ) = Ǎ(k, ħ)/prefactor(k).
///
/// `e[(q, p)]` is S_{p,l,q}(k) over ∏(k - j/m)·(k+1)…(k+q); `id[p]` is S^Id_p over
/// ∏(k - j/m)·k²(mk-k+1). Sampled on integer k ≥ 1 and l ∈ ℤ+1/2, which is the only
/// range where the values are checked against Ǎ itself.
#[derive(Clone, Debug)]
pub struct ACoeffTable {
    pub m: u32,
    pub e: BTreeMap<(i64, u32), MPoly>,
    pub id: BTreeMap<u32, RatFun>,
}

impl ACoeffTable {
    pub fn build(m: u32, q_max: i64, p_max: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Precondition("coefficient table needs m ≥ 2".into()));
        }
        let mut e = BTreeMap::new();
        let mut id = BTreeMap::new();
        for p in 0..=p_max {
            for q in 1..=q_max {
                e.insert((q, p), s_numerator(m, p, q)?);
            }
            let mi = m as i64;
            let extra = UPoly::from_roots(&[Rat::zero(), Rat::zero(), frac(1, 1 - mi)]).scale(&rat(mi - 1));
            let den = &pole_product(m, 2 * p as i64 + 1) * &extra;
            id.insert(p, RatFun::new(s_id_numerator(m, p)?, den)?);
        }
        Ok(ACoeffTable { m, e, id })
    }

    /// [ħ^{q+p}][E_{l-q,l}] 𝓐(k, ħ) as a rational function of k at fixed l.
    pub fn e_rational(&self, q: i64, p: u32, l: &Rat) -> Result<RatFun> {
        let s = self
            .e
            .get(&(q, p))
            .ok_or_else(|| Error::Precondition(format!("(q, p) = ({q}, {p}) not tabulated")))?;
        let num = s.partial_eval(1, l).to_upoly(0).expect("univariate in k");
        RatFun::new(num, &pole_product(self.m, 2 * p as i64 - 1) * &rising_shift(q))
    }

    /// [ħ^{q+p}][E_{l-q,l}] Ǎ(k, ħ) for integer k ≥ 1.
    pub fn e_coeff(&self, k: i64, q: i64, p: u32, l: &Rat) -> Result<Rat> {
        Ok(a_prefactor(self.m, k)? * self.e_rational(q, p, l)?.eval(&rat(k))?)
    }

    /// [ħ^p][Id] Ǎ(k, ħ) for integer k ≥ 1.
    pub fn id_coeff(&self, k: i64, p: u32) -> Result<Rat> {
        let f = self
            .id
            .get(&p)
            .ok_or_else(|| Error::Precondition(format!("p = {p} not tabulated")))?;
        Ok(a_prefactor(self.m, k)? * f.eval(&rat(k))?)
    }

    /// Compares every entry with the closed forms on k = 1..=k_max, l ∈ {-7/2, …, 7/2}.
    pub fn verify(&self, k_max: i64) -> Result<()> {
        for (&(q, p), _) in &self.e {
            for l2 in (-7..=7).step_by(2) {
                let l = frac(l2, 2);
                for k in 1..=k_max {
                    if self.e_coeff(k, q, p, &l)? != acheck_e_coeff(self.m, k, q, p, &l)? {
                        return Err(Error::Mismatch(format!("E entry (q, p) = ({q}, {p}) at k = {k}, l = {l}")));
                    }
                }
            }
        }
        for &p in self.id.keys() {
            for k in 1..=k_max {
                if self.id_coeff(k, p)? != acheck_id_coeff(self.m, k, p as i64)? {
                    return Err(Error::Mismatch(format!("Id entry p = {p} at k = {k}")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_reproduces_closed_forms() {
        for m in 2..=3u32 {
            let t = ACoeffTable::build(m, 3, 2).unwrap();
            t.verify(10).unwrap();
        }
        assert!(ACoeffTable::build(1, 1, 0).is_err());
    }

    #[test]
    fn id_entry_at_p0() {
        // [ħ^0][Id] Ǎ(1) vanishes for m = 2
        let t = ACoeffTable::build(2, 1, 0).unwrap();
        assert_eq!(t.id_coeff(1, 0).unwrap(), rat(0));
    }
}
