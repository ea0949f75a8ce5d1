//! Vacuum expectations by the character formula, and their connected parts.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::HashMap;

use super::characters::{character, content_poly, hook_dimension};
use crate::error::{Error, Result};
use crate::exactmath::rat::factorial;
use crate::exactmath::{HSeries, Rat};
use crate::permoracle::{partitions_of, Partition};

/// Largest |μ| accepted by the character route.
pub const CHARACTER_BUDGET: u32 = 32;

/// ⟨e^{α_1} D(ħ)^m ∏ α_{-μ_i}/μ_i⟩ truncated at ħ^order.
pub fn disconnected_vev(m: u32, mu: &Partition, order: i64) -> Result<HSeries> {
    let n = mu.size();
    if n > CHARACTER_BUDGET {
        return Err(Error::Budget(format!(
            "character sum over partitions of {n} exceeds the bound {CHARACTER_BUDGET}"
        )));
    }
    let lambdas = partitions_of(n);
    let summed: Vec<BigInt> = lambdas
        .par_iter()
        .map(|l| {
            let w = hook_dimension(l) * BigInt::from(character(l, mu).expect("sizes agree"));
            content_poly(l, m).into_iter().map(|c| c * &w).collect::<Vec<_>>()
        })
        .reduce(Vec::new, |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), BigInt::zero());
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    let denom = factorial(n as u64) * mu.parts().iter().map(|&p| BigInt::from(p)).product::<BigInt>();
    let mut s = HSeries::zero();
    for (e, c) in summed.into_iter().enumerate() {
        if !c.is_zero() {
            s = s.add(&HSeries::monomial(Rat::new(c, denom.clone()), e as i64));
        }
    }
    if order < s.max_degree().unwrap_or(0) {
        s = s.truncate(order);
    }
    Ok(s)
}

fn sub_partition(mu: &Partition, mask: u32) -> Partition {
    let parts = mu
        .parts()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &p)| p)
        .collect();
    Partition::new(parts).expect("positive parts")
}

/// Connected part of ⟨∏ Ǎ(μ_i, ħ)⟩; each block carries the factor ħ^{-Σμ_i}.
pub fn connected_correlator(m: u32, mu: &Partition, order: i64) -> Result<HSeries> {
    let n = mu.len();
    if n == 0 {
        return Err(Error::Precondition("connected correlator of an empty family".into()));
    }
    if n > 20 {
        return Err(Error::Budget(format!("{n} insertions is too many for set-partition inversion")));
    }
    let full_mask = (1u32 << n) - 1;
    // disconnected block values, shared by equal sub-multisets
    let mut by_parts: HashMap<Partition, HSeries> = HashMap::new();
    let mut full = vec![HSeries::one(); 1 << n];
    for mask in 1..=full_mask {
        let sub = sub_partition(mu, mask);
        let v = match by_parts.get(&sub) {
            Some(v) => v.clone(),
            None => {
                let v = disconnected_vev(m, &sub, order)?.shift(-(sub.size() as i64));
                by_parts.insert(sub, v.clone());
                v
            }
        };
        full[mask as usize] = v;
    }
    // full(S) = Σ_{B ∋ min S} conn(B)·full(S∖B)
    let mut conn = vec![HSeries::zero(); 1 << n];
    for mask in 1..=full_mask {
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let mut acc = full[mask as usize].clone();
        let mut sub = rest;
        loop {
            // B = low ∪ sub, proper subset of mask
            let b = low | sub;
            if b != mask {
                acc = acc.sub(&conn[b as usize].mul(&full[(mask & !b) as usize]));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        conn[mask as usize] = acc;
    }
    Ok(conn[full_mask as usize].clone())
}

/// b°_{g,μ} as the coefficient of ħ^{2g-2+ℓ(μ)} in the connected correlator.
pub fn bms_fock(m: u32, g: u32, mu: &Partition) -> Result<Rat> {
    let order = m as i64 * mu.size() as i64;
    let c = connected_correlator(m, mu, order)?;
    let e = 2 * g as i64 - 2 + mu.len() as i64;
    if e > c.truncation_order() {
        return Err(Error::Budget(format!("ħ^{e} lies beyond the computed order")));
    }
    Ok(c.coeff(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::{frac, rat};

    #[test]
    fn disconnected_examples() {
        let v = disconnected_vev(2, &Partition::of(&[2]), 2).unwrap();
        assert_eq!(v, HSeries::monomial(rat(1), 1));
        for m in 1..=4 {
            assert_eq!(disconnected_vev(m, &Partition::of(&[1]), 3).unwrap(), HSeries::one());
        }
        let v = disconnected_vev(2, &Partition::of(&[1, 1]), 2).unwrap();
        assert_eq!(v, HSeries::one().add(&HSeries::monomial(rat(1), 2)));
        let v = disconnected_vev(2, &Partition::of(&[3]), 6).unwrap();
        assert_eq!(v, HSeries::monomial(frac(5, 3), 2).add(&HSeries::monomial(frac(1, 3), 4)));
    }

    #[test]
    fn connected_examples() {
        let c = connected_correlator(2, &Partition::of(&[1, 1]), 4).unwrap();
        assert_eq!(c, HSeries::one());
        let c = connected_correlator(2, &Partition::of(&[3]), 6).unwrap();
        assert_eq!(c.coeff(1), frac(1, 3));
        assert_eq!(c.coeff(-1), frac(5, 3));
    }

    #[test]
    fn fock_route_examples() {
        assert_eq!(bms_fock(2, 0, &Partition::of(&[1])).unwrap(), rat(1));
        assert_eq!(bms_fock(2, 0, &Partition::of(&[3])).unwrap(), frac(5, 3));
        assert_eq!(bms_fock(3, 0, &Partition::of(&[1])).unwrap(), rat(1));
        assert_eq!(bms_fock(2, 1, &Partition::of(&[3])).unwrap(), frac(1, 3));
    }

    #[test]
    fn budget() {
        assert!(matches!(
            disconnected_vev(2, &Partition::of(&[33]), 1),
            Err(Error::Budget(_))
        ));
    }
}
