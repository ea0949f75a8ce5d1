//! X-expansions of ω_{g,n} against the Fock route.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::local::Slot;
use super::recursion::Recursion;
use crate::error::Result;
use crate::exactmath::rat::{rat, serde_string};
use crate::exactmath::Rat;
use crate::fockspace::bms_fock;
use crate::permoracle::Partition;
use crate::report::CheckReport;
use crate::spectral::{z_series, XSeries};

#[derive(Clone, Debug, Serialize)]
pub struct TrRow {
    pub g: u32,
    pub n: usize,
    pub mu: Vec<u32>,
    #[serde(with = "serde_string")]
    pub tr_value: Rat,
    #[serde(with = "serde_string")]
    pub fock_value: Rat,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrComparison {
    pub rows: Vec<TrRow>,
}

impl TrComparison {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }

    pub fn report(&self, name: impl Into<String>) -> CheckReport {
        let mut r = CheckReport::new(name);
        for row in &self.rows {
            r.expect_eq(&format!("(g, n) = ({}, {}), μ = {:?}", row.g, row.n, row.mu), &row.tr_value, &row.fock_value);
        }
        r
    }
}

/// (z(X) − a)^{−d} z'(X) up to X^order.
fn slot_expansion(s: Slot, z: &XSeries, order: usize) -> Result<XSeries> {
    let (a, d) = s;
    let shifted = z.sub(&XSeries::monomial(rat(a as i64), 0, z.order()));
    let dz = XSeries::from_coeffs((0..=order).map(|k| z.coeff(k + 1) * rat(k as i64 + 1)).collect());
    Ok(shifted.inverse()?.pow(d).truncate(order).mul(&dz))
}

fn nondecreasing(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let lo = v.last().copied().unwrap_or(1);
                (lo..=max).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Reads b°_{g,μ} off the coefficient of ∏ μ_i X_i^{μ_i−1} dX_i and compares with the Fock route,
/// for nondecreasing μ with parts ≤ mu_max (ω is certified symmetric).
pub fn expand_and_compare(rec: &mut Recursion, g: u32, n: usize, mu_max: u32) -> Result<TrComparison> {
    let w = rec.omega(g, n)?;
    let order = mu_max as usize - 1;
    let z = z_series(2, order + 1)?;
    let mut basis: BTreeMap<Slot, XSeries> = BTreeMap::new();
    for k in w.terms.keys() {
        for s in k {
            if !basis.contains_key(s) {
                basis.insert(*s, slot_expansion(*s, &z, order)?);
            }
        }
    }
    let mut rows = Vec::new();
    for mu in nondecreasing(n, mu_max) {
        let mut c = Rat::zero();
        for (k, v) in &w.terms {
            let mut p = v.clone();
            for (s, &mi) in k.iter().zip(&mu) {
                p *= basis[s].coeff(mi as usize - 1);
            }
            c += p;
        }
        let weight: Rat = mu.iter().fold(Rat::one(), |acc, &mi| acc * rat(mi as i64));
        let tr_value = c / weight;
        let fock_value = bms_fock(2, g, &Partition::of(&mu))?;
        let equal = tr_value == fock_value;
        rows.push(TrRow { g, n, mu, tr_value, fock_value, equal });
    }
    Ok(TrComparison { rows })
}
