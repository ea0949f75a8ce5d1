//! W_{g,n} as a sum of tensor products of Ξ^d elements, one factor per variable.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::xi::{xi_from_poly, xi_pole_indices, XiElement};
use super::xseries::XSeries;
use crate::error::{Error, Result};
use crate::exactmath::rat::{frac, rat};
use crate::exactmath::{MPoly, Rat, UPoly};
use crate::fockspace::bms_fock;
use crate::permoracle::Partition;
use crate::quasipoly::{pole_indices, QuasiPolyForm};
use crate::report::CheckReport;

/// Σ_α c_α ⊗_i W^{(α_i)}, where W^{(e)} ∈ Ξ^d has polynomial k^e times the extra pole factors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WTensor {
    pub m: u32,
    pub g: u32,
    pub n: usize,
    pub d: u32,
    pub poly: MPoly,
    /// W^{(e)} for each exponent e occurring in the polynomial.
    pub factors: BTreeMap<u32, XiElement>,
}

/// Smallest d whose pole range covers the normal form denominator and whose degree bound
/// admits k^deg times the extra pole factors.
pub fn choose_d(m: u32, g: u32, n: usize, deg: u32) -> u32 {
    let top = 4 * g as i64 - 4 + 2 * n as i64 - 1;
    let mut d = 0u32;
    loop {
        let dim = (m * (d + 1)) as i64;
        let extra = xi_pole_indices(m, d).iter().filter(|&&j| j > top).count() as i64;
        if dim > top && deg as i64 + extra <= dim - 1 {
            return d;
        }
        d += 1;
    }
}

fn factor_poly(m: u32, g: u32, n: usize, d: u32, e: u32) -> UPoly {
    let top = 4 * g as i64 - 4 + 2 * n as i64 - 1;
    let extra: Vec<Rat> = xi_pole_indices(m, d)
        .into_iter()
        .filter(|&j| j > top)
        .map(|j| frac(j, m as i64))
        .collect();
    &UPoly::monomial(rat(1), e as usize) * &UPoly::from_roots(&extra)
}

pub fn w_assemble(form: &QuasiPolyForm) -> Result<WTensor> {
    let (m, g, n) = (form.m, form.g, form.n);
    let deg = form.poly.terms().keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
    let d = choose_d(m, g, n, deg);
    // the Ξ^d pole set must equal the normal form one
    let covered: Vec<i64> = xi_pole_indices(m, d)
        .into_iter()
        .filter(|&j| j <= 4 * g as i64 - 4 + 2 * n as i64 - 1)
        .collect();
    let wanted: Vec<i64> = pole_indices(m, g, n).into_iter().filter(|&j| j != m as i64).collect();
    if covered != wanted {
        return Err(Error::Mismatch(format!("pole sets differ: Ξ^{d} {covered:?}, normal form {wanted:?}")));
    }
    let exps: Vec<u32> = {
        let mut v: Vec<u32> = form.poly.terms().keys().flat_map(|e| e.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let factors: Vec<(u32, XiElement)> = exps
        .par_iter()
        .map(|&e| xi_from_poly(m, d, &factor_poly(m, g, n, d, e)).map(|x| (e, x)))
        .collect::<Result<_>>()?;
    Ok(WTensor { m, g, n, d, poly: form.poly.clone(), factors: factors.into_iter().collect() })
}

impl WTensor {
    /// Expansions of the factors, to X^order.
    pub fn factor_series(&self, order: usize) -> Result<BTreeMap<u32, XSeries>> {
        self.factors.iter().map(|(e, x)| Ok((*e, x.expansion(order)?))).collect()
    }

    /// [X_1^{μ_1}…X_n^{μ_n}] W from precomputed factor expansions.
    pub fn coeff_with(&self, series: &BTreeMap<u32, XSeries>, mu: &[u32]) -> Rat {
        let mut acc = Rat::zero();
        for (exp, c) in self.poly.terms() {
            let mut t = c.clone();
            for (e, &x) in exp.iter().zip(mu) {
                t *= series[e].coeff(x as usize);
            }
            acc += t;
        }
        acc
    }
}

/// Compares [X^μ] W with b°_{g,μ} from the Fock route for all 1 ≤ μ_i ≤ mu_max.
pub fn w_check(form: &QuasiPolyForm, mu_max: u32) -> Result<CheckReport> {
    let w = w_assemble(form)?;
    let series = w.factor_series(mu_max as usize)?;
    let mut tuples: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..form.n {
        tuples = tuples
            .into_iter()
            .flat_map(|t| (1..=mu_max).map(move |x| [t.clone(), vec![x]].concat()))
            .collect();
    }
    let mut parts: Vec<Partition> = tuples.iter().map(|t| Partition::of(t)).collect();
    parts.sort();
    parts.dedup();
    let fock: BTreeMap<Partition, Rat> = parts
        .par_iter()
        .map(|p| bms_fock(form.m, form.g, p).map(|v| (p.clone(), v)))
        .collect::<Result<_>>()?;
    let mut r = CheckReport::new(format!("W expansion, m = {}, (g, n) = ({}, {})", form.m, form.g, form.n));
    for t in &tuples {
        r.expect_eq(&format!("μ = {t:?}"), &w.coeff_with(&series, t), &fock[&Partition::of(t)]);
    }
    Ok(r)
}
