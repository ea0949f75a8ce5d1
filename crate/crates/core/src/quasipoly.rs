//! Quasi-polynomial normal form of connected BMS numbers:
//! b°_{g,μ} = ∏ prefactor(μ_i) · Poly_{g,n}(μ) / ∏_i ∏_j (μ_i - j/m).

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactmath::linalg::solve;
use crate::exactmath::rat::{frac, rat};
use crate::exactmath::{MPoly, Rat};
use crate::fockspace::bms_fock;
use crate::permoracle::{partitions_of, Partition};

/// Largest |μ| the fitter will ask the Fock route for.
pub const FIT_SIZE_CAP: u32 = 26;
const HELD_OUT: usize = 3;

/// (mμ_i - m)! / (μ_i! (mμ_i - μ_i - 1)!).
pub fn prefactor(m: u32, mu_i: u32) -> Result<Rat> {
    if m < 2 {
        return Err(Error::Precondition("the normal form needs m ≥ 2".into()));
    }
    crate::aops::a_prefactor(m, mu_i as i64)
}

fn check_stable(g: u32, n: usize) -> Result<()> {
    if 2 * g as i64 - 2 + n as i64 <= 0 || n == 0 {
        return Err(Error::Precondition(format!("(g, n) = ({g}, {n}) is unstable")));
    }
    Ok(())
}

/// j with m ≤ j ≤ 4g-4+2n-1 and m ∤ j.
pub fn pole_indices(m: u32, g: u32, n: usize) -> Vec<i64> {
    let top = 4 * g as i64 - 4 + 2 * n as i64 - 1;
    (m as i64..=top).filter(|j| j % m as i64 != 0).collect()
}

/// ∏_i ∏_j (μ_i - j/m).
pub fn denominator_product(m: u32, g: u32, n: usize, mu: &[u32]) -> Result<Rat> {
    check_stable(g, n)?;
    if mu.len() != n {
        return Err(Error::Precondition(format!("expected {n} parts, got {}", mu.len())));
    }
    let js = pole_indices(m, g, n);
    let mut acc = Rat::one();
    for &x in mu {
        for &j in &js {
            acc *= rat(x as i64) - frac(j, m as i64);
        }
    }
    Ok(acc)
}

/// Poly_{g,n}(μ) read off from b°_{g,μ}.
pub fn normalized_value(m: u32, g: u32, mu: &Partition) -> Result<Rat> {
    let n = mu.len();
    check_stable(g, n)?;
    let b = bms_fock(m, g, mu)?;
    let mut pre = Rat::one();
    for &x in mu.parts() {
        pre *= prefactor(m, x)?;
    }
    Ok(b * denominator_product(m, g, n, mu.parts())? / pre)
}

/// Fitted Poly_{g,n} with the points it was fitted and validated on.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuasiPolyForm {
    pub m: u32,
    pub g: u32,
    pub n: usize,
    pub poly: MPoly,
    /// Degree in each variable.
    pub degree: u32,
    /// j in the denominator factors (μ_i - j/m).
    pub poles: Vec<i64>,
    pub grid: Vec<Partition>,
    pub held_out: Vec<Partition>,
}

impl QuasiPolyForm {
    /// b°_{g,μ} predicted by the normal form.
    pub fn predict(&self, mu: &Partition) -> Result<Rat> {
        if mu.len() != self.n {
            return Err(Error::Precondition(format!("expected {} parts", self.n)));
        }
        let point: Vec<Rat> = mu.parts().iter().map(|&x| rat(x as i64)).collect();
        let mut pre = Rat::one();
        for &x in mu.parts() {
            pre *= prefactor(self.m, x)?;
        }
        Ok(self.poly.eval(&point) * pre / denominator_product(self.m, self.g, self.n, mu.parts())?)
    }

    /// Compares predictions with the Fock route at the given points.
    pub fn check_points(&self, points: &[Partition]) -> Result<()> {
        for mu in points {
            let want = bms_fock(self.m, self.g, mu)?;
            let got = self.predict(mu)?;
            if got != want {
                return Err(Error::Mismatch(format!("normal form at μ = {mu}: {got}, Fock route {want}")));
            }
        }
        Ok(())
    }
}

fn mu_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("mu{i}")).collect()
}

/// Exponent vectors a with a_1 + … + a_n ≤ d, standing for e_1^{a_1}…e_n^{a_n}.
fn e_exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn elementary_values(mu: &[u32]) -> Vec<Rat> {
    // coefficients of ∏(1 + μ_i t)
    let mut e = vec![Rat::one()];
    for &x in mu {
        let mut next = e.clone();
        next.push(Rat::zero());
        for i in 0..e.len() {
            next[i + 1] += &e[i] * rat(x as i64);
        }
        e = next;
    }
    e
}

fn basis_row(mu: &[u32], exps: &[Vec<u32>]) -> Vec<Rat> {
    let e = elementary_values(mu);
    exps.iter()
        .map(|a| {
            a.iter()
                .enumerate()
                .fold(Rat::one(), |acc, (i, &ai)| acc * num_traits::pow(e[i + 1].clone(), ai as usize))
        })
        .collect()
}

fn elementary_poly(vars: &[&str], i: usize) -> MPoly {
    let n = vars.len();
    let mut acc = MPoly::zero(vars);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == i {
            let mut exp = vec![0u32; n];
            for (j, e) in exp.iter_mut().enumerate() {
                if mask & (1 << j) != 0 {
                    *e = 1;
                }
            }
            acc.add_term(exp, Rat::one());
        }
    }
    acc
}

/// Multisets of n positive parts, by increasing size, up to the size cap.
fn candidate_points(n: usize, size_cap: u32) -> Vec<Partition> {
    (n as u32..=size_cap)
        .flat_map(|s| partitions_of(s).into_iter().filter(|p| p.len() == n))
        .collect()
}

/// Adds v to the echelon basis if it is independent of it.
fn reduce_into(basis: &mut Vec<(usize, Vec<Rat>)>, mut v: Vec<Rat>) -> bool {
    for (piv, row) in basis.iter() {
        if !v[*piv].is_zero() {
            let c = v[*piv].clone() / &row[*piv];
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &c * y;
            }
        }
    }
    match v.iter().position(|x| !x.is_zero()) {
        Some(p) => {
            basis.push((p, v));
            true
        }
        None => false,
    }
}

fn fill_values(m: u32, g: u32, values: &mut BTreeMap<Partition, Rat>, batch: &[Partition]) -> Result<()> {
    let todo: Vec<&Partition> = batch.iter().filter(|p| !values.contains_key(*p)).collect();
    let got: Vec<(Partition, Rat)> = todo
        .par_iter()
        .map(|p| normalized_value(m, g, p).map(|v| ((*p).clone(), v)))
        .collect::<Result<_>>()?;
    values.extend(got);
    Ok(())
}

/// Symmetric interpolation of Poly_{g,n}, raising the per-variable degree from `start`
/// until three held-out points reproduce, up to `degree_cap` (default 6(2g-2+n)).
pub fn fit_poly(m: u32, g: u32, n: usize, start: u32, degree_cap: Option<u32>, size_cap: u32) -> Result<QuasiPolyForm> {
    check_stable(g, n)?;
    if m < 2 {
        return Err(Error::Precondition("the normal form needs m ≥ 2".into()));
    }
    let cap = degree_cap.unwrap_or(6 * (2 * g + n as u32 - 2));
    let points = candidate_points(n, size_cap);
    let mut values: BTreeMap<Partition, Rat> = BTreeMap::new();
    let names = mu_vars(n);
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut last_err = None;
    for d in start..=cap {
        let exps = e_exponents(n, d);
        // choose independent rows greedily in order of |μ|
        let mut basis = Vec::new();
        let mut grid = Vec::new();
        let mut idx = 0;
        while grid.len() < exps.len() && idx < points.len() {
            let row = basis_row(points[idx].parts(), &exps);
            if reduce_into(&mut basis, row) {
                grid.push(points[idx].clone());
            }
            idx += 1;
        }
        if grid.len() < exps.len() || idx + HELD_OUT > points.len() {
            return Err(Error::Budget(format!(
                "degree {d} needs more points than the size cap {size_cap} allows"
            )));
        }
        let held_out: Vec<Partition> = points[idx..idx + HELD_OUT].to_vec();
        fill_values(m, g, &mut values, &grid)?;
        fill_values(m, g, &mut values, &held_out)?;
        let a: Vec<Vec<Rat>> = grid.iter().map(|p| basis_row(p.parts(), &exps)).collect();
        let b: Vec<Rat> = grid.iter().map(|p| values[p].clone()).collect();
        let c = solve(&a, &b)?;
        let ok = held_out
            .iter()
            .all(|p| basis_row(p.parts(), &exps).iter().zip(&c).map(|(x, y)| x * y).sum::<Rat>() == values[p]);
        if !ok {
            last_err = Some(d);
            continue;
        }
        let es: Vec<MPoly> = (1..=n).map(|i| elementary_poly(&vars, i)).collect();
        let mut poly = MPoly::zero(&vars);
        for (a, ci) in exps.iter().zip(&c) {
            if ci.is_zero() {
                continue;
            }
            let mut t = MPoly::constant(&vars, ci.clone());
            for (i, &ai) in a.iter().enumerate() {
                t = &t * &es[i].pow(ai);
            }
            poly = &poly + &t;
        }
        if !poly.is_symmetric() {
            return Err(Error::Mismatch(format!("fitted Poly_{{{g},{n}}} is not symmetric")));
        }
        let degree = poly.degree_in(0).unwrap_or(0);
        return Ok(QuasiPolyForm { m, g, n, poly, degree, poles: pole_indices(m, g, n), grid, held_out });
    }
    Err(Error::Mismatch(format!(
        "no symmetric polynomial of degree ≤ {cap} per variable fits (last tried {last_err:?}); the normal form is refuted on this range"
    )))
}
