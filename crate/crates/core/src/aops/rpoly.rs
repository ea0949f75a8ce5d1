//! R_p(k, l, i_1..i_m) and its falling-factorial expansion coefficients Q^p_s(k, l).

use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::ppoly::{p_at, p_tilde_at};
use crate::error::{Error, Result};
use crate::exactmath::factorial::{falling_factorial, falling_factorial_of};
use crate::exactmath::rat::{binomial, factorial_rat, frac, is_integer, rat, to_i64};
use crate::exactmath::{t_poly, HSeries, MPoly, Rat, UPoly};

pub const KL: [&str; 2] = ["k", "l"];

/// Variable names (k, l, i1, …, im).
pub fn r_vars(m: u32) -> Vec<String> {
    let mut v = vec!["k".to_string(), "l".to_string()];
    v.extend((1..=m).map(|j| format!("i{j}")));
    v
}

/// Ordered m-tuples of nonnegative integers summing to n.
pub fn compositions(n: u32, m: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

type RMemo = OnceLock<Mutex<HashMap<(u32, u32), Arc<MPoly>>>>;
static RPOLYS: RMemo = OnceLock::new();

/// R_p = Σ_{β_1+…+β_m=p} ∏_j T_{β_j}(l - Σ_{q>j} i_q + 1/2, k - i_j).
pub fn r_poly(p: u32, m: u32) -> Arc<MPoly> {
    let memo = RPOLYS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = memo.lock().unwrap().get(&(p, m)) {
        return r.clone();
    }
    let names = r_vars(m);
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let k = MPoly::var(&vars, "k");
    let l = MPoly::var(&vars, "l");
    let half = MPoly::constant(&vars, frac(1, 2));
    let i: Vec<MPoly> = (1..=m).map(|j| MPoly::var(&vars, &format!("i{j}"))).collect();
    let mut xs = Vec::new();
    let mut ks = Vec::new();
    for j in 0..m as usize {
        let mut x = &l + &half;
        for iq in &i[j + 1..] {
            x = &x - iq;
        }
        xs.push(x);
        ks.push(&k - &i[j]);
    }
    let mut acc = MPoly::zero(&vars);
    for beta in compositions(p, m) {
        let mut term = MPoly::constant(&vars, Rat::one());
        for (j, &b) in beta.iter().enumerate() {
            if b == 0 {
                continue;
            }
            term = &term * &t_poly(b).compose(&[xs[j].clone(), ks[j].clone()]);
        }
        acc = &acc + &term;
    }
    let r = Arc::new(acc);
    memo.lock().unwrap().insert((p, m), r.clone());
    r
}

/// R(ħ; k, l, i) = ∏_j P_{k-i_j}(l - Σ_{q>j} i_q) for integers 0 ≤ i_j ≤ k.
pub fn r_hbar(k: i64, l: &Rat, is: &[i64]) -> Result<UPoly> {
    let mut acc = UPoly::one();
    for j in 0..is.len() {
        let len = k - is[j];
        if len < 0 || is[j] < 0 {
            return Err(Error::Precondition(format!("factor P_{len} has no product form")));
        }
        let shift: i64 = is[j + 1..].iter().sum();
        acc = &acc * &p_at(len as u32, &(l - rat(shift)));
    }
    Ok(acc)
}

/// R_p at a point. The polynomial is always evaluated; when k is an integer with
/// 0 ≤ i_j ≤ k the ħ-coefficient of the product is evaluated too and must agree.
pub fn r_value(p: u32, m: u32, k: &Rat, l: &Rat, is: &[i64]) -> Result<Rat> {
    if is.len() != m as usize {
        return Err(Error::Precondition(format!("expected {m} indices, got {}", is.len())));
    }
    let mut point = vec![k.clone(), l.clone()];
    point.extend(is.iter().map(|&x| rat(x)));
    let poly = r_poly(p, m).eval(&point);
    if is_integer(k) {
        let ki = to_i64(k).expect("integer");
        if is.iter().all(|&x| 0 <= x && x <= ki) {
            let direct = r_hbar(ki, l, is)?.coeff(p as usize);
            if direct != poly {
                return Err(Error::Mismatch(format!(
                    "R_{p} at k={k}, l={l}, i={is:?}: product {direct}, polynomial {poly}"
                )));
            }
        }
    }
    Ok(poly)
}

/// Multi-indices s with |s| ≤ bound.
pub fn multi_indices(bound: u32, m: u32) -> Vec<Vec<u32>> {
    (0..=bound).flat_map(|s| compositions(s, m)).collect()
}

pub type QTable = BTreeMap<Vec<u32>, MPoly>;
type QMemo = OnceLock<Mutex<HashMap<(u32, u32), Arc<QTable>>>>;
static QTABLES: QMemo = OnceLock::new();

/// Coefficients Q^p_s(k, l) of R_p in the basis (i_1)_{s_1}…(i_m)_{s_m}, |s| ≤ 2p,
/// from forward differences at i = 0; verified by re-expansion.
pub fn q_coeffs(p: u32, m: u32) -> Result<Arc<QTable>> {
    let memo = QTABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(q) = memo.lock().unwrap().get(&(p, m)) {
        return Ok(q.clone());
    }
    let r = r_poly(p, m);
    let names = r_vars(m);
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut grid: HashMap<Vec<u32>, MPoly> = HashMap::new();
    let mut at = |pt: &[u32]| -> MPoly {
        grid.entry(pt.to_vec())
            .or_insert_with(|| {
                let mut v = (*r).clone();
                for (j, &x) in pt.iter().enumerate() {
                    v = v.partial_eval(2 + j, &rat(x as i64));
                }
                v.with_vars(&KL)
            })
            .clone()
    };
    let mut table = QTable::new();
    for s in multi_indices(2 * p, m) {
        // (Δ^{s_1}…Δ^{s_m} R)(0) / ∏ s_j!
        let mut acc = MPoly::zero(&KL);
        let boxes: Vec<Vec<u32>> = box_points(&s);
        for a in boxes {
            let mut c = Rat::one();
            for (&sj, &aj) in s.iter().zip(&a) {
                c *= binomial(sj as i64, aj as i64);
                if (sj - aj) % 2 == 1 {
                    c = -c;
                }
            }
            acc = &acc + &at(&a).scale(&c);
        }
        let norm: Rat = s.iter().map(|&x| factorial_rat(x as u64)).product();
        let q = acc.scale(&(Rat::one() / norm));
        if !q.is_zero() {
            table.insert(s, q);
        }
    }
    // re-expansion
    let mut back = MPoly::zero(&vars);
    for (s, q) in &table {
        let mut term = q.with_vars(&vars);
        for (j, &sj) in s.iter().enumerate() {
            term = &term * &falling_factorial_of(&MPoly::var(&vars, &format!("i{}", j + 1)), sj);
        }
        back = &back + &term;
    }
    if back != *r {
        return Err(Error::Mismatch(format!("Q^{p} re-expansion differs from R_{p} (m = {m})")));
    }
    let t = Arc::new(table);
    memo.lock().unwrap().insert((p, m), t.clone());
    Ok(t)
}

fn box_points(s: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &sj in s {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=sj).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Σ_{i_1+…+i_m=t} t!/∏i_j! ∏(k_j)_{i_j} compared with (Σk_j)_t.
pub fn check_multinomial_falling(ks: &[Rat], t: u32) -> Result<()> {
    let mut lhs = Rat::zero();
    for is in compositions(t, ks.len() as u32) {
        let mut term = factorial_rat(t as u64);
        for (kj, &ij) in ks.iter().zip(&is) {
            term = term * falling_factorial(kj, ij as i64)? / factorial_rat(ij as u64);
        }
        lhs += term;
    }
    let total: Rat = ks.iter().cloned().sum();
    let rhs = falling_factorial(&total, t as i64)?;
    if lhs != rhs {
        return Err(Error::Mismatch(format!("multinomial falling factorial for {ks:?}, t = {t}")));
    }
    Ok(())
}

/// Discrete Euler operator at i = (k,…,k): Σ_j k·(R(i) - R(i - e_j)), evaluated with the
/// ħ-products of P_0 and P_1 factors; must equal C(m,2) k² ħ.
pub fn check_euler_identity_numeric(m: u32, k: i64) -> Result<()> {
    let l = frac(-1, 2);
    let base = vec![k; m as usize];
    let r0 = r_hbar(k, &l, &base)?;
    let mut acc = UPoly::zero();
    for j in 0..m as usize {
        let mut is = base.clone();
        is[j] -= 1;
        acc = &acc + &(&r0 - &r_hbar(k, &l, &is)?).scale(&rat(k));
    }
    let expect = UPoly::monomial(binomial(m as i64, 2) * rat(k * k), 1);
    if acc != expect {
        return Err(Error::Mismatch(format!("Euler identity (m = {m}, k = {k}): {acc}")));
    }
    Ok(())
}

/// The same identity coefficientwise in ħ, symbolically in k, through the R_p polynomials.
pub fn check_euler_identity_symbolic(m: u32, p_max: u32) -> Result<()> {
    let kv = MPoly::var(&["k"], "k");
    let one = MPoly::constant(&["k"], Rat::one());
    let lval = MPoly::constant(&["k"], frac(-1, 2));
    for p in 0..=p_max {
        let r = r_poly(p, m);
        let at = |shift: Option<usize>| {
            let mut subs = vec![kv.clone(), lval.clone()];
            for j in 0..m as usize {
                subs.push(if Some(j) == shift { &kv - &one } else { kv.clone() });
            }
            r.compose(&subs)
        };
        let r0 = at(None);
        let mut acc = MPoly::zero(&["k"]);
        for j in 0..m as usize {
            acc = &acc + &(&kv * &(&r0 - &at(Some(j))));
        }
        let expect = if p == 1 {
            kv.pow(2).scale(&binomial(m as i64, 2))
        } else {
            MPoly::zero(&["k"])
        };
        if acc != expect {
            return Err(Error::Mismatch(format!("Euler identity at ħ^{p} (m = {m}): {acc}")));
        }
    }
    Ok(())
}

/// R̃_p(k, l, i) = [ħ^p] ∏_j P̃_{k+i_j}(l - Σ_{q>j} i_q)^{-1} for nonnegative integers.
pub fn r_tilde_value(p: u32, k: i64, l: &Rat, is: &[i64]) -> Result<Rat> {
    let mut acc = HSeries::one();
    for j in 0..is.len() {
        let len = k + is[j];
        if len < 0 {
            return Err(Error::Precondition("negative product length".into()));
        }
        let shift: i64 = is[j + 1..].iter().sum();
        let f = HSeries::from_upoly(&p_tilde_at(len as u32, &(l - rat(shift))));
        acc = acc.mul(&f.inverse(p as i64)).truncate(p as i64);
    }
    Ok(acc.coeff(p as i64))
}
