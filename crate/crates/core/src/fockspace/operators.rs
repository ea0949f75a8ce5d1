//! The charge-zero Fock representation and windowed matrices in A_∞ ⊕ ℂ·Id.
//!
//! Half-integers are stored doubled: l = 5/2 is kept as 5.

use num_traits::One;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactmath::rat::{frac, rat};
use crate::exactmath::{HSeries, Rat, UPoly};
use crate::permoracle::Partition;

/// Finite combination of basis vectors v_λ.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FockVector {
    terms: BTreeMap<Partition, HSeries>,
}

fn maya(lambda: &Partition, depth: usize) -> Vec<i64> {
    (1..=depth)
        .map(|k| {
            let p = lambda.parts().get(k - 1).copied().unwrap_or(0) as i64;
            2 * p - 2 * k as i64 + 1
        })
        .collect()
}

fn from_maya(pos: &[i64]) -> Partition {
    let parts: Vec<u32> = pos
        .iter()
        .enumerate()
        .map(|(i, &s)| ((s + 2 * (i as i64 + 1) - 1) / 2) as u32)
        .filter(|&p| p > 0)
        .collect();
    Partition::new(parts).expect("charge-zero Maya set")
}

/// E_{i,j} v_λ as (coefficient, partition), with the normal ordering for i = j.
pub fn apply_basis_element(i2: i64, j2: i64, lambda: &Partition) -> Option<(i64, Partition)> {
    let reach = (i2.abs().max(j2.abs()) as usize + 1) / 2 + 1;
    let depth = lambda.len() + reach + 1;
    let s = maya(lambda, depth);
    let has_j = s.contains(&j2);
    if i2 == j2 {
        return match (i2 > 0, has_j) {
            (true, true) => Some((1, lambda.clone())),
            (false, false) => Some((-1, lambda.clone())),
            _ => None,
        };
    }
    if !has_j || s.contains(&i2) {
        return None;
    }
    let (lo, hi) = (i2.min(j2), i2.max(j2));
    let between = s.iter().filter(|&&x| x > lo && x < hi).count();
    let mut t: Vec<i64> = s.into_iter().filter(|&x| x != j2).collect();
    t.push(i2);
    t.sort_unstable_by(|a, b| b.cmp(a));
    let sign = if between % 2 == 0 { 1 } else { -1 };
    Some((sign, from_maya(&t)))
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::basis(Partition::empty())
    }

    pub fn basis(lambda: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(lambda, HSeries::one());
        FockVector { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, HSeries> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> HSeries {
        self.terms.get(lambda).cloned().unwrap_or_else(HSeries::zero)
    }

    fn add_to(&mut self, lambda: Partition, c: HSeries) {
        let e = self.terms.entry(lambda.clone()).or_insert_with(HSeries::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn add(&self, o: &FockVector) -> FockVector {
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_to(l.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &HSeries) -> FockVector {
        let mut r = FockVector::zero();
        for (l, c) in &self.terms {
            r.add_to(l.clone(), c.mul(s));
        }
        r
    }

    pub fn apply_e(&self, i2: i64, j2: i64) -> FockVector {
        let mut r = FockVector::zero();
        for (l, c) in &self.terms {
            if let Some((sign, nl)) = apply_basis_element(i2, j2, l) {
                r.add_to(nl, c.scale(&rat(sign)));
            }
        }
        r
    }

    /// α_n = Σ_k E_{k-n,k}, n ≠ 0.
    pub fn apply_alpha(&self, n: i64) -> FockVector {
        let mut r = FockVector::zero();
        for (l, c) in &self.terms {
            let depth = l.len() + n.unsigned_abs() as usize + 2;
            for k2 in maya(l, depth) {
                if let Some((sign, nl)) = apply_basis_element(k2 - 2 * n, k2, l) {
                    r.add_to(nl, c.scale(&rat(sign)));
                }
            }
        }
        r
    }

    /// Multiplies each v_λ by a diagonal eigenvalue.
    pub fn apply_diagonal(&self, f: impl Fn(&Partition) -> HSeries) -> FockVector {
        let mut r = FockVector::zero();
        for (l, c) in &self.terms {
            r.add_to(l.clone(), c.mul(&f(l)));
        }
        r
    }
}

fn positive(x2: i64) -> i64 {
    (x2 > 0) as i64
}

/// Checks [E_ab, E_cd] = δ_bc E_ad - δ_ad E_cb + δ_bc δ_ad (δ_{b>0} - δ_{d>0}) on all v_λ with
/// |λ| ≤ max_size and all half-integer indices of absolute value ≤ bound2/2.
pub fn check_commutation_relations(bound2: i64, max_size: u32) -> Result<()> {
    let idx: Vec<i64> = (-bound2..=bound2).filter(|x| x % 2 != 0).collect();
    let states: Vec<Partition> = (0..=max_size).flat_map(crate::permoracle::partitions_of).collect();
    for &a in &idx {
        for &b in &idx {
            for &c in &idx {
                for &d in &idx {
                    for l in &states {
                        let v = FockVector::basis(l.clone());
                        let lhs = v
                            .apply_e(c, d)
                            .apply_e(a, b)
                            .add(&v.apply_e(a, b).apply_e(c, d).scale(&HSeries::constant(rat(-1))));
                        let mut rhs = FockVector::zero();
                        if b == c {
                            rhs = rhs.add(&v.apply_e(a, d));
                        }
                        if a == d {
                            rhs = rhs.add(&v.apply_e(c, b).scale(&HSeries::constant(rat(-1))));
                        }
                        if b == c && a == d {
                            let z = positive(b) - positive(d);
                            rhs = rhs.add(&v.scale(&HSeries::constant(rat(z))));
                        }
                        if lhs != rhs {
                            return Err(Error::Mismatch(format!(
                                "[E({a}/2,{b}/2), E({c}/2,{d}/2)] on v{l}"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Finite part of an element of A_∞ ⊕ ℂ·Id: entries with |row|, |col| ≤ window2/2.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowedOperator {
    window2: i64,
    entries: BTreeMap<(i64, i64), HSeries>,
    identity: HSeries,
    order: i64,
}

impl WindowedOperator {
    pub fn zero(window2: i64, order: i64) -> Self {
        WindowedOperator {
            window2,
            entries: BTreeMap::new(),
            identity: HSeries::zero(),
            order,
        }
    }

    pub fn window2(&self) -> i64 {
        self.window2
    }

    fn inside(&self, i2: i64) -> bool {
        i2.abs() <= self.window2
    }

    pub fn insert(&mut self, i2: i64, j2: i64, v: HSeries) {
        if !self.inside(i2) || !self.inside(j2) {
            return;
        }
        let e = self.entries.entry((i2, j2)).or_insert_with(HSeries::zero);
        *e = e.add(&v).truncate(self.order);
        if e.is_zero() {
            self.entries.remove(&(i2, j2));
        }
    }

    pub fn entry(&self, i2: i64, j2: i64) -> HSeries {
        self.entries.get(&(i2, j2)).cloned().unwrap_or_else(HSeries::zero)
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), HSeries> {
        &self.entries
    }

    pub fn identity(&self) -> &HSeries {
        &self.identity
    }

    pub fn add_identity(&mut self, v: &HSeries) {
        self.identity = self.identity.add(v).truncate(self.order);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty() && self.identity.is_zero()
    }

    /// α_n restricted to the window.
    pub fn alpha(n: i64, window2: i64, order: i64) -> Self {
        Self::from_diagonal(-n, window2, order, |_| HSeries::one())
    }

    /// Σ_l f(l) E_{l+a,l} restricted to the window.
    pub fn from_diagonal(a: i64, window2: i64, order: i64, f: impl Fn(i64) -> HSeries) -> Self {
        let mut w = Self::zero(window2, order);
        for l2 in (-window2..=window2).filter(|x| x % 2 != 0) {
            w.insert(l2 + 2 * a, l2, f(l2));
        }
        w
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(i, j), v) in &o.entries {
            r.insert(i, j, v.clone());
        }
        r.add_identity(&o.identity);
        r
    }

    pub fn scale(&self, s: &HSeries) -> Self {
        let mut r = Self::zero(self.window2, self.order);
        for (&(i, j), v) in &self.entries {
            r.insert(i, j, v.mul(s));
        }
        r.identity = self.identity.mul(s).truncate(self.order);
        r
    }

    /// Commutator in the centrally extended algebra; the identity parts are central.
    pub fn bracket(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.window2.min(o.window2), self.order.min(o.order));
        let mut by_row: BTreeMap<i64, Vec<(i64, &HSeries)>> = BTreeMap::new();
        for (&(c, d), v) in &o.entries {
            by_row.entry(c).or_default().push((d, v));
        }
        let mut by_col: BTreeMap<i64, Vec<(i64, &HSeries)>> = BTreeMap::new();
        for (&(c, d), v) in &o.entries {
            by_col.entry(d).or_default().push((c, v));
        }
        for (&(a, b), x) in &self.entries {
            // δ_bc E_ad, with the cocycle when also a = d
            if let Some(row) = by_row.get(&b) {
                for &(d, y) in row {
                    let p = x.mul(y);
                    if a == d {
                        let z = positive(b) - positive(d);
                        if z != 0 {
                            r.add_identity(&p.scale(&rat(z)));
                        }
                    }
                    r.insert(a, d, p);
                }
            }
            // -δ_ad E_cb
            if let Some(col) = by_col.get(&a) {
                for &(c, y) in col {
                    r.insert(c, b, x.mul(y).scale(&rat(-1)));
                }
            }
        }
        r
    }

    /// Keeps the entries with |row|, |col| ≤ window2/2.
    pub fn restrict(&self, window2: i64) -> Self {
        let mut r = Self::zero(window2, self.order);
        for (&(i, j), v) in &self.entries {
            r.insert(i, j, v.clone());
        }
        r.identity = self.identity.clone();
        r
    }

    /// Coefficient of E_{l-q,l}.
    pub fn diagonal_entry(&self, q: i64, l2: i64) -> HSeries {
        self.entry(l2 - 2 * q, l2)
    }
}

/// Checks [Σ E_{l-1,l}, Σ f(l)E_{l+a,l}] = Σ (Δf)(l) E_{l+a-1,l} + δ_{a,1} f(-1/2)·Id on a window.
pub fn check_difference_lemma(f: &UPoly, a: i64, window2: i64) -> Result<()> {
    let margin = 2 * (a.abs() + 2);
    let big = window2 + margin;
    let val = |l2: i64| HSeries::constant(f.eval(&frac(l2, 2)));
    let lhs = WindowedOperator::alpha(1, big, 0)
        .bracket(&WindowedOperator::from_diagonal(a, big, 0, val))
        .restrict(window2);
    let mut rhs = WindowedOperator::from_diagonal(a - 1, window2, 0, |l2| {
        HSeries::constant(f.eval(&frac(l2, 2)) - f.eval(&frac(l2 - 2, 2)))
    });
    if a == 1 {
        rhs.add_identity(&HSeries::constant(f.eval(&frac(-1, 2))));
    }
    if lhs != rhs {
        return Err(Error::Mismatch(format!("difference lemma for a = {a}, f = {f}")));
    }
    Ok(())
}

// D = Σ d_l E_{l,l} with d_{1/2} = 1 and d_{l+1}/d_l = 1 + ħ(l + 1/2), to ħ^order.
fn d_diagonal(window2: i64, order: i64) -> BTreeMap<i64, HSeries> {
    let mut d = BTreeMap::new();
    d.insert(1, HSeries::one());
    let step = |l2: i64| HSeries::from_upoly(&UPoly::from_coeffs(vec![Rat::one(), frac(l2 + 1, 2)]));
    let mut cur = HSeries::one();
    let mut l2 = 1;
    while l2 < window2 {
        cur = cur.mul(&step(l2)).truncate(order);
        l2 += 2;
        d.insert(l2, cur.clone());
    }
    let mut cur = HSeries::one();
    let mut l2 = 1;
    while l2 > -window2 {
        // d_{l-1} = d_l / (1 + ħ(l - 1/2))
        cur = cur.mul(&step(l2 - 2).inverse(order)).truncate(order);
        l2 -= 2;
        d.insert(l2, cur.clone());
    }
    d
}

fn conjugated_matrix(m: u32, k: u32, window2: i64, order: i64) -> WindowedOperator {
    let d = d_diagonal(window2 + 2 * k as i64, order);
    let dm: BTreeMap<i64, HSeries> = d.iter().map(|(&l, v)| (l, v.pow(m).truncate(order))).collect();
    // D^m α_{-k} D^{-m}: entry (l+k, l) is d_{l+k}^m · (d_l^m)^{-1}
    let mut conj = WindowedOperator::zero(window2, order);
    for l2 in (-window2..=window2).filter(|x| x % 2 != 0) {
        let hi = l2 + 2 * k as i64;
        let v = dm[&hi].mul(&dm[&l2].inverse(order)).truncate(order);
        conj.insert(hi, l2, v);
    }
    let mut term = conj.clone();
    let mut total = conj;
    let alpha1 = WindowedOperator::alpha(1, window2, order);
    let mut t = 1i64;
    while !term.is_zero() && t <= (m * k) as i64 + 1 {
        term = alpha1.bracket(&term).scale(&HSeries::constant(frac(1, t)));
        total = total.add(&term);
        t += 1;
    }
    total
}

/// Ǎ(k, ħ) = ħ^{-k} e^{α_1} D^m (α_{-k}/k) D^{-m} e^{-α_1} on entries with |row|, |col| ≤ w,
/// computed by explicit conjugation of windowed matrices, to ħ^order before the ħ^{-k} shift.
pub fn windowed_conjugation_oracle(m: u32, k: u32, w: i64, order: i64) -> Result<WindowedOperator> {
    if k == 0 {
        return Err(Error::Precondition("Ǎ(k) needs k ≥ 1".into()));
    }
    if w < k as i64 + order {
        return Err(Error::Precondition(format!("window {w} is smaller than k + order")));
    }
    let window2 = 2 * w + 1;
    let margin = 2 * ((m * k) as i64 + k as i64 + 3);
    let a = conjugated_matrix(m, k, window2 + margin, order).restrict(window2);
    let b = conjugated_matrix(m, k, 2 * (window2 + margin) + 1, order).restrict(window2);
    if a != b {
        return Err(Error::Precondition(format!("window {w} too small: entries move when it doubles")));
    }
    let s = HSeries::monomial(frac(1, k as i64), -(k as i64));
    Ok(a.scale(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::characters::content_product;
    use crate::fockspace::vev::disconnected_vev;
    use crate::exactmath::rat::factorial_rat;

    #[test]
    fn basis_action() {
        // E_{3/2,-1/2} moves the top particle of the vacuum: v_(2)
        assert_eq!(
            apply_basis_element(3, -1, &Partition::empty()),
            Some((1, Partition::of(&[2])))
        );
        assert_eq!(apply_basis_element(-1, -1, &Partition::empty()), None);
        assert_eq!(apply_basis_element(-1, -1, &Partition::of(&[1])), Some((-1, Partition::of(&[1]))));
        assert_eq!(apply_basis_element(1, 1, &Partition::of(&[1])), Some((1, Partition::of(&[1]))));
        // α_{-1}|0⟩ = v_(1), α_{-2}|0⟩ = v_(2) - v_(1,1)
        let v = FockVector::vacuum().apply_alpha(-2);
        assert_eq!(v.coeff(&Partition::of(&[2])), HSeries::one());
        assert_eq!(v.coeff(&Partition::of(&[1, 1])), HSeries::constant(rat(-1)));
    }

    #[test]
    fn heisenberg_relation() {
        for k in -3i64..=3 {
            for l in -3i64..=3 {
                if k == 0 || l == 0 {
                    continue;
                }
                for lam in crate::permoracle::partitions_of(3) {
                    let v = FockVector::basis(lam);
                    let c = v
                        .apply_alpha(l)
                        .apply_alpha(k)
                        .add(&v.apply_alpha(k).apply_alpha(l).scale(&HSeries::constant(rat(-1))));
                    let expect = if k + l == 0 { v.scale(&HSeries::constant(rat(k))) } else { FockVector::zero() };
                    assert_eq!(c, expect, "k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn commutation_relations_with_central_term() {
        check_commutation_relations(9, 3).unwrap();
    }

    #[test]
    fn windowed_bracket_central_term() {
        let a = WindowedOperator::alpha(1, 21, 0);
        let b = WindowedOperator::alpha(-1, 21, 0);
        let c = a.bracket(&b).restrict(15);
        assert!(c.entries().is_empty());
        assert_eq!(c.identity().coeff(0), rat(1));
    }

    #[test]
    fn difference_lemma() {
        let polys = [
            UPoly::from_coeffs(vec![rat(1)]),
            UPoly::from_coeffs(vec![frac(1, 2), rat(2)]),
            UPoly::from_coeffs(vec![rat(0), rat(-1), rat(3)]),
            UPoly::from_coeffs(vec![rat(2), rat(0), frac(1, 3), rat(1)]),
        ];
        for f in &polys {
            for a in -2..=3 {
                check_difference_lemma(f, a, 13).unwrap();
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let a = windowed_conjugation_oracle(2, 1, 6, 2).unwrap();
        for l2 in (-11..=11).filter(|x| x % 2 != 0) {
            let e = a.diagonal_entry(1, l2);
            assert_eq!(e.coeff(1), rat(1), "l = {l2}/2");
        }
        assert!(a.identity().agrees_with(&HSeries::monomial(rat(1), -1)));
        assert!(windowed_conjugation_oracle(2, 0, 6, 2).is_err());
        assert!(windowed_conjugation_oracle(2, 3, 2, 2).is_err());
    }

    #[test]
    fn vev_by_operators_matches_character_formula() {
        for m in 1..=3u32 {
            for n in 1..=4u32 {
                for mu in crate::permoracle::partitions_of(n) {
                    let mut v = FockVector::vacuum();
                    for &p in mu.parts() {
                        v = v.apply_alpha(-(p as i64)).scale(&HSeries::constant(frac(1, p as i64)));
                    }
                    v = v.apply_diagonal(|l| content_product(l, m, 100));
                    for _ in 0..n {
                        v = v.apply_alpha(1);
                    }
                    let got = v.coeff(&Partition::empty()).scale(&(Rat::one() / factorial_rat(n as u64)));
                    assert_eq!(got, disconnected_vev(m, &mu, 100).unwrap(), "m={m} μ={mu}");
                }
            }
        }
    }
}
