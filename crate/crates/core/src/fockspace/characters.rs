//! Symmetric-group characters and content products.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::exactmath::rat::factorial;
use crate::exactmath::{HSeries, Rat};
use crate::permoracle::Partition;

/// |λ|! / ∏ hook lengths.
pub fn hook_dimension(lambda: &Partition) -> BigInt {
    let parts = lambda.parts();
    let conj = lambda.conjugate();
    let mut hooks = BigInt::one();
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.parts()[j] as usize - i - 1;
            hooks *= BigInt::from(arm + leg + 1);
        }
    }
    factorial(lambda.size() as u64) / hooks
}

type CharCache = RwLock<HashMap<(Vec<u32>, Vec<u32>), i128>>;
static CHARS: OnceLock<CharCache> = OnceLock::new();

fn beta_set(parts: &[u32]) -> Vec<u32> {
    let n = parts.len() as u32;
    parts.iter().enumerate().map(|(i, &p)| p + n - 1 - i as u32).collect()
}

fn from_beta_set(mut beta: Vec<u32>) -> Vec<u32> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let n = beta.len() as u32;
    beta.iter()
        .enumerate()
        .map(|(i, &b)| b - (n - 1 - i as u32))
        .filter(|&p| p > 0)
        .collect()
}

// Murnaghan–Nakayama: strip a rim hook of length mu[0], recurse on the rest.
fn mn(lambda: &[u32], mu: &[u32]) -> i128 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let cache = CHARS.get_or_init(|| RwLock::new(HashMap::new()));
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = cache.read().unwrap().get(&key) {
        return v;
    }
    let r = mu[0];
    let beta = beta_set(lambda);
    let mut total = 0i128;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&from_beta_set(next), &mu[1..]);
    }
    cache.write().unwrap().insert(key, total);
    total
}

/// χ^λ_μ.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i128> {
    if lambda.size() != mu.size() {
        return Err(Error::Precondition(format!(
            "character needs |λ| = |μ|, got {lambda} and {mu}"
        )));
    }
    Ok(mn(lambda.parts(), mu.parts()))
}

/// Contents j - i of the boxes of λ (0-based row i, column j).
pub fn contents(lambda: &Partition) -> Vec<i64> {
    let mut out = Vec::with_capacity(lambda.size() as usize);
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as i64 {
            out.push(j - i as i64);
        }
    }
    out
}

/// Integer coefficients of ∏_{boxes} (1 + ħ·c)^m.
pub(crate) fn content_poly(lambda: &Partition, m: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for c in contents(lambda) {
        if c == 0 {
            continue;
        }
        let c = BigInt::from(c);
        for _ in 0..m {
            p.push(BigInt::zero());
            for i in (1..p.len()).rev() {
                let t = &p[i - 1] * &c;
                p[i] += t;
            }
        }
    }
    p
}

/// ∏_{boxes (i,j)} (1 + ħ(j-i))^m truncated at ħ^order.
pub fn content_product(lambda: &Partition, m: u32, order: i64) -> HSeries {
    let p = content_poly(lambda, m);
    let mut s = HSeries::zero();
    for (e, c) in p.into_iter().enumerate() {
        if !c.is_zero() {
            s = s.add(&HSeries::monomial(Rat::from_integer(c), e as i64));
        }
    }
    if order < s.max_degree().unwrap_or(0) {
        s.truncate(order)
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::rat;
    use crate::permoracle::{aut_order, partitions_of};

    #[test]
    fn dimensions() {
        assert_eq!(hook_dimension(&Partition::of(&[4])), BigInt::from(1));
        assert_eq!(hook_dimension(&Partition::of(&[2, 1])), BigInt::from(2));
        assert_eq!(hook_dimension(&Partition::of(&[1, 1, 1])), BigInt::from(1));
        assert_eq!(hook_dimension(&Partition::of(&[3, 2])), BigInt::from(5));
        assert_eq!(hook_dimension(&Partition::empty()), BigInt::from(1));
    }

    #[test]
    fn character_examples() {
        let p = Partition::of;
        assert_eq!(character(&p(&[3]), &p(&[2, 1])).unwrap(), 1);
        assert_eq!(character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert!(character(&p(&[2]), &p(&[1])).is_err());
        for n in 1..=7 {
            for l in partitions_of(n) {
                let ones = Partition::new(vec![1; n as usize]).unwrap();
                assert_eq!(BigInt::from(character(&l, &ones).unwrap()), hook_dimension(&l));
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=6u32 {
            let ps = partitions_of(n);
            for mu in &ps {
                for nu in &ps {
                    let s: i128 = ps
                        .iter()
                        .map(|l| character(l, mu).unwrap() * character(l, nu).unwrap())
                        .sum();
                    // |μ|!/|C_μ| = z_μ = ∏ μ_i · |Aut μ|
                    let z: i128 = mu.parts().iter().map(|&x| x as i128).product::<i128>()
                        * aut_order(mu) as i128;
                    assert_eq!(s, if mu == nu { z } else { 0 }, "{mu} {nu}");
                }
            }
        }
    }

    #[test]
    fn content_products() {
        assert_eq!(content_product(&Partition::empty(), 3, 5), HSeries::one());
        let two = HSeries::from_upoly(&crate::exactmath::UPoly::from_coeffs(vec![rat(1), rat(2), rat(1)]));
        assert_eq!(content_product(&Partition::of(&[2]), 2, 2), two);
        let t = content_product(&Partition::of(&[1, 1]), 1, 1);
        assert_eq!(t.coeff(0), rat(1));
        assert_eq!(t.coeff(1), rat(-1));
        let cut = content_product(&Partition::of(&[3]), 2, 1);
        assert_eq!(cut.truncation_order(), 1);
        assert_eq!(cut.coeff(1), rat(6));
    }
}
