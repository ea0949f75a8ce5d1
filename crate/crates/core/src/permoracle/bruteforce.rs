//! Direct enumeration of permutation tuples.

use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::partition::{aut_order, Partition};
use crate::error::{Error, Result};
use crate::exactmath::rat::{factorial, Rat};
use num_traits::Zero;

pub type Perm = Vec<u8>;

/// (a∘b)(i) = a(b(i))
pub fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn inverse(a: &[u8]) -> Perm {
    let mut r = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x as usize] = i as u8;
    }
    r
}

pub fn cycle_type(a: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for s in 0..a.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = a[i] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

pub fn cycle_count(a: &[u8]) -> u32 {
    let mut seen = 0u32;
    let mut count = 0;
    for s in 0..a.len() {
        if seen & (1 << s) != 0 {
            continue;
        }
        count += 1;
        let mut i = s;
        while seen & (1 << i) == 0 {
            seen |= 1 << i;
            i = a[i] as usize;
        }
    }
    count
}

/// All permutations of {0..n-1} in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Perm = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Enumeration limits: largest |μ| and largest estimated tuple count.
#[derive(Clone, Copy, Debug)]
pub struct EnumBudget {
    pub max_size: u32,
    pub max_cost: f64,
}

impl EnumBudget {
    pub fn default_for(m: u32) -> Self {
        let max_size = match m {
            0 | 1 => 9,
            2 => 6,
            3 => 5,
            _ => 4,
        };
        EnumBudget {
            max_size,
            max_cost: 2.0e8,
        }
    }

    pub fn unlimited() -> Self {
        EnumBudget {
            max_size: u32::MAX,
            max_cost: f64::INFINITY,
        }
    }
}

/// Estimated number of tuples visited: (|μ|!)^{m-1}·|C_μ|.
pub fn estimated_cost(m: u32, mu: &Partition) -> f64 {
    let n = mu.size() as u64;
    let nf: f64 = (1..=n).map(|i| i as f64).product();
    let class = nf / (aut_order(mu) as f64 * mu.parts().iter().map(|&p| p as f64).product::<f64>());
    nf.powi(m.saturating_sub(1) as i32) * class
}

/// Tuple counts by total cycle number L: (all tuples, transitive tuples).
pub type Histogram = BTreeMap<u32, (u64, u64)>;

static HIST: OnceLock<Mutex<HashMap<(u32, Partition), Arc<Histogram>>>> = OnceLock::new();

fn check_budget(m: u32, mu: &Partition, budget: &EnumBudget) -> Result<()> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    if mu.is_empty() {
        return Err(Error::Precondition("μ must be nonempty".into()));
    }
    let cost = estimated_cost(m, mu);
    if mu.size() > budget.max_size || cost > budget.max_cost || mu.size() > 16 {
        return Err(Error::Budget(format!(
            "enumeration of m={m}, μ={mu} needs about {cost:.3e} tuples (size bound {}, cost bound {:.1e})",
            budget.max_size, budget.max_cost
        )));
    }
    Ok(())
}

struct UnionFind(Vec<u8>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u8).collect())
    }
    fn find(&mut self, x: u8) -> u8 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut y = x;
        while self.0[y as usize] != r {
            let next = self.0[y as usize];
            self.0[y as usize] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: u8, b: u8) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra as usize] = rb;
        }
    }
}

/// Orbit closure of {0..n-1} under the generated group is a single orbit.
pub fn is_transitive(perms: &[&[u8]], n: usize) -> bool {
    let mut uf = UnionFind::new(n);
    for p in perms {
        for (i, &x) in p.iter().enumerate() {
            uf.union(i as u8, x);
        }
    }
    let r = uf.find(0);
    (1..n as u8).all(|i| uf.find(i) == r)
}

fn enumerate(m: u32, mu: &Partition) -> Histogram {
    let n = mu.size() as usize;
    let perms = all_perms(n);
    let class: Vec<&Perm> = perms
        .iter()
        .filter(|p| cycle_type(p) == mu.parts())
        .collect();
    if m == 1 {
        let mut h = Histogram::new();
        for s in &class {
            let e = h.entry(mu.len() as u32).or_insert((0, 0));
            e.0 += 1;
            if is_transitive(&[s.as_slice()], n) {
                e.1 += 1;
            }
        }
        return h;
    }
    let counts: Vec<u32> = perms.iter().map(|p| cycle_count(p)).collect();
    let merge = |mut a: Histogram, b: Histogram| {
        for (l, (d, c)) in b {
            let e = a.entry(l).or_insert((0, 0));
            e.0 += d;
            e.1 += c;
        }
        a
    };
    (0..perms.len())
        .into_par_iter()
        .map(|t1| {
            let mut h = Histogram::new();
            // stack of chosen τ_1..τ_{m-1} indices with running products
            let mut chosen: Vec<usize> = vec![t1];
            let mut prefix: Vec<Perm> = vec![perms[t1].clone()];
            let depth = (m - 1) as usize;
            loop {
                if chosen.len() == depth {
                    let pinv = inverse(prefix.last().unwrap());
                    let l0: u32 = chosen.iter().map(|&i| counts[i]).sum();
                    for s in &class {
                        let last = compose(&pinv, s);
                        let l = l0 + cycle_count(&last);
                        let mut gens: Vec<&[u8]> = chosen.iter().map(|&i| perms[i].as_slice()).collect();
                        gens.push(&last);
                        let e = h.entry(l).or_insert((0, 0));
                        e.0 += 1;
                        if is_transitive(&gens, n) {
                            e.1 += 1;
                        }
                    }
                } else {
                    chosen.push(0);
                    let p = compose(prefix.last().unwrap(), &perms[0]);
                    prefix.push(p);
                    continue;
                }
                // advance the deepest free slot (slot 0 is fixed to t1)
                loop {
                    if chosen.len() <= 1 {
                        return h;
                    }
                    let last = chosen.pop().unwrap();
                    prefix.pop();
                    if last + 1 < perms.len() {
                        chosen.push(last + 1);
                        let p = compose(prefix.last().unwrap(), &perms[last + 1]);
                        prefix.push(p);
                        break;
                    }
                }
            }
        })
        .reduce(Histogram::new, merge)
}

/// Tuple counts by L for (m, μ), memoized.
pub fn histogram(m: u32, mu: &Partition, budget: &EnumBudget) -> Result<Arc<Histogram>> {
    check_budget(m, mu, budget)?;
    let memo = HIST.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(h) = memo.lock().unwrap().get(&(m, mu.clone())) {
        return Ok(h.clone());
    }
    let h = Arc::new(enumerate(m, mu));
    memo.lock().unwrap().insert((m, mu.clone()), h.clone());
    Ok(h)
}

fn weight(mu: &Partition) -> Rat {
    Rat::new(BigInt::from(aut_order(mu)), factorial(mu.size() as u64))
}

/// L = 2 + (m-1)|μ| - ℓ(μ) - 2g, or None when L < m.
pub fn riemann_hurwitz_l(m: u32, g: u32, mu: &Partition) -> Option<u32> {
    let l = 2 + (m as i64 - 1) * mu.size() as i64 - mu.len() as i64 - 2 * g as i64;
    (l >= m as i64).then_some(l as u32)
}

/// |Aut μ|/|μ|! times the number of m-tuples with product in C_μ and Σℓ(τ_i) = L.
pub fn bms_disconnected_bruteforce(m: u32, mu: &Partition, l: u32, budget: &EnumBudget) -> Result<Rat> {
    let h = histogram(m, mu, budget)?;
    let c = h.get(&l).map(|x| x.0).unwrap_or(0);
    Ok(weight(mu) * Rat::from_integer(BigInt::from(c)))
}

/// Connected count: transitive tuples only.
pub fn bms_connected_bruteforce(m: u32, g: u32, mu: &Partition, budget: &EnumBudget) -> Result<Rat> {
    let Some(l) = riemann_hurwitz_l(m, g, mu) else {
        check_budget(m, mu, budget)?;
        return Ok(Rat::zero());
    };
    let h = histogram(m, mu, budget)?;
    let c = h.get(&l).map(|x| x.1).unwrap_or(0);
    Ok(weight(mu) * Rat::from_integer(BigInt::from(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::{frac, rat};

    fn b(m: u32, g: u32, mu: &[u32]) -> Rat {
        bms_connected_bruteforce(m, g, &Partition::of(mu), &EnumBudget::default_for(m)).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let p: Perm = vec![1, 2, 0];
        assert_eq!(compose(&p, &inverse(&p)), vec![0, 1, 2]);
        assert_eq!(cycle_type(&p), vec![3]);
        assert_eq!(cycle_count(&[0, 2, 1, 3]), 3);
        assert_eq!(all_perms(4).len(), 24);
        assert!(is_transitive(&[&[1, 0, 2], &[0, 2, 1]], 3));
        assert!(!is_transitive(&[&[1, 0, 2]], 3));
    }

    #[test]
    fn riemann_hurwitz() {
        assert_eq!(riemann_hurwitz_l(2, 0, &Partition::of(&[2])), Some(3));
        assert_eq!(riemann_hurwitz_l(2, 1, &Partition::of(&[3])), Some(2));
        assert_eq!(riemann_hurwitz_l(2, 1, &Partition::of(&[1])), None);
    }

    #[test]
    fn disconnected_examples() {
        let bud = EnumBudget::default_for(2);
        assert_eq!(bms_disconnected_bruteforce(2, &Partition::of(&[2]), 3, &bud).unwrap(), rat(1));
        assert_eq!(
            bms_disconnected_bruteforce(1, &Partition::of(&[1]), 1, &EnumBudget::default_for(1)).unwrap(),
            rat(1)
        );
        assert_eq!(bms_disconnected_bruteforce(2, &Partition::of(&[1, 1]), 2, &bud).unwrap(), rat(1));
    }

    #[test]
    fn connected_anchor_values() {
        assert_eq!(b(2, 0, &[3]), frac(5, 3));
        assert_eq!(b(2, 1, &[3]), frac(1, 3));
        assert_eq!(b(2, 0, &[1, 1, 1]), rat(2));
        assert_eq!(b(2, 0, &[2]), rat(1));
        assert_eq!(b(2, 0, &[1, 1]), rat(1));
        assert_eq!(b(2, 0, &[2, 1]), rat(2));
        assert_eq!(b(3, 0, &[1]), rat(1));
        assert_eq!(b(2, 1, &[1]), rat(0));
    }

    #[test]
    fn budget_is_enforced() {
        let err = bms_connected_bruteforce(3, 0, &Partition::of(&[3, 3]), &EnumBudget::default_for(3));
        assert!(matches!(err, Err(Error::Budget(_))));
    }
}
