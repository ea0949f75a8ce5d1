use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Precondition("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Panicking constructor for literals.
    pub fn of(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("valid partition")
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=w)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Parses a comma list such as "3,1,1".
    pub fn parse(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<u32>, _> = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<u32>())
            .collect();
        let parts = parts.map_err(|e| Error::Parse(format!("partition {s:?}: {e}")))?;
        Self::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of n, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions with exactly `len` parts, each at most `max_part`.
pub fn partitions_in_box(len: usize, max_part: u32) -> Vec<Partition> {
    fn rec(len: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if len == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in 1..=max {
            cur.push(p);
            rec(len - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max_part, &mut Vec::new(), &mut out);
    out
}

/// |Aut μ| = ∏ (multiplicity)!
pub fn aut_order(mu: &Partition) -> u64 {
    mu.multiplicities()
        .values()
        .map(|&m| (1..=m as u64).product::<u64>())
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphisms() {
        assert_eq!(aut_order(&Partition::of(&[3, 1])), 1);
        assert_eq!(aut_order(&Partition::of(&[1, 1])), 2);
        assert_eq!(aut_order(&Partition::of(&[2, 2, 1])), 2);
        assert_eq!(aut_order(&Partition::of(&[1, 1, 1, 2, 2])), 12);
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions_in_box(2, 3).len(), 6);
    }

    #[test]
    fn parse_and_conjugate() {
        let p = Partition::parse("1,3,1").unwrap();
        assert_eq!(p.parts(), &[3, 1, 1]);
        assert_eq!(p.conjugate().parts(), &[3, 1, 1]);
        assert_eq!(Partition::of(&[4, 2]).conjugate().parts(), &[2, 2, 1, 1]);
        assert!(Partition::parse("2,0").is_err());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[3,1,1]");
    }
}
