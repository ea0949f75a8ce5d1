//! Truncated Laurent series in a local coordinate t.

use num_traits::{One, Zero};

use super::rat::Rat;

/// Coefficients of t^e for val <= e < prec are stored; below val everything is zero,
/// from prec on nothing is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSeries {
    val: i64,
    c: Vec<Rat>,
}

impl LSeries {
    pub fn new(val: i64, c: Vec<Rat>) -> Self {
        LSeries { val, c }
    }

    /// The zero series known up to (excluding) t^prec.
    pub fn zero(prec: i64) -> Self {
        LSeries { val: prec, c: Vec::new() }
    }

    /// c·t^e known up to prec.
    pub fn monomial(c: Rat, e: i64, prec: i64) -> Self {
        if e >= prec {
            return Self::zero(prec);
        }
        let mut v = vec![Rat::zero(); (prec - e) as usize];
        v[0] = c;
        LSeries { val: e, c: v }
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.val + self.c.len() as i64
    }

    pub fn coeff(&self, e: i64) -> Rat {
        assert!(e < self.prec(), "coefficient t^{e} beyond precision {}", self.prec());
        if e < self.val {
            Rat::zero()
        } else {
            self.c[(e - self.val) as usize].clone()
        }
    }

    /// Residue: the coefficient of t^{-1}.
    pub fn residue(&self) -> Rat {
        self.coeff(-1)
    }

    /// Drops leading zeros so that val is the true valuation (if known).
    pub fn normalized(mut self) -> Self {
        let z = self.c.iter().take_while(|c| c.is_zero()).count();
        self.c.drain(..z);
        self.val += z as i64;
        self
    }

    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec() {
            return self.clone();
        }
        if prec <= self.val {
            return Self::zero(prec);
        }
        LSeries {
            val: self.val,
            c: self.c[..(prec - self.val) as usize].to_vec(),
        }
    }

    /// Multiplies by t^s.
    pub fn shift(&self, s: i64) -> Self {
        LSeries {
            val: self.val + s,
            c: self.c.clone(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        LSeries {
            val: self.val,
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, o: &LSeries) -> Self {
        let prec = self.prec().min(o.prec());
        let val = self.val.min(o.val).min(prec);
        let c = (val..prec)
            .map(|e| {
                let mut s = Rat::zero();
                if e >= self.val {
                    s += &self.c[(e - self.val) as usize];
                }
                if e >= o.val {
                    s += &o.c[(e - o.val) as usize];
                }
                s
            })
            .collect();
        LSeries { val, c }
    }

    pub fn sub(&self, o: &LSeries) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn mul(&self, o: &LSeries) -> Self {
        let a = self.clone().normalized();
        let b = o.clone().normalized();
        let val = a.val + b.val;
        let prec = (a.prec() + b.val).min(b.prec() + a.val);
        if prec <= val {
            return Self::zero(prec);
        }
        let n = (prec - val) as usize;
        let mut c = vec![Rat::zero(); n];
        for (i, x) in a.c.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate().take(n - i) {
                c[i + j] += x * y;
            }
        }
        LSeries { val, c }
    }

    /// Multiplicative inverse; the leading known coefficient must be nonzero after normalization.
    pub fn inverse(&self) -> Self {
        let a = self.clone().normalized();
        assert!(!a.c.is_empty(), "inverse of a series with no known nonzero coefficient");
        let n = a.c.len();
        let inv0 = Rat::one() / &a.c[0];
        let mut r = vec![Rat::zero(); n];
        r[0] = inv0.clone();
        for k in 1..n {
            let mut s = Rat::zero();
            for j in 1..=k {
                if !a.c[j].is_zero() {
                    s += &a.c[j] * &r[k - j];
                }
            }
            r[k] = -s * &inv0;
        }
        LSeries { val: -a.val, c: r }
    }

    pub fn div(&self, o: &LSeries) -> Self {
        self.mul(&o.inverse())
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let rel = (self.prec() - self.val).max(1);
            return LSeries::monomial(Rat::one(), 0, rel);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::rat;

    #[test]
    fn geometric_inverse() {
        // 1 - t inverted is 1 + t + t^2 + ...
        let s = LSeries::new(0, vec![rat(1), rat(-1), rat(0), rat(0)]);
        let inv = s.inverse();
        for e in 0..4 {
            assert_eq!(inv.coeff(e), rat(1));
        }
    }

    #[test]
    fn precision_propagates() {
        let a = LSeries::new(-2, vec![rat(1), rat(0), rat(0), rat(0)]); // known below 2
        let b = LSeries::new(1, vec![rat(1), rat(1)]); // known below 3
        let p = a.mul(&b);
        assert_eq!(p.val(), -1);
        assert_eq!(p.prec(), 1); // min(2+1, 3-2)
        assert_eq!(p.coeff(0), rat(1));
        assert_eq!(p.residue(), rat(1));
    }

    #[test]
    fn powers() {
        let s = LSeries::new(-1, vec![rat(1), rat(1), rat(0), rat(0)]);
        let sq = s.pow(2);
        assert_eq!(sq.val(), -2);
        assert_eq!(sq.coeff(-2), rat(1));
        assert_eq!(sq.coeff(-1), rat(2));
        assert_eq!(sq.coeff(0), rat(1));
    }
}
