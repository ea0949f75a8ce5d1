//! Laurent polynomials in ħ with a tracked truncation order.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::rat::Rat;
use super::upoly::UPoly;

/// Truncation order used for values that are exact polynomials.
pub const EXACT: i64 = i64::MAX / 4;

/// Coefficients of ħ^e, known exactly for e <= truncation order.
#[derive(Clone, Debug)]
pub struct HSeries {
    coeffs: BTreeMap<i64, Rat>,
    min_degree: i64,
    trunc: i64,
}

impl HSeries {
    pub fn zero() -> Self {
        HSeries {
            coeffs: BTreeMap::new(),
            min_degree: 0,
            trunc: EXACT,
        }
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0)
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut s = HSeries {
            coeffs: BTreeMap::new(),
            min_degree: e.min(0),
            trunc: EXACT,
        };
        if !c.is_zero() {
            s.coeffs.insert(e, c);
        }
        s
    }

    /// The ħ-polynomial with the given ascending coefficients.
    pub fn from_upoly(p: &UPoly) -> Self {
        let mut s = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                s.coeffs.insert(i as i64, c.clone());
            }
        }
        s
    }

    pub fn coeff(&self, e: i64) -> Rat {
        assert!(
            e <= self.trunc,
            "coefficient ħ^{e} beyond truncation order {}",
            self.trunc
        );
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn truncation_order(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc >= EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn truncate(&self, order: i64) -> Self {
        let trunc = self.trunc.min(order);
        HSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| **e <= trunc)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            min_degree: self.min_degree.min(trunc),
            trunc,
        }
    }

    /// Multiplies by ħ^s.
    pub fn shift(&self, s: i64) -> Self {
        HSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + s, c.clone())).collect(),
            min_degree: self.min_degree + s,
            trunc: if self.is_exact() { EXACT } else { self.trunc + s },
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            let mut z = self.clone();
            z.coeffs.clear();
            return z;
        }
        HSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, o: &HSeries) -> Self {
        let trunc = self.trunc.min(o.trunc);
        let mut coeffs = BTreeMap::new();
        for (e, c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            if *e <= trunc {
                *coeffs.entry(*e).or_insert_with(Rat::zero) += c;
            }
        }
        coeffs.retain(|_, c: &mut Rat| !c.is_zero());
        HSeries {
            coeffs,
            min_degree: self.min_degree.min(o.min_degree),
            trunc,
        }
    }

    pub fn sub(&self, o: &HSeries) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn mul(&self, o: &HSeries) -> Self {
        // a coefficient of the product is exact as long as every contributing
        // pair lies below both truncation orders
        let t1 = if o.is_exact() {
            EXACT
        } else {
            o.trunc.saturating_add(self.min_degree)
        };
        let t2 = if self.is_exact() {
            EXACT
        } else {
            self.trunc.saturating_add(o.min_degree)
        };
        let trunc = t1.min(t2).min(EXACT);
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &o.coeffs {
                let e = e1 + e2;
                if e <= trunc {
                    *coeffs.entry(e).or_insert_with(Rat::zero) += c1 * c2;
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        HSeries {
            coeffs,
            min_degree: self.min_degree + o.min_degree,
            trunc,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a series with nonzero constant term and no negative part, to the given order.
    pub fn inverse(&self, order: i64) -> Self {
        let c0 = self.coeff(0);
        assert!(
            !c0.is_zero() && self.valuation().unwrap_or(0) >= 0,
            "inverse needs a unit constant term"
        );
        let order = order.min(self.trunc);
        let inv0 = Rat::one() / &c0;
        let mut r: Vec<Rat> = vec![inv0.clone()];
        for k in 1..=order.max(0) {
            let mut s = Rat::zero();
            for j in 1..=k {
                let a = self.coeff(j);
                if !a.is_zero() {
                    s += a * &r[(k - j) as usize];
                }
            }
            r.push(-s * &inv0);
        }
        let mut out = HSeries {
            coeffs: BTreeMap::new(),
            min_degree: 0,
            trunc: order,
        };
        for (i, c) in r.into_iter().enumerate() {
            if !c.is_zero() {
                out.coeffs.insert(i as i64, c);
            }
        }
        out
    }

    /// Equality of the coefficients known to both operands.
    pub fn agrees_with(&self, o: &HSeries) -> bool {
        let t = self.trunc.min(o.trunc);
        self.truncate(t).coeffs == o.truncate(t).coeffs
    }
}

// min_degree is only a bookkeeping bound, so it does not take part in equality
impl PartialEq for HSeries {
    fn eq(&self, o: &Self) -> bool {
        self.trunc == o.trunc && self.coeffs == o.coeffs
    }
}

impl Eq for HSeries {}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let parts: Vec<String> = self
                .coeffs
                .iter()
                .map(|(e, c)| match e {
                    0 => c.to_string(),
                    1 => format!("{c}*h"),
                    _ => format!("{c}*h^{e}"),
                })
                .collect();
            write!(f, "{}", parts.join(" + "))?;
        }
        if !self.is_exact() {
            write!(f, " + O(h^{})", self.trunc + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::rat;

    #[test]
    fn truncation_propagates() {
        let a = HSeries::from_upoly(&UPoly::from_coeffs(vec![rat(1), rat(1)])).truncate(3);
        let b = HSeries::monomial(rat(1), -2);
        let p = a.mul(&b);
        assert_eq!(p.truncation_order(), 1);
        assert_eq!(p.coeff(-1), rat(1));
        let inv = a.inverse(3);
        assert_eq!(inv.coeff(3), rat(-1));
        assert!(a.mul(&inv).agrees_with(&HSeries::one()));
    }

    #[test]
    fn laurent_cancellation() {
        // ħ^{-2}(1+ħ²) − ħ^{-1}·ħ^{-1} = 1
        let d = HSeries::from_upoly(&UPoly::from_coeffs(vec![rat(1), rat(0), rat(1)])).shift(-2);
        let s = HSeries::monomial(rat(1), -1);
        let c = d.sub(&s.mul(&s));
        assert_eq!(c.coeff(0), rat(1));
        assert_eq!(c.valuation(), Some(0));
    }
}
