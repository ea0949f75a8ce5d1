//! Truncated power series in X.

use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{Rat, UPoly};

/// Coefficients of X^0..=X^order; nothing is known beyond order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    c: Vec<Rat>,
}

impl XSeries {
    pub fn zero(order: usize) -> Self {
        XSeries { c: vec![Rat::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Rat::one(), 0, order)
    }

    pub fn monomial(c: Rat, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.c[e] = c;
        }
        s
    }

    pub fn from_coeffs(c: Vec<Rat>) -> Self {
        assert!(!c.is_empty(), "a series knows at least its constant term");
        XSeries { c }
    }

    pub fn from_upoly(p: &UPoly, order: usize) -> Self {
        XSeries { c: (0..=order).map(|i| p.coeff(i)).collect() }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rat {
        assert!(k <= self.order(), "coefficient X^{k} beyond order {}", self.order());
        self.c[k].clone()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn truncate(&self, order: usize) -> Self {
        XSeries { c: self.c[..=order.min(self.order())].to_vec() }
    }

    pub fn add(&self, o: &XSeries) -> Self {
        let n = self.order().min(o.order());
        XSeries { c: (0..=n).map(|i| &self.c[i] + &o.c[i]).collect() }
    }

    pub fn sub(&self, o: &XSeries) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        XSeries { c: self.c.iter().map(|x| x * s).collect() }
    }

    pub fn mul(&self, o: &XSeries) -> Self {
        let n = self.order().min(o.order());
        let mut c = vec![Rat::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n + 1 - i) {
                c[i + j] += a * b;
            }
        }
        XSeries { c }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.c[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZero("constant term of a series".into()));
        }
        let n = self.order();
        let mut inv = vec![Rat::zero(); n + 1];
        inv[0] = Rat::one() / c0;
        for k in 1..=n {
            let mut s = Rat::zero();
            for j in 1..=k {
                s += &self.c[j] * &inv[k - j];
            }
            inv[k] = -s / c0;
        }
        Ok(XSeries { c: inv })
    }

    pub fn div(&self, o: &XSeries) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// self(inner(X)); inner must have zero constant term.
    pub fn compose(&self, inner: &XSeries) -> Result<Self> {
        if !inner.c[0].is_zero() {
            return Err(Error::Precondition("composition needs an inner series without constant term".into()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::zero(n);
        for c in self.c[..=n].iter().rev() {
            acc = acc.mul(&inner).add(&Self::monomial(c.clone(), 0, n));
        }
        Ok(acc)
    }

    /// D = -X² d/dX: X^k ↦ -k X^{k+1}; the result is known to one order higher.
    pub fn d_operator(&self) -> Self {
        let mut c = vec![Rat::zero(); self.c.len() + 1];
        for (k, a) in self.c.iter().enumerate() {
            c[k + 1] = -(a * Rat::from_integer((k as i64).into()));
        }
        XSeries { c }
    }
}

impl fmt::Display for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(X^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::rat;

    #[test]
    fn arithmetic() {
        let one_minus_x = XSeries::from_coeffs(vec![rat(1), rat(-1), rat(0), rat(0)]);
        let geo = one_minus_x.inverse().unwrap();
        assert_eq!(geo, XSeries::from_coeffs(vec![rat(1); 4]));
        assert!(XSeries::monomial(rat(1), 1, 3).inverse().is_err());
        let x = XSeries::monomial(rat(1), 1, 4);
        // 1/(1-X) at X + X²
        let inner = x.add(&x.mul(&x));
        let c = geo.truncate(3).compose(&inner).unwrap();
        assert_eq!(c.coeffs(), &[rat(1), rat(1), rat(2), rat(3)]);
    }

    #[test]
    fn d_operator_examples() {
        assert_eq!(XSeries::one(3).d_operator(), XSeries::zero(4));
        let x3 = XSeries::monomial(rat(1), 3, 5);
        assert_eq!(x3.d_operator(), XSeries::monomial(rat(-3), 4, 6));
    }
}
