//! Dense univariate polynomials over the rationals and their quotients.

use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::laurent::LSeries;
use super::rat::{rat, Rat};
use crate::error::{Error, Result};

/// Coefficients in ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn monomial(c: Rat, e: usize) -> Self {
        let mut v = vec![Rat::zero(); e + 1];
        v[e] = c;
        Self::from_coeffs(v)
    }

    /// x - a
    pub fn linear_root(a: &Rat) -> Self {
        Self::from_coeffs(vec![-a.clone(), Rat::one()])
    }

    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_roots(roots: &[Rat]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_root(r))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_coeffs(self.c.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(Rat::one() / l))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// self(inner(x))
    pub fn compose(&self, inner: &UPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// self(x + a)
    pub fn shift(&self, a: &Rat) -> Self {
        self.compose(&Self::from_coeffs(vec![a.clone(), Rat::one()]))
    }

    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::DivisionByZero("zero polynomial divisor".into()))?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = Rat::one() / d.lead();
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let f = &r[i + dd] * &inv;
            if !f.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[i + j] -= &f * dc;
                }
            }
            q[i] = f;
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &Rat) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut p = self.clone();
        let lin = Self::linear_root(a);
        let mut e = 0;
        loop {
            let (q, r) = p.div_rem(&lin).expect("nonzero divisor");
            if !r.is_zero() {
                return e;
            }
            p = q;
            e += 1;
        }
    }

    /// Newton interpolation through the points (xs[i], ys[i]).
    pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Result<UPoly> {
        if xs.len() != ys.len() {
            return Err(Error::Precondition("interpolation: length mismatch".into()));
        }
        let n = xs.len();
        let mut dd: Vec<Rat> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let den = &xs[i] - &xs[i - j];
                if den.is_zero() {
                    return Err(Error::Precondition("interpolation: repeated node".into()));
                }
                dd[i] = (&dd[i] - &dd[i - 1]) / den;
            }
        }
        let mut acc = UPoly::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &Self::linear_root(&xs[i])) + &Self::constant(dd[i].clone());
        }
        Ok(acc)
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(a: &UPoly, b: &UPoly) -> Rat {
        let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
            return Rat::zero();
        };
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut acc = Rat::one();
        loop {
            if db == 0 {
                let lb = b.lead();
                let mut p = Rat::one();
                for _ in 0..da {
                    p *= &lb;
                }
                return acc * p;
            }
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            if r.is_zero() {
                return Rat::zero();
            }
            let dr = r.degree().unwrap();
            // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            let lb = b.lead();
            for _ in 0..(da - dr) {
                acc *= &lb;
            }
            a = b;
            b = r;
            da = db;
            db = dr;
        }
    }

    /// Power-series expansion at t = 0 of self(t), used by Laurent helpers.
    pub fn to_series(&self, prec: i64) -> LSeries {
        let n = prec.max(0) as usize;
        LSeries::new(0, (0..n).map(|i| self.coeff(i)).collect())
    }

    pub fn fmt_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -Rat::one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_in("k"))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(self.c.iter().map(|c| -c).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(v)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;
owned_ops!(UPoly);

/// Quotient of univariate polynomials, gcd-reduced with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: UPoly,
    den: UPoly,
}

/// Rational function in the variable k.
pub type RatFunK = RatFun;
/// Rational function in the curve coordinate z.
pub type RatFunZ = RatFun;

impl RatFun {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::from_poly(UPoly::zero()));
        }
        let g = UPoly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g)?;
        let (d, _) = den.div_rem(&g)?;
        let l = d.lead();
        let inv = Rat::one() / l;
        Ok(RatFun {
            num: n.scale(&inv),
            den: d.scale(&inv),
        })
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFun {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!("pole at {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn add(&self, o: &RatFun) -> RatFun {
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("nonzero denominators")
    }

    pub fn sub(&self, o: &RatFun) -> RatFun {
        Self::new(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("nonzero denominators")
    }

    pub fn mul(&self, o: &RatFun) -> RatFun {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn div(&self, o: &RatFun) -> Result<RatFun> {
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    /// r(1/z) as a rational function of z.
    pub fn at_reciprocal(&self) -> RatFun {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let rev = |p: &UPoly, d: usize| {
            let mut c: Vec<Rat> = (0..=d).map(|i| p.coeff(i)).collect();
            c.reverse();
            UPoly::from_coeffs(c)
        };
        let (mut n, mut d) = (rev(&self.num, dn), rev(&self.den, dd));
        // multiply numerator and denominator by z^max so both are polynomials
        if dn > dd {
            d = &d * &UPoly::monomial(Rat::one(), dn - dd);
        } else if dd > dn {
            n = &n * &UPoly::monomial(Rat::one(), dd - dn);
        }
        Self::new(n, d).expect("nonzero denominator")
    }

    /// Laurent expansion in t of r(a + t), coefficients known for exponents < prec.
    pub fn laurent(&self, a: &Rat, prec: i64) -> LSeries {
        let n = self.num.shift(a);
        let d = self.den.shift(a);
        let e = d.c.iter().take_while(|c| c.is_zero()).count();
        let dt = UPoly::from_coeffs(d.c[e..].to_vec());
        let rel = prec + e as i64;
        if rel <= 0 {
            return LSeries::zero(prec);
        }
        let s = n.to_series(rel).div(&dt.to_series(rel));
        s.shift(-(e as i64))
    }

    pub fn residue(&self, a: &Rat) -> Rat {
        self.laurent(a, 0).coeff(-1)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::frac;

    fn p(v: &[i64]) -> UPoly {
        UPoly::from_coeffs(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(UPoly::gcd(&a, &p(&[-2, 1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let f = p(&[3, 0, -2, 1]);
        let xs: Vec<Rat> = (0..4).map(rat).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys).unwrap(), f);
    }

    #[test]
    fn resultant_detects_common_roots() {
        assert_eq!(UPoly::resultant(&p(&[-1, 1]), &p(&[-2, 1])), rat(-1));
        assert_eq!(UPoly::resultant(&p(&[-1, 0, 1]), &p(&[1, 1])), rat(0));
        // res(x^2+1, x-2) = 5
        assert_eq!(UPoly::resultant(&p(&[1, 0, 1]), &p(&[-2, 1])), rat(5));
    }

    #[test]
    fn ratfun_reduction_and_residue() {
        let r = RatFun::new(p(&[-1, 0, 1]), p(&[-1, 1]).pow(2)).unwrap();
        assert_eq!(r.den(), &p(&[-1, 1]));
        assert_eq!(r.residue(&rat(1)), rat(2));
        let s = RatFun::new(p(&[1]), p(&[0, 0, 1])).unwrap();
        assert_eq!(s.residue(&rat(0)), rat(0));
        assert_eq!(s.laurent(&rat(0), 2).coeff(-2), rat(1));
        assert_eq!(r.eval(&frac(1, 2)).unwrap(), rat(-3));
    }

    #[test]
    fn reciprocal_substitution() {
        // (1+z)^2/z is invariant under z -> 1/z
        let x = RatFun::new(p(&[1, 2, 1]), p(&[0, 1])).unwrap();
        assert_eq!(x.at_reciprocal(), x);
    }
}
