//! Sparse multivariate polynomials over named indeterminates.

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rat::{parse_rat, Rat};
use super::upoly::{owned_ops, UPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_in(vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn zero_in(vars: Vec<String>) -> Self {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn constant_like(&self, c: Rat) -> Self {
        let mut p = Self::zero_in(self.vars.clone());
        p.add_term(vec![0; self.vars.len()], c);
        p
    }

    pub fn zero_like(&self) -> Self {
        Self::zero_in(self.vars.clone())
    }

    /// The indeterminate `name`; panics if it is not among `vars`.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let i = vars
            .iter()
            .position(|v| *v == name)
            .unwrap_or_else(|| panic!("unknown indeterminate {name}"));
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Rat::one());
        p
    }

    pub fn var_like(&self, i: usize) -> Self {
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        let mut p = self.zero_like();
        p.add_term(e, Rat::one());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Rat) {
        assert_eq!(exp.len(), self.vars.len(), "exponent arity");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exp: &[u32]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut pows: Vec<Vec<Rat>> = vec![vec![Rat::one()]; point.len()];
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                while pows[i].len() <= ei as usize {
                    let next = pows[i].last().unwrap() * &point[i];
                    pows[i].push(next);
                }
                t *= &pows[i][ei as usize];
            }
            acc += t;
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut p = self.zero_like();
        if s.is_zero() {
            return p;
        }
        for (e, c) in &self.terms {
            p.terms.insert(e.clone(), c * s);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.constant_like(Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes subs[i] for the i-th indeterminate; all substitutes share one variable list.
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.vars.len(), "one substitute per indeterminate");
        let target = subs
            .first()
            .map(|s| s.vars.clone())
            .unwrap_or_default();
        let mut pows: Vec<Vec<MPoly>> = subs
            .iter()
            .map(|s| vec![s.constant_like(Rat::one())])
            .collect();
        let mut acc = MPoly::zero_in(target.clone());
        for (e, c) in &self.terms {
            let mut t = MPoly::zero_in(target.clone());
            t.add_term(vec![0; target.len()], c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                while pows[i].len() <= ei as usize {
                    let next = pows[i].last().unwrap() * &subs[i];
                    pows[i].push(next);
                }
                t = &t * &pows[i][ei as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes q for indeterminate i (q over the same variables).
    pub fn subst(&self, i: usize, q: &MPoly) -> MPoly {
        let subs: Vec<MPoly> = (0..self.nvars())
            .map(|j| if j == i { q.clone() } else { self.var_like(j) })
            .collect();
        self.compose(&subs)
    }

    /// Sets indeterminate i to a value; the indeterminate stays in the list with exponent 0.
    pub fn partial_eval(&self, i: usize, v: &Rat) -> MPoly {
        let mut p = self.zero_like();
        let mut pows = vec![Rat::one()];
        for (e, c) in &self.terms {
            while pows.len() <= e[i] as usize {
                let next = pows.last().unwrap() * v;
                pows.push(next);
            }
            let mut ne = e.clone();
            ne[i] = 0;
            p.add_term(ne, c * &pows[e[i] as usize]);
        }
        p
    }

    /// Re-expresses over another variable list containing all used indeterminates.
    pub fn with_vars(&self, vars: &[&str]) -> MPoly {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut p = MPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                let j = map[i].unwrap_or_else(|| panic!("indeterminate {} dropped", self.vars[i]));
                ne[j] = ei;
            }
            p.add_term(ne, c.clone());
        }
        p
    }

    /// Univariate view in indeterminate i, if no other indeterminate occurs.
    pub fn to_upoly(&self, i: usize) -> Option<UPoly> {
        let mut c: Vec<Rat> = Vec::new();
        for (e, v) in &self.terms {
            if e.iter().enumerate().any(|(j, &x)| j != i && x > 0) {
                return None;
            }
            let d = e[i] as usize;
            if c.len() <= d {
                c.resize(d + 1, Rat::zero());
            }
            c[d] = v.clone();
        }
        Some(UPoly::from_coeffs(c))
    }

    pub fn from_upoly(vars: &[&str], i: usize, p: &UPoly) -> MPoly {
        let mut m = MPoly::zero(vars);
        for (d, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = d as u32;
            m.add_term(e, c.clone());
        }
        m
    }

    /// Coefficients as a polynomial in indeterminate i: index d holds the part multiplying x_i^d.
    pub fn coefficients_in(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![self.zero_like(); d + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = 0;
            out[e[i] as usize].add_term(ne, c.clone());
        }
        out
    }

    /// Division by (x_i - root): returns (quotient, remainder), remainder free of x_i.
    pub fn div_linear(&self, i: usize, root: &Rat) -> (MPoly, MPoly) {
        let cs = self.coefficients_in(i);
        let d = cs.len() - 1;
        if d == 0 {
            return (self.zero_like(), self.clone());
        }
        let mut q = vec![self.zero_like(); d];
        q[d - 1] = cs[d].clone();
        for j in (1..d).rev() {
            q[j - 1] = &cs[j] + &q[j].scale(root);
        }
        let r = &cs[0] + &q[0].scale(root);
        let xi = self.var_like(i);
        let mut quot = self.zero_like();
        let mut pw = self.constant_like(Rat::one());
        for qj in q {
            quot = &quot + &(&qj * &pw);
            pw = &pw * &xi;
        }
        (quot, r)
    }

    /// True if invariant under every permutation of the indeterminates.
    pub fn is_symmetric(&self) -> bool {
        let n = self.nvars();
        for a in 0..n {
            for b in (a + 1)..n {
                for (e, c) in &self.terms {
                    let mut f = e.clone();
                    f.swap(a, b);
                    if &self.coeff(&f) != c {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            let mono = mono.join("*");
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
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

fn check_vars(a: &MPoly, b: &MPoly) {
    assert_eq!(a.vars, b.vars, "indeterminate lists differ");
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        check_vars(self, o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        check_vars(self, o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        check_vars(self, o);
        let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly {
            vars: self.vars.clone(),
            terms: acc,
        }
    }
}

owned_ops!(MPoly);

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct MPolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MPolyJson {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coef: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = MPolyJson::deserialize(d)?;
        let mut p = MPoly::zero_in(j.vars);
        for t in j.terms {
            if t.exp.len() != p.nvars() {
                return Err(D::Error::custom("exponent arity mismatch"));
            }
            p.add_term(t.exp, parse_rat(&t.coef).map_err(D::Error::custom)?);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::{frac, rat};

    const V: &[&str] = &["x", "k"];

    #[test]
    fn arithmetic_and_eval() {
        let x = MPoly::var(V, "x");
        let k = MPoly::var(V, "k");
        let p = &(&x + &k) * &(&x - &k);
        assert_eq!(p.eval(&[rat(3), rat(2)]), rat(5));
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!((&p - &p).num_terms(), 0);
        assert!(p.is_symmetric() == false);
        assert!((&x * &k).is_symmetric());
    }

    #[test]
    fn division_by_linear_factor() {
        let x = MPoly::var(V, "x");
        let k = MPoly::var(V, "k");
        let p = &(&k - &MPoly::constant(V, rat(2))) * &(&x + &k);
        let (q, r) = p.div_linear(1, &rat(2));
        assert!(r.is_zero());
        assert_eq!(q, &x + &k);
        let (_, r) = (&x + &k).div_linear(1, &rat(0));
        assert_eq!(r, x);
    }

    #[test]
    fn substitution() {
        let x = MPoly::var(V, "x");
        let k = MPoly::var(V, "k");
        let p = &(&x * &x) + &k;
        let q = p.subst(0, &(&k - &MPoly::constant(V, rat(1))));
        assert_eq!(q.eval(&[rat(0), rat(3)]), rat(7));
        assert_eq!(p.partial_eval(0, &frac(1, 2)).eval(&[rat(9), rat(1)]), frac(5, 4));
    }

    #[test]
    fn json_round_trip() {
        let p = &MPoly::var(V, "x").scale(&frac(-3, 4)) + &MPoly::constant(V, rat(2));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["x","k"],"terms":[{"exp":[0,0],"coef":"2"},{"exp":[1,0],"coef":"-3/4"}]}"#
        );
        let back: MPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
