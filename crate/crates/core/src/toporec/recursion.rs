//! ω_{g,n} from the recursion kernel by residues at the critical points.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::curve::{curve_data_m2, pullback_sigma, CurveData};
use super::local::{Key, Slot, TSeries, Tensor, ONE};
use crate::error::{Error, Result};
use crate::exactmath::rat::{frac, rat};
use crate::exactmath::{LSeries, Rat, RatFunZ, UPoly};

/// Largest 2g − 2 + n computed unless a caller raises it.
pub const DEFAULT_BUDGET: u32 = 4;

/// Orientation of the global contour: ω is this multiple of the summed residues at ±1.
const RESIDUE_SIGN: i64 = -1;

/// ω_{g,n}/∏dz_i in partial fractions: Σ c ∏_i 1/(z_i − a_i)^{d_i}, keyed by the slots (a_i, d_i).
/// The partial-fraction form is canonical, so equality of maps is equality of rational functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDiff {
    pub g: u32,
    pub n: usize,
    pub terms: Tensor,
}

impl MultiDiff {
    /// 1/(z − a)^d as a rational function.
    pub fn factor(s: Slot) -> RatFunZ {
        let (a, d) = s;
        RatFunZ::new(UPoly::one(), UPoly::linear_root(&rat(a as i64)).pow(d)).expect("nonzero")
    }

    pub fn eval(&self, z: &[Rat]) -> Result<Rat> {
        if z.len() != self.n {
            return Err(Error::Precondition(format!("{} points for {} variables", z.len(), self.n)));
        }
        let mut s = Rat::zero();
        for (k, c) in &self.terms {
            let mut p = c.clone();
            for (slot, zi) in k.iter().zip(z) {
                p *= Self::factor(*slot).eval(zi)?;
            }
            s += p;
        }
        Ok(s)
    }

    /// Invariance under every transposition of neighbouring variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            let swapped: Tensor = self
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut k = k.clone();
                    k.swap(i, i + 1);
                    (k, c.clone())
                })
                .collect();
            swapped == self.terms
        })
    }

    /// Pole locations in the first variable.
    pub fn poles(&self) -> BTreeSet<i8> {
        self.terms.keys().map(|k| k[0].0).collect()
    }

    /// The residue at z_i = a, a function of the other variables, vanishes for every i and a.
    pub fn residues_vanish(&self) -> bool {
        (0..self.n).all(|i| {
            let mut r: BTreeMap<(i8, Key), Rat> = BTreeMap::new();
            for (k, c) in &self.terms {
                if k[i].1 == 1 {
                    let mut rest = k.clone();
                    rest.remove(i);
                    *r.entry((k[i].0, rest)).or_insert_with(Rat::zero) += c;
                }
            }
            r.values().all(|v| v.is_zero())
        })
    }

    /// Highest pole order over all variables.
    pub fn max_order(&self) -> u32 {
        self.terms.keys().flat_map(|k| k.iter().map(|s| s.1)).max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Side {
    Zeta,
    Sigma,
}

/// One factor of a bracket term, as a function of ζ near a critical point.
#[derive(Clone, Copy)]
enum Factor<'a> {
    Stable(&'a MultiDiff, Side),
    /// ω_{g−1,n+2}(ζ, σζ, …)
    Pair(&'a MultiDiff),
    /// ω_{0,2} against one outer variable
    Bergman(Side),
    /// ω_{0,2}(ζ, σζ) = −dζ²/(ζ² − 1)²
    BergmanPair,
}

fn slot_series(s: Slot, side: Side, a: i8, prec: i64) -> LSeries {
    let f = MultiDiff::factor(s);
    let f = match side {
        Side::Zeta => f,
        Side::Sigma => pullback_sigma(&f),
    };
    f.laurent(&rat(a as i64), prec)
}

fn ratfun(num: UPoly, den: UPoly) -> RatFunZ {
    RatFunZ::new(num, den).expect("nonzero denominator")
}

/// σζ − a near ζ = a, with σζ = 1/ζ.
fn sigma_minus_a(a: i8, prec: i64) -> LSeries {
    let ar = rat(a as i64);
    ratfun(UPoly::from_coeffs(vec![Rat::one(), -ar.clone()]), UPoly::x()).laurent(&ar, prec)
}

fn order_at(k: &[Slot], slots: usize, a: i8) -> i64 {
    k[..slots].iter().filter(|s| s.0 == a).map(|s| s.1 as i64).sum()
}

impl Factor<'_> {
    /// Lower bound for the t-valuation at ζ = a.
    fn bound(&self, a: i8) -> i64 {
        let slots = match self {
            Factor::Stable(..) => 1,
            Factor::Pair(_) => 2,
            Factor::Bergman(_) => return 0,
            Factor::BergmanPair => return -2,
        };
        let w = match self {
            Factor::Stable(w, _) | Factor::Pair(w) => w,
            _ => unreachable!(),
        };
        -w.terms.keys().map(|k| order_at(k, slots, a)).max().unwrap_or(0)
    }

    /// Expansion at ζ = a known below prec; the remaining slots go to `pos` among nv outer variables.
    fn series(&self, a: i8, pos: &[usize], nv: usize, prec: i64) -> TSeries {
        let lb = self.bound(a);
        let mut out = TSeries::zero(lb, prec);
        match *self {
            Factor::Stable(w, side) => {
                let mut memo: BTreeMap<Slot, LSeries> = BTreeMap::new();
                for (k, c) in &w.terms {
                    let s = memo.entry(k[0]).or_insert_with(|| slot_series(k[0], side, a, prec));
                    out.add_scaled(s, c, &place(&k[1..], pos, nv));
                }
            }
            Factor::Pair(w) => {
                let mut memo: BTreeMap<(Slot, Slot), LSeries> = BTreeMap::new();
                for (k, c) in &w.terms {
                    let s = memo.entry((k[0], k[1])).or_insert_with(|| {
                        let o0 = order_at(&k[..1], 1, a);
                        let o1 = order_at(&k[1..2], 1, a);
                        let s0 = slot_series(k[0], Side::Zeta, a, prec + o1);
                        let s1 = slot_series(k[1], Side::Sigma, a, prec + o0);
                        s0.mul(&s1)
                    });
                    out.add_scaled(s, c, &place(&k[2..], pos, nv));
                }
            }
            Factor::BergmanPair => {
                let den = UPoly::from_coeffs(vec![rat(-1), Rat::zero(), Rat::one()]).pow(2);
                let f = ratfun(UPoly::constant(rat(-1)), den);
                out.add_scaled(&f.laurent(&rat(a as i64), prec), &Rat::one(), &vec![ONE; nv]);
            }
            Factor::Bergman(side) => {
                // 1/(u − z_j)² = Σ_k (k+1)(u − a)^k/(z_j − a)^{k+2}
                let (step, mut cur) = match side {
                    Side::Zeta => (LSeries::monomial(Rat::one(), 1, prec + 1), LSeries::monomial(Rat::one(), 0, prec)),
                    Side::Sigma => {
                        let jac = ratfun(UPoly::constant(rat(-1)), UPoly::monomial(Rat::one(), 2));
                        (sigma_minus_a(a, prec + 1), jac.laurent(&rat(a as i64), prec))
                    }
                };
                for k in 0..prec.max(0) {
                    out.add_scaled(&cur, &rat(k + 1), &place(&[(a, k as u32 + 2)], pos, nv));
                    cur = cur.mul(&step);
                }
            }
        }
        out
    }
}

fn place(slots: &[Slot], pos: &[usize], nv: usize) -> Key {
    let mut k = vec![ONE; nv];
    for (s, &p) in slots.iter().zip(pos) {
        k[p] = *s;
    }
    k
}

fn lift(s: &LSeries, nv: usize, val: i64, prec: i64) -> TSeries {
    let mut t = TSeries::zero(val, prec);
    t.add_scaled(s, &Rat::one(), &vec![ONE; nv]);
    t
}

struct LocalResidues {
    antisymmetrized: Tensor,
    based: Tensor,
    base_point_part: Tensor,
}

/// Computed ω_{g,n}, filled by increasing 2g − 2 + n.
pub struct Recursion {
    curve: CurveData,
    budget: u32,
    table: BTreeMap<(u32, usize), MultiDiff>,
}

impl Recursion {
    pub fn new(budget: u32) -> Result<Self> {
        Ok(Recursion { curve: curve_data_m2()?, budget, table: BTreeMap::new() })
    }

    pub fn curve(&self) -> &CurveData {
        &self.curve
    }

    pub fn omega(&mut self, g: u32, n: usize) -> Result<MultiDiff> {
        let chi = 2 * g as i64 - 2 + n as i64;
        if n == 0 || chi <= 0 {
            return Err(Error::Precondition(format!(
                "(g, n) = ({g}, {n}) is unstable; ω_{{0,1}} and ω_{{0,2}} are handled by the spectral module"
            )));
        }
        if chi > self.budget as i64 {
            return Err(Error::Budget(format!("2g − 2 + n = {chi} exceeds the budget {}", self.budget)));
        }
        if let Some(w) = self.table.get(&(g, n)) {
            return Ok(w.clone());
        }
        for (g1, k) in lower_needed(g, n) {
            self.omega(g1, k)?;
        }
        let w = self.compute(g, n)?;
        if !w.is_symmetric() {
            return Err(Error::Mismatch(format!("ω_{{{g},{n}}} failed the symmetry certificate")));
        }
        self.table.insert((g, n), w.clone());
        Ok(w)
    }

    /// Bracket terms for ω_{g,n}: factor lists with the outer positions each factor covers.
    fn bracket(&self, g: u32, n: usize) -> Vec<Vec<(Factor<'_>, Vec<usize>)>> {
        let outer = n - 1;
        let mut terms = Vec::new();
        if g >= 1 {
            let f = if (g, n) == (1, 1) { Factor::BergmanPair } else { Factor::Pair(&self.table[&(g - 1, n + 1)]) };
            terms.push(vec![(f, (0..outer).collect())]);
        }
        for mask in 0u32..(1 << outer) {
            let i: Vec<usize> = (0..outer).filter(|b| mask >> b & 1 == 1).collect();
            let j: Vec<usize> = (0..outer).filter(|b| mask >> b & 1 == 0).collect();
            for g1 in 0..=g {
                let g2 = g - g1;
                if (g1, i.len()) == (0, 0) || (g2, j.len()) == (0, 0) {
                    continue;
                }
                let f1 = match (g1, i.len()) {
                    (0, 1) => Factor::Bergman(Side::Zeta),
                    (_, l) => Factor::Stable(&self.table[&(g1, l + 1)], Side::Zeta),
                };
                let f2 = match (g2, j.len()) {
                    (0, 1) => Factor::Bergman(Side::Sigma),
                    (_, l) => Factor::Stable(&self.table[&(g2, l + 1)], Side::Sigma),
                };
                terms.push(vec![(f1, i.clone()), (f2, j.clone())]);
            }
        }
        terms
    }

    fn local_residues(&self, g: u32, n: usize, a: i8) -> LocalResidues {
        let ar = rat(a as i64);
        let z0 = n - 1;
        let terms = self.bracket(g, n);
        let inv_delta = ratfun(self.curve.delta.den().clone(), self.curve.delta.num().clone());
        let lb_k = -(self.curve.delta.num().root_multiplicity(&ar) as i64);
        let lbs: Vec<Vec<i64>> = terms.iter().map(|t| t.iter().map(|(f, _)| f.bound(a)).collect()).collect();
        let lb_b = lbs.iter().map(|l| l.iter().sum::<i64>()).min().unwrap_or(0);
        let prec = -lb_k - lb_b;

        let mut b = TSeries::zero(lb_b, prec);
        for (t, l) in terms.iter().zip(&lbs) {
            let total: i64 = l.iter().sum();
            let mut prod: Option<TSeries> = None;
            for ((f, pos), lf) in t.iter().zip(l) {
                let s = f.series(a, pos, n, prec - (total - lf));
                prod = Some(match prod {
                    None => s,
                    Some(p) => p.mul(&s),
                });
            }
            b.add_assign(&prod.expect("nonempty term"));
        }

        let inv = lift(&inv_delta.laurent(&ar, prec), n, lb_k, prec);
        // ∫_o^ζ ω_{0,2}(·, z_0) = 1/(z_0 − ζ) − 1/(z_0 − o); the first part in slots at a
        let p = prec - lb_k;
        let mut based = TSeries::zero(0, p);
        let mut anti = TSeries::zero(0, p);
        let mut key = vec![ONE; n];
        let half = frac(1, 2);
        let w = sigma_minus_a(a, p + 1);
        let mut wpow = LSeries::monomial(Rat::one(), 0, p);
        for k in 0..p {
            key[z0] = (a, k as u32 + 1);
            let tk = LSeries::monomial(Rat::one(), k, p);
            based.add_scaled(&tk, &Rat::one(), &key);
            anti.add_scaled(&tk, &half, &key);
            anti.add_scaled(&wpow, &-half.clone(), &key);
            wpow = wpow.mul(&w);
        }
        let bi = b.mul(&inv);
        LocalResidues {
            antisymmetrized: bi.mul(&anti).coeff(-1),
            based: bi.mul(&based).coeff(-1),
            base_point_part: bi.coeff(-1),
        }
    }

    fn compute(&self, g: u32, n: usize) -> Result<MultiDiff> {
        let points: Vec<i8> = self.curve.critical_points.iter().map(|a| if a.is_one() { 1 } else { -1 }).collect();
        let local: Vec<LocalResidues> = points.par_iter().map(|&a| self.local_residues(g, n, a)).collect();
        let sum = |f: &dyn Fn(&LocalResidues) -> &Tensor| {
            let mut acc = Tensor::new();
            for l in &local {
                for (k, v) in f(l) {
                    *acc.entry(k.clone()).or_insert_with(Rat::zero) += v;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            acc
        };
        let anti = sum(&|l| &l.antisymmetrized);
        let based = sum(&|l| &l.based);
        let base_point = sum(&|l| &l.base_point_part);
        if !base_point.is_empty() || anti != based {
            return Err(Error::Mismatch(format!("ω_{{{g},{n}}} depends on the base point of the primitive")));
        }
        let sign = rat(RESIDUE_SIGN);
        let terms = anti.into_iter().map(|(k, v)| (k, v * &sign)).collect();
        Ok(MultiDiff { g, n, terms })
    }
}

/// Stable (g', n') entering the bracket of ω_{g,n}.
fn lower_needed(g: u32, n: usize) -> Vec<(u32, usize)> {
    let chi = 2 * g as i64 - 2 + n as i64;
    let mut v = Vec::new();
    for g1 in 0..=g {
        for k in 1..=n + 1 {
            let c = 2 * g1 as i64 - 2 + k as i64;
            if c > 0 && c < chi {
                v.push((g1, k));
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unstable_requests_fail() {
        let mut r = Recursion::new(DEFAULT_BUDGET).unwrap();
        assert!(r.omega(0, 1).is_err());
        assert!(r.omega(0, 2).is_err());
        assert!(matches!(r.omega(3, 1), Err(Error::Budget(_))));
    }

    #[test]
    fn three_point_and_one_point() {
        let mut r = Recursion::new(DEFAULT_BUDGET).unwrap();
        let w03 = r.omega(0, 3).unwrap();
        let w11 = r.omega(1, 1).unwrap();
        for w in [&w03, &w11] {
            assert!(w.is_symmetric());
            assert!(w.residues_vanish());
            assert!(w.poles().is_subset(&[-1, 1].into_iter().collect()));
        }
        // ω_{0,3} = 2 ∏ dz_i/(z_i − 1)²
        let expect: Tensor = [(vec![(1, 2); 3], rat(2))].into_iter().collect();
        assert_eq!(w03.terms, expect);
        assert_eq!(w11.eval(&[rat(3)]).unwrap(), frac(1, 16) / rat(16) - frac(1, 16) / rat(4) + frac(1, 32) + frac(1, 64));
    }

    #[test]
    fn symmetric_by_evaluation() {
        let mut r = Recursion::new(DEFAULT_BUDGET).unwrap();
        let w = r.omega(1, 2).unwrap();
        let (p, q) = (frac(1, 3), rat(5));
        assert_eq!(w.eval(&[p.clone(), q.clone()]).unwrap(), w.eval(&[q, p]).unwrap());
    }
}
