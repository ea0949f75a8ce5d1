//! Bernoulli numbers, power-sum polynomials and the ordered product sums T_d, T̃_d.

use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::factorial::falling_factorial;
use super::mpoly::MPoly;
use super::rat::{binomial, factorial_rat, frac, rat, Rat};

static BERNOULLI: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();

/// B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Rat {
    let memo = BERNOULLI.get_or_init(|| Mutex::new(vec![Rat::one()]));
    let mut b = memo.lock().expect("bernoulli memo poisoned");
    while b.len() <= n {
        let m = b.len();
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut s = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            s += binomial(m as i64 + 1, j as i64) * bj;
        }
        b.push(-s / rat(m as i64 + 1));
    }
    b[n].clone()
}

/// Σ_{k=1}^{n} k^p as a polynomial in n.
pub fn faulhaber_power_sum(p: u32) -> MPoly {
    let vars = ["n"];
    let n = MPoly::var(&vars, "n");
    if p == 0 {
        return n;
    }
    let mut acc = n.pow(p + 1).scale(&frac(1, p as i64 + 1));
    acc = &acc + &n.pow(p).scale(&frac(1, 2));
    for k in 2..=p {
        let c = falling_factorial(&rat(p as i64), k as i64 - 1).expect("nonnegative index")
            * bernoulli(k as usize)
            / factorial_rat(k as u64);
        if !c.is_zero() {
            acc = &acc + &n.pow(p - k + 1).scale(&c);
        }
    }
    acc
}

const XK: [&str; 2] = ["x", "k"];

/// Σ_{γ=lo}^{k-1+lo} g(x, γ) for lo ∈ {0, 1}, with γ occupying the k slot of g.
fn sum_over_k(g: &MPoly, from_one: bool) -> MPoly {
    let k = MPoly::var(&XK, "k");
    let upper = if from_one {
        k.clone()
    } else {
        &k - &MPoly::constant(&XK, Rat::one())
    };
    let mut acc = MPoly::zero(&XK);
    for (p, cp) in g.coefficients_in(1).into_iter().enumerate() {
        if cp.is_zero() {
            continue;
        }
        let mut s = faulhaber_power_sum(p as u32).compose(std::slice::from_ref(&upper));
        if p == 0 && !from_one {
            // γ = 0 contributes 0^0 = 1
            s = &s + &MPoly::constant(&XK, Rat::one());
        }
        acc = &acc + &(&cp * &s);
    }
    acc
}

type Memo = OnceLock<Mutex<HashMap<(bool, u32), MPoly>>>;
static TPOLYS: Memo = OnceLock::new();

fn t_generic(d: u32, tilde: bool) -> MPoly {
    let memo = TPOLYS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = memo.lock().unwrap().get(&(tilde, d)) {
        return p.clone();
    }
    let out = if d == 0 {
        MPoly::constant(&XK, Rat::one())
    } else {
        let prev = t_generic(d - 1, tilde);
        let x = MPoly::var(&XK, "x");
        let k = MPoly::var(&XK, "k");
        // the new largest index γ occupies the k slot
        let factor = if tilde { &k - &x } else { &x + &k };
        sum_over_k(&(&factor * &prev), tilde)
    };
    memo.lock().unwrap().insert((tilde, d), out.clone());
    out
}

/// T_d(x,k) = Σ_{0≤γ_1<…<γ_d<k} ∏(x+γ_i), as a polynomial in (x, k).
pub fn t_poly(d: u32) -> MPoly {
    t_generic(d, false)
}

/// T̃_d(x,k) = Σ_{1≤γ_1≤…≤γ_d≤k} ∏(-x+γ_j), as a polynomial in (x, k).
pub fn t_tilde_poly(d: u32) -> MPoly {
    t_generic(d, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    // enumerate the defining sums directly
    fn t_direct(d: usize, x: &Rat, k: i64) -> Rat {
        fn rec(d: usize, start: i64, k: i64, x: &Rat) -> Rat {
            if d == 0 {
                return Rat::one();
            }
            (start..k).map(|g| (x + rat(g)) * rec(d - 1, g + 1, k, x)).sum()
        }
        rec(d, 0, k, x)
    }

    fn t_tilde_direct(d: usize, x: &Rat, k: i64) -> Rat {
        fn rec(d: usize, start: i64, k: i64, x: &Rat) -> Rat {
            if d == 0 {
                return Rat::one();
            }
            (start..=k).map(|g| (rat(g) - x) * rec(d - 1, g, k, x)).sum()
        }
        rec(d, 1, k, x)
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), frac(-1, 2));
        assert_eq!(bernoulli(2), frac(1, 6));
        assert_eq!(bernoulli(3), rat(0));
        assert_eq!(bernoulli(4), frac(-1, 30));
        assert_eq!(bernoulli(12), frac(-691, 2730));
    }

    #[test]
    fn power_sums_match_direct_summation() {
        for p in 0..8u32 {
            let f = faulhaber_power_sum(p);
            assert_eq!(f.total_degree(), Some(p + 1));
            for n in 1..=10i64 {
                let direct: Rat = (1..=n).map(|k| rat(k).pow(p as i32)).sum();
                assert_eq!(f.eval(&[rat(n)]), direct, "p={p} n={n}");
            }
        }
        let n = MPoly::var(&["n"], "n");
        assert_eq!(
            faulhaber_power_sum(1),
            &n.pow(2).scale(&frac(1, 2)) + &n.scale(&frac(1, 2))
        );
    }

    #[test]
    fn low_order_closed_forms() {
        let x = MPoly::var(&XK, "x");
        let k = MPoly::var(&XK, "k");
        let one = MPoly::constant(&XK, rat(1));
        let t1 = (&k * &(&(&k + &x.scale(&rat(2))) - &one)).scale(&frac(1, 2));
        assert_eq!(t_poly(1), t1);
        let tt1 = (&k * &(&(&k - &x.scale(&rat(2))) + &one)).scale(&frac(1, 2));
        assert_eq!(t_tilde_poly(1), tt1);
        assert_eq!(t_poly(2).eval(&[rat(0), rat(3)]), rat(2));
        assert_eq!(t_tilde_poly(2).eval(&[rat(0), rat(2)]), rat(7));
        assert_eq!(t_poly(0), one);
    }

    #[test]
    fn polynomials_match_enumeration() {
        for d in 0..=5u32 {
            for k in 0..=6i64 {
                for x in [frac(-3, 2), rat(0), frac(1, 2), rat(2)] {
                    assert_eq!(t_poly(d).eval(&[x.clone(), rat(k)]), t_direct(d as usize, &x, k));
                    assert_eq!(
                        t_tilde_poly(d).eval(&[x.clone(), rat(k)]),
                        t_tilde_direct(d as usize, &x, k)
                    );
                }
            }
        }
    }

    #[test]
    fn recurrences_hold_symbolically() {
        let x = MPoly::var(&XK, "x");
        let k = MPoly::var(&XK, "k");
        let one = MPoly::constant(&XK, rat(1));
        let km1 = &k - &one;
        for d in 1..=6u32 {
            let t = t_poly(d);
            let lhs = &t - &t.subst(1, &km1);
            let rhs = &(&(&x + &k) - &one) * &t_poly(d - 1).subst(1, &km1);
            assert_eq!(lhs, rhs, "d={d}");

            let tt = t_tilde_poly(d);
            let lhs = &tt - &tt.subst(1, &km1);
            let base = &k - &x;
            let mut rhs = MPoly::zero(&XK);
            for i in 1..=d {
                rhs = &rhs + &(&base.pow(i) * &t_tilde_poly(d - i).subst(1, &km1));
            }
            assert_eq!(lhs, rhs, "tilde d={d}");
        }
    }
}
