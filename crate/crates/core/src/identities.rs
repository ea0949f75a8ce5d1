//! The identity suite behind `bmslab identities`: one named pass/fail record per identity.

use serde::Serialize;

use crate::aops::rpoly::{
    check_euler_identity_numeric, check_euler_identity_symbolic, check_multinomial_falling, multi_indices,
    r_tilde_value,
};
use crate::aops::{
    acheck_e_coeff, acheck_e_direct, acheck_id_coeff, acheck_id_direct, check_delta_power, q_coeffs, r_poly,
    residue_constant, residue_constant_measured, residue_relation_sides, rho, s_id_numerator, s_numerator,
};
use crate::error::Result;
use crate::exactmath::rat::{frac, rat};
use crate::exactmath::{t_poly, t_tilde_poly, MPoly, Rat, UPoly};
use crate::fockspace::windowed_conjugation_oracle;
use crate::report::CheckReport;
use crate::spectral::{basis_change_resultant, xi_from_poly};
use num_traits::Zero;

fn run(name: &str, f: impl FnOnce(&mut CheckReport) -> Result<()>) -> CheckReport {
    let mut r = CheckReport::new(name);
    if let Err(e) = f(&mut r) {
        r.expect(false, || format!("error: {e}"));
    }
    r
}

pub fn a_coefficients_three_ways() -> CheckReport {
    run("A-check coefficients: closed form, direct difference expansion and windowed matrix oracle agree", |r| {
        for m in 2..=3u32 {
            for k in 1..=4u32 {
                let order = k as i64 + 5;
                let a = windowed_conjugation_oracle(m, k, k as i64 + order, order)?;
                for q in 1..=3i64 {
                    for p in 0..=2u32 {
                        for l2 in (-5..=5).step_by(2) {
                            let l = frac(l2, 2);
                            let closed = acheck_e_coeff(m, k as i64, q, p, &l)?;
                            let direct = acheck_e_direct(m, k as i64, q, p, &l)?;
                            let window = a.diagonal_entry(q, l2).coeff(q + p as i64);
                            let at = format!("m={m} k={k} q={q} p={p} l={l}");
                            r.expect_eq(&format!("{at} direct"), &closed, &direct);
                            r.expect_eq(&format!("{at} window"), &closed, &window);
                        }
                    }
                }
                for p in -1..=2i64 {
                    r.expect_eq(&format!("identity part m={m} k={k} p={p}"), &a.identity().coeff(p), &acheck_id_coeff(m, k as i64, p)?);
                }
            }
        }
        Ok(())
    })
}

pub fn identity_coefficients_closed_form() -> CheckReport {
    run("A-check identity coefficients: closed form equals direct expansion", |r| {
        for m in 2..=3u32 {
            for k in 1..=6i64 {
                for p in -1..=3i64 {
                    r.expect_eq(&format!("m={m} k={k} p={p}"), &acheck_id_coeff(m, k, p)?, &acheck_id_direct(m, k, p)?);
                }
            }
        }
        Ok(())
    })
}

pub fn difference_powers() -> CheckReport {
    run("powers of the l-difference operator on P_k", |r| {
        for k in 0..=5 {
            for t in 0..=k + 2 {
                let ok = check_delta_power(t, k);
                r.expect(ok.is_ok(), || format!("t={t} k={k}: {ok:?}"));
            }
        }
        Ok(())
    })
}

pub fn r_polynomial_shape() -> CheckReport {
    run("R_p has total degree 2p and its Q-expansion constant term is divisible by k", |r| {
        for m in 1..=3u32 {
            for p in 1..=3u32 {
                let rp = r_poly(p, m);
                r.expect(rp.total_degree() == Some(2 * p), || format!("deg R_{p} (m={m}) = {:?}", rp.total_degree()));
                let q = q_coeffs(p, m)?;
                let zero = vec![0; m as usize];
                if let Some(c) = q.get(&zero) {
                    let (_, rem) = c.div_linear(0, &Rat::zero());
                    r.expect(rem.is_zero(), || format!("Q^{p}_0 (m={m}) not divisible by k"));
                }
            }
        }
        Ok(())
    })
}

pub fn multinomial_falling_factorials() -> CheckReport {
    run("multinomial identity for falling factorials", |r| {
        let cases: Vec<(Vec<Rat>, u32)> = vec![
            (vec![rat(3), frac(1, 2), rat(-2)], 4),
            (vec![rat(5), rat(2)], 6),
            (vec![frac(-7, 3), rat(4), rat(1), frac(2, 5)], 5),
        ];
        for (ks, t) in cases {
            let ok = check_multinomial_falling(&ks, t);
            r.expect(ok.is_ok(), || format!("{ks:?}, t={t}"));
        }
        Ok(())
    })
}

pub fn s_numerator_degrees() -> CheckReport {
    run("S numerator has degree at most 6p+q in k", |r| {
        for m in 2..=3u32 {
            for p in 0..=2u32 {
                for q in 1..=2i64 {
                    let s = s_numerator(m, p, q)?;
                    let deg = s.degree_in(0).unwrap_or(0) as i64;
                    let bound = 6 * p as i64 + q;
                    r.expect(deg <= bound, || format!("m={m} p={p} q={q}: degree {deg} > {bound}"));
                }
            }
        }
        Ok(())
    })
}

pub fn s_numerator_degree_at_p0() -> CheckReport {
    run("S numerator at p = 0 has degree m+q-2 in k", |r| {
        for m in 2..=4u32 {
            for q in 1..=3i64 {
                let s = s_numerator(m, 0, q)?;
                let deg = s.degree_in(0).unwrap_or(0) as i64;
                r.expect_eq(&format!("m={m} q={q}"), &deg, &(m as i64 + q - 2));
            }
        }
        Ok(())
    })
}

pub fn s_id_divisibility() -> CheckReport {
    run("identity numerator divisible by k^2 and by mk-k+1", |r| {
        for m in 2..=4u32 {
            for p in 0..=3u32 {
                let ok = s_id_numerator(m, p);
                r.expect(ok.is_ok(), || format!("m={m} p={p}: {:?}", ok.err()));
            }
        }
        Ok(())
    })
}

pub fn euler_operator() -> CheckReport {
    run("Euler operator applied to R at i = k gives binom(m,2) k^2 hbar", |r| {
        for m in 1..=5u32 {
            for k in 1..=6 {
                let ok = check_euler_identity_numeric(m, k);
                r.expect(ok.is_ok(), || format!("m={m} k={k}: {ok:?}"));
            }
            let ok = check_euler_identity_symbolic(m, if m <= 3 { 3 } else { 2 });
            r.expect(ok.is_ok(), || format!("symbolic m={m}: {ok:?}"));
        }
        Ok(())
    })
}

pub fn rho_special_values() -> CheckReport {
    run("rho_p equals delta_{p,0} at k = 0 and k = 1/(1-m)", |r| {
        for m in 2..=4u32 {
            for p in 0..=3u32 {
                let f = rho(p, m)?;
                let want = if p == 0 { rat(1) } else { rat(0) };
                r.expect_eq(&format!("m={m} p={p} k=0"), &f.eval(&rat(0))?, &want);
                r.expect_eq(&format!("m={m} p={p} k=1/(1-m)"), &f.eval(&frac(1, 1 - m as i64))?, &want);
            }
        }
        Ok(())
    })
}

pub fn r_tilde_reflection() -> CheckReport {
    run("R-tilde_p(k, l, i) equals R_p(-k, l, i)", |r| {
        for m in 1..=3u32 {
            for p in 0..=2u32 {
                let rp = r_poly(p, m);
                for k in 1..=3i64 {
                    for is in multi_indices(2, m) {
                        let is: Vec<i64> = is.iter().map(|&x| x as i64).collect();
                        let l = frac(-3, 2);
                        let mut pt = vec![rat(-k), l.clone()];
                        pt.extend(is.iter().map(|&x| rat(x)));
                        r.expect_eq(&format!("m={m} p={p} k={k} i={is:?}"), &r_tilde_value(p, k, &l, &is)?, &rp.eval(&pt));
                    }
                }
            }
        }
        Ok(())
    })
}

fn residue_relation(name: &str, c: fn(u32, i64) -> Rat) -> CheckReport {
    run(name, |r| {
        for m in 2..=3u32 {
            for q in 1..=4i64 {
                for rr in 1..=3i64 {
                    for p in 0..=1u32 {
                        for l in [frac(-1, 2), frac(3, 2)] {
                            let (res, dag) = residue_relation_sides(m, rr, q, p, &l)?;
                            r.expect_eq(&format!("m={m} r={rr} q={q} p={p} l={l}"), &res, &(c(m, rr) * dag));
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

pub fn residue_relation_stated_constant() -> CheckReport {
    residue_relation("residue at k = -r equals c(r) times the A-dagger coefficient, c(r) as stated", residue_constant)
}

pub fn residue_relation_measured_constant() -> CheckReport {
    residue_relation(
        "residue at k = -r equals -r c(r) times the A-dagger coefficient",
        residue_constant_measured,
    )
}

/// Deterministic test polynomial of degree deg.
fn sample_poly(seed: u32, deg: usize) -> UPoly {
    let c = (0..=deg as i64)
        .map(|i| {
            let s = seed as i64;
            frac((i * 7 + s * 3) % 19 - 9, 1 + (i + s) % 5)
        })
        .collect();
    UPoly::from_coeffs(c)
}

pub fn xi_space_solve() -> CheckReport {
    run("every polynomial below the degree bound has a unique Xi^d representative", |r| {
        for m in 2..=3u32 {
            for d in 0..=2u32 {
                let dim = (m * (d + 1)) as usize;
                for seed in 0..dim as u32 {
                    let p = sample_poly(seed, seed as usize);
                    let ok = xi_from_poly(m, d, &p);
                    r.expect(ok.is_ok(), || format!("m={m} d={d} P={p}: {:?}", ok.err()));
                }
                let res = basis_change_resultant(m, d);
                r.expect(!res.is_zero(), || format!("m={m} d={d}: basis-change cofactors share a root"));
            }
        }
        Ok(())
    })
}

fn xk_reflect(p: &MPoly) -> MPoly {
    let x = MPoly::var(&["x", "k"], "x");
    let k = MPoly::var(&["x", "k"], "k");
    p.compose(&[x, k.scale(&rat(-1))])
}

pub fn faulhaber_degree() -> CheckReport {
    run("T_d is a polynomial of total degree 2d", |r| {
        for d in 0..=8u32 {
            r.expect_eq(&format!("d={d}"), &t_poly(d).total_degree().unwrap_or(0), &(2 * d));
        }
        Ok(())
    })
}

pub fn faulhaber_reflection() -> CheckReport {
    run("T-tilde_d(x, k) equals T_d(x, -k)", |r| {
        for d in 0..=8u32 {
            r.expect(t_tilde_poly(d) == xk_reflect(&t_poly(d)), || format!("d={d}"));
        }
        Ok(())
    })
}

pub fn faulhaber_divisibility() -> CheckReport {
    run("T_d is divisible by k", |r| {
        for d in 1..=8u32 {
            let (_, rem) = t_poly(d).div_linear(1, &Rat::zero());
            r.expect(rem.is_zero(), || format!("d={d}"));
        }
        Ok(())
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityEntry {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub all_passed: bool,
    pub identities: Vec<IdentityEntry>,
}

pub fn run_all() -> IdentityReport {
    let checks: Vec<fn() -> CheckReport> = vec![
        a_coefficients_three_ways,
        identity_coefficients_closed_form,
        difference_powers,
        r_polynomial_shape,
        multinomial_falling_factorials,
        s_numerator_degrees,
        s_numerator_degree_at_p0,
        s_id_divisibility,
        euler_operator,
        rho_special_values,
        r_tilde_reflection,
        residue_relation_stated_constant,
        residue_relation_measured_constant,
        xi_space_solve,
        faulhaber_degree,
        faulhaber_reflection,
        faulhaber_divisibility,
    ];
    let identities: Vec<IdentityEntry> = checks
        .into_iter()
        .map(|f| {
            let c = f();
            IdentityEntry { passed: c.passed(), name: c.name, checked: c.checked, failures: c.failures }
        })
        .collect();
    IdentityReport { all_passed: identities.iter().all(|e| e.passed), identities }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faulhaber_identities_hold() {
        for c in [faulhaber_degree(), faulhaber_reflection(), faulhaber_divisibility()] {
            assert!(c.passed(), "{}: {:?}", c.name, c.failures);
            assert!(c.checked > 0);
        }
    }

    #[test]
    fn stated_residue_constant_is_refuted() {
        let c = residue_relation_stated_constant();
        assert!(!c.passed());
        assert!(residue_relation_measured_constant().passed());
    }
}
