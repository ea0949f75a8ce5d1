//! Fraction-free Gaussian elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rat::{lcm_of_denominators, Rat};
use crate::error::{Error, Result};

/// Clears denominators row by row; returns the integer augmented matrix.
fn integer_rows(a: &[Vec<Rat>], b: &[Rat]) -> Vec<Vec<BigInt>> {
    a.iter()
        .zip(b)
        .map(|(row, rhs)| {
            let l = lcm_of_denominators(row.iter().chain(std::iter::once(rhs)));
            row.iter()
                .chain(std::iter::once(rhs))
                .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Solves the square system a·x = b exactly (Bareiss elimination over the integers).
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Result<Vec<Rat>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition("solve: system must be square".into()));
    }
    let mut m = integer_rows(a, b);
    let mut prev = BigInt::one();
    for k in 0..n {
        let piv = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {k} of {n}")))?;
        m.swap(k, piv);
        for i in (k + 1)..n {
            for j in (k + 1)..=n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut s = Rat::from_integer(m[i][n].clone());
        for j in (i + 1)..n {
            s -= Rat::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = s / Rat::from_integer(m[i][i].clone());
    }
    Ok(x)
}

/// Determinant of a square rational matrix.
pub fn determinant(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    if n == 0 {
        return Rat::one();
    }
    let zeros = vec![Rat::zero(); n];
    let mut scale = Rat::one();
    for row in a {
        scale *= Rat::from_integer(lcm_of_denominators(row.iter()));
    }
    let mut m = integer_rows(a, &zeros);
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rat::zero();
        };
        if piv != k {
            m.swap(k, piv);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Rat::from_integer(sign * &m[n - 1][n - 1]) / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::{frac, rat};

    #[test]
    fn solves_small_system() {
        let a = vec![
            vec![rat(0), rat(2), frac(1, 2)],
            vec![rat(1), rat(1), rat(1)],
            vec![rat(3), rat(0), rat(-1)],
        ];
        let x = vec![frac(1, 3), rat(-2), rat(5)];
        let b: Vec<Rat> = a
            .iter()
            .map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum())
            .collect();
        assert_eq!(solve(&a, &b).unwrap(), x);
        assert_eq!(determinant(&a), frac(13, 2));
    }

    #[test]
    fn singular_is_reported() {
        let a = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert!(matches!(solve(&a, &[rat(1), rat(1)]), Err(Error::Singular(_))));
        assert_eq!(determinant(&a), rat(0));
    }
}
