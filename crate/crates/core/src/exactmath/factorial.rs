//! Falling and rising factorials, numeric and symbolic.

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::rat::{rat, Rat};
use super::upoly::{RatFun, UPoly};
use crate::error::{Error, Result};

/// (a)_b: a(a-1)…(a-b+1) for b > 0, 1/((a+1)(a+2)…(a-b)) for b < 0, 1 for b = 0.
pub fn falling_factorial(a: &Rat, b: i64) -> Result<Rat> {
    let mut acc = Rat::one();
    if b >= 0 {
        for i in 0..b {
            acc *= a - rat(i);
        }
        return Ok(acc);
    }
    for i in 1..=(-b) {
        let f = a + rat(i);
        if f.is_zero() {
            return Err(Error::DivisionByZero(format!("({a} + {i}) in ({a})_{{{b}}}")));
        }
        acc *= f;
    }
    Ok(Rat::one() / acc)
}

/// k(k+1)…(k+t-1).
pub fn rising_factorial(k: &Rat, t: u64) -> Rat {
    let mut acc = Rat::one();
    for i in 0..t as i64 {
        acc *= k + rat(i);
    }
    acc
}

/// a(a-1)…(a-b+1) for a polynomial argument.
pub fn falling_factorial_of(a: &MPoly, b: u32) -> MPoly {
    let mut acc = a.constant_like(Rat::one());
    for i in 0..b {
        acc = &acc * &(a - &a.constant_like(rat(i as i64)));
    }
    acc
}

/// a(a+1)…(a+t-1) for a polynomial argument.
pub fn rising_factorial_of(a: &MPoly, t: u32) -> MPoly {
    let mut acc = a.constant_like(Rat::one());
    for i in 0..t {
        acc = &acc * &(a + &a.constant_like(rat(i as i64)));
    }
    acc
}

/// (a)_b as a rational function of a; a genuine quotient when b < 0.
pub fn falling_factorial_ratfun(b: i64) -> RatFun {
    if b >= 0 {
        let roots: Vec<Rat> = (0..b).map(rat).collect();
        return RatFun::from_poly(UPoly::from_roots(&roots));
    }
    let roots: Vec<Rat> = (1..=(-b)).map(|i| rat(-i)).collect();
    RatFun::new(UPoly::one(), UPoly::from_roots(&roots)).expect("nonzero denominator")
}

/// k(k+1)…(k+t-1) as a polynomial in k.
pub fn rising_factorial_upoly(t: u64) -> UPoly {
    let roots: Vec<Rat> = (0..t as i64).map(|i| rat(-i)).collect();
    UPoly::from_roots(&roots)
}

/// (c·k + d)(c·k + d - 1)…: the falling factorial of a linear form in k, as a polynomial in k.
pub fn falling_factorial_linear(c: &Rat, d: &Rat, b: u64) -> UPoly {
    let mut acc = UPoly::one();
    for i in 0..b as i64 {
        acc = &acc * &UPoly::from_coeffs(vec![d - rat(i), c.clone()]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::frac;

    #[test]
    fn three_cases() {
        assert_eq!(falling_factorial(&rat(7), 0).unwrap(), rat(1));
        assert_eq!(falling_factorial(&rat(5), 2).unwrap(), rat(20));
        assert_eq!(falling_factorial(&rat(3), -2).unwrap(), frac(1, 20));
        let err = falling_factorial(&rat(-2), -3).unwrap_err();
        assert!(matches!(err, Error::DivisionByZero(_)));
    }

    #[test]
    fn rising() {
        assert_eq!(rising_factorial(&rat(2), 3), rat(24));
        assert_eq!(rising_factorial(&rat(9), 0), rat(1));
        let k = MPoly::var(&["k"], "k");
        let r = rising_factorial_of(&k, 2);
        assert_eq!(r, &(&k * &k) + &k);
    }

    #[test]
    fn symbolic_negative_index_is_rational() {
        let f = falling_factorial_ratfun(-2);
        assert_eq!(f.eval(&rat(3)).unwrap(), frac(1, 20));
        assert!(f.eval(&rat(-1)).is_err());
        assert_eq!(falling_factorial_ratfun(3).eval(&rat(5)).unwrap(), rat(60));
    }
}
