//! The exact rational scalar and a few integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Parses "p/q" or "p".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("{s}: zero denominator")));
        }
        Ok(Rat::new(p, q))
    } else {
        let p = BigInt::from_str(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        Ok(Rat::from_integer(p))
    }
}

/// "p/q", or "p" when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Returns the value as i64 when it is an integer that fits.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    i64::try_from(r.numer()).ok()
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

pub fn factorial_rat(n: u64) -> Rat {
    Rat::from_integer(factorial(n))
}

/// Generalized binomial coefficient: (n)_k / k! for k ≥ 0, zero for k < 0.
pub fn binomial(n: i64, k: i64) -> Rat {
    if k < 0 {
        return Rat::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
    }
    Rat::new(num, factorial(k as u64))
}

pub fn lcm_of_denominators<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> BigInt {
    let mut l = BigInt::one();
    for r in it {
        l = l.lcm(r.denom());
    }
    l
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

/// Serde helpers storing a rational as its "p/q" string.
pub mod serde_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "5", "-3/4", "1/20"] {
            assert_eq!(rat_to_string(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(rat_to_string(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), rat(10));
        assert_eq!(binomial(-2, 3), rat(-4));
        assert_eq!(binomial(3, -1), rat(0));
        assert_eq!(binomial(0, 0), rat(1));
    }
}
