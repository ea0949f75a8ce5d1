//! Exact scalars, polynomials and series, plus the Faulhaber toolkit.

pub mod factorial;
pub mod faulhaber;
pub mod hseries;
pub mod laurent;
pub mod linalg;
pub mod mpoly;
pub mod rat;
pub mod upoly;

pub use factorial::{
    falling_factorial, falling_factorial_of, falling_factorial_ratfun, rising_factorial,
    rising_factorial_of,
};
pub use faulhaber::{bernoulli, faulhaber_power_sum, t_poly, t_tilde_poly};
pub use hseries::HSeries;
pub use laurent::LSeries;
pub use mpoly::MPoly;
pub use rat::{binomial, frac, parse_rat, rat, Rat};
pub use upoly::{RatFun, RatFunK, RatFunZ, UPoly};
