//! Exact computation of BMS numbers by several independent routes, with the
//! A-operator calculus, quasi-polynomial fitting, ξ-function data on the
//! spectral curve and an m = 2 topological recursion check.

pub mod aops;
pub mod error;
pub mod exactmath;
pub mod fockspace;
pub mod identities;
pub mod permoracle;
pub mod quasipoly;
pub mod report;
pub mod spectral;
pub mod toporec;

pub use error::{Error, Result};
pub use exactmath::{HSeries, MPoly, Rat, RatFun, UPoly};
pub use permoracle::Partition;
