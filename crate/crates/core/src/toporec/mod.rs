//! Topological recursion for m = 2 on x = (1+z)²/z, producing ω_{g,n} as exact
//! multi-differentials and comparing their X-expansions with BMS numbers.

mod curve;
mod expand;
mod local;
mod recursion;

pub use curve::{curve_data_m2, CurveData};
pub use expand::{expand_and_compare, TrComparison, TrRow};
pub use local::{Key, Slot};
pub use recursion::{MultiDiff, Recursion, DEFAULT_BUDGET};
