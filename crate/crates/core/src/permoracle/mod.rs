//! BMS numbers straight from the permutation-tuple definition, and the genus-zero closed forms.

pub mod bruteforce;
pub mod formulas;
pub mod partition;

pub use bruteforce::{
    bms_connected_bruteforce, bms_disconnected_bruteforce, riemann_hurwitz_l, EnumBudget,
};
pub use formulas::{genus0_formula, unstable_onepoint, unstable_twopoint};
pub use partition::{aut_order, partitions_in_box, partitions_of, Partition};
