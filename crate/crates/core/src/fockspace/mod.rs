//! Fock-space evaluation of the vacuum expectations behind the BMS numbers.

pub mod characters;
pub mod operators;
pub mod vev;

pub use characters::{character, content_product, contents, hook_dimension};
pub use operators::{
    apply_basis_element, check_commutation_relations, check_difference_lemma,
    windowed_conjugation_oracle, FockVector, WindowedOperator,
};
pub use vev::{bms_fock, connected_correlator, disconnected_vev, CHARACTER_BUDGET};
