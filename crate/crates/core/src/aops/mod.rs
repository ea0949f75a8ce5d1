//! The Ǎ-operator calculus: P_k, R_p, Q^p, closed coefficient formulas, numerators, ρ_p, Ǎ†.

pub mod coeffs;
pub mod numerators;
pub mod ppoly;
pub mod rpoly;
pub mod table;

pub use coeffs::{
    a_prefactor, acheck_e_coeff, acheck_e_direct, acheck_id_coeff, acheck_id_direct, adagger_e_coeff,
    adagger_e_direct, residue_constant, residue_constant_measured,
};
pub use numerators::{
    residue_relation_check, residue_relation_check_measured, residue_relation_sides, rho, s_id_numerator, s_numerator, s_numerator_at,
};
pub use ppoly::{check_delta_power, p_poly};
pub use rpoly::{q_coeffs, r_poly, r_value};
pub use table::ACoeffTable;
