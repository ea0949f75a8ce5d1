//! The spectral curve x = (1+z)^m/z: z(X), ξ-functions, Ξ^d, W_{g,n} and the unstable expansions.

pub mod unstable;
pub mod w;
pub mod xi;
pub mod xseries;

pub use unstable::{omega01_check, omega02_check};
pub use w::{choose_d, w_assemble, w_check, WTensor};
pub use xi::{
    basis_change_resultant, inversion_defect, prescribed_coeff, xi_coeff, xi_from_poly, xi_series, z_coeff, z_series,
    XiElement,
};
pub use xseries::XSeries;
