//! The m = 2 spectral curve and its initial data.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::rat::rat;
use crate::exactmath::{Rat, RatFunZ, UPoly};

#[derive(Clone, Debug)]
pub struct CurveData {
    /// x(z) = (1+z)²/z
    pub x: RatFunZ,
    /// dx/dz
    pub dx: RatFunZ,
    /// zeros of dx, sorted
    pub critical_points: Vec<Rat>,
    /// ω_{0,1}/dz
    pub omega01: RatFunZ,
    /// (ω_{0,1}(σζ) − ω_{0,1}(ζ))/dζ with σζ = 1/ζ
    pub delta: RatFunZ,
}

fn z_power(e: usize) -> UPoly {
    UPoly::monomial(Rat::one(), e)
}

/// r(1/z)·(−1/z²): the pullback of r(z)dz under σ, divided by dz.
pub(crate) fn pullback_sigma(r: &RatFunZ) -> RatFunZ {
    let jac = RatFunZ::new(UPoly::constant(rat(-1)), z_power(2)).expect("nonzero");
    r.at_reciprocal().mul(&jac)
}

pub fn curve_data_m2() -> Result<CurveData> {
    let one_plus_z = UPoly::linear_root(&rat(-1));
    let x = RatFunZ::new(one_plus_z.pow(2), z_power(1))?;
    if !x.sub(&x.at_reciprocal()).is_zero() {
        return Err(Error::Mismatch("x(z) − x(1/z) is not identically zero".into()));
    }
    // (N/D)' = (N'D − ND')/D²
    let (n, d) = (x.num(), x.den());
    let dx = RatFunZ::new(&(&n.derivative() * d) - &(n * &d.derivative()), d * d)?;
    let mut critical_points = Vec::new();
    for a in [rat(-1), rat(1)] {
        if dx.num().eval(&a).is_zero() {
            critical_points.push(a);
        }
    }
    if critical_points.len() != dx.num().degree().unwrap_or(0) {
        return Err(Error::Mismatch("dx has zeros away from ±1".into()));
    }
    let y = RatFunZ::new(UPoly::constant(rat(-1)) * z_power(2), one_plus_z.pow(2))?;
    let omega01 = y.mul(&dx);
    let delta = pullback_sigma(&omega01).sub(&omega01);
    Ok(CurveData { x, dx, critical_points, omega01, delta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_data() {
        let c = curve_data_m2().unwrap();
        assert_eq!(c.critical_points, vec![rat(-1), rat(1)]);
        // ω_{0,1}/dz = (1 − z)/(1 + z)
        let expect = RatFunZ::new(UPoly::linear_root(&rat(1)).scale(&rat(-1)), UPoly::linear_root(&rat(-1))).unwrap();
        assert_eq!(c.omega01, expect);
        // Δ = (ζ − 1)²/ζ², regular and nonzero at ζ = −1
        let delta = RatFunZ::new(UPoly::linear_root(&rat(1)).pow(2), z_power(2)).unwrap();
        assert_eq!(c.delta, delta);
    }
}
