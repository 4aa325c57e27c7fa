//! Closed-form planar and three-dimensional minimal energies.
//!
//! Everything here is double precision; the formulas are well conditioned at
//! desk scale and identity checks hold to 1e-12.

pub mod audit;
mod cuboid;
mod planar;

use thiserror::Error;

pub use cuboid::{theorem_minimizer, Cuboid, CuboidPair};
pub use planar::{planar_minimizer, PlanarMinimizer, PlanarRegime, Rect};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("{name} must be {requirement}, got {value}")]
    InvalidArgument { name: &'static str, requirement: &'static str, value: f64 },
    #[error("volume ratio V_B/V_A = {ratio} lies outside [1/2, 2]; the cuboid pair is only known to be optimal there")]
    RatioOutOfRange { ratio: f64 },
}

fn require(name: &'static str, value: f64, ok: bool, requirement: &'static str) -> Result<f64, ClosedFormError> {
    if ok && value.is_finite() {
        Ok(value)
    } else {
        Err(ClosedFormError::InvalidArgument { name, requirement, value })
    }
}

/// Double-precision value of the planar regime threshold; pinned against
/// [`r_star`] in the tests.
pub(crate) const R_STAR: f64 = 0.187_295_715_528_864_87;

/// Planar regime threshold `(4(√2 − 1)/(1 + 2√2))²` between the nested-square
/// and side-square minimizers.
pub fn r_star() -> f64 {
    let s = 2f64.sqrt();
    let q = 4.0 * (s - 1.0) / (1.0 + 2.0 * s);
    q * q
}

/// Normalized planar minimal energy: `E_2D(a, b) = √(a + b) · f(b / a)`.
pub fn f(x: f64) -> Result<f64, ClosedFormError> {
    require("x", x, x >= 0.0, "a finite nonnegative number")?;
    Ok(f_unchecked(x))
}

#[inline]
pub(crate) fn f_unchecked(x: f64) -> f64 {
    let x = if x > 1.0 { 1.0 / x } else { x };
    if x <= R_STAR {
        4.0 + 2.0 * (x / (x + 1.0)).sqrt()
    } else if x <= 0.5 {
        (4.0 + 2.0 * (2.0 * x).sqrt()) / (x + 1.0).sqrt()
    } else {
        2.0 * 6f64.sqrt()
    }
}

fn check_areas(a: f64, b: f64) -> Result<(), ClosedFormError> {
    require("a", a, a >= 0.0, "a finite nonnegative area")?;
    require("b", b, b >= 0.0, "a finite nonnegative area")?;
    require("a + b", a + b, a + b > 0.0, "positive")?;
    Ok(())
}

/// Minimal planar double-bubble energy for areas `a`, `b`, via `f`.
pub fn planar_energy(a: f64, b: f64) -> Result<f64, ClosedFormError> {
    check_areas(a, b)?;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    Ok((a + b).sqrt() * f_unchecked(lo / hi))
}

/// The same energy evaluated from the regime-specific formulas
/// (rectangles, side square, nested squares).
pub fn planar_energy_by_cases(a: f64, b: f64) -> Result<f64, ClosedFormError> {
    check_areas(a, b)?;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    Ok(match PlanarRegime::classify(lo / hi) {
        PlanarRegime::Rectangles => 2.0 * 6f64.sqrt() * (lo + hi).sqrt(),
        PlanarRegime::SideSquare => 2.0 * (2.0 * lo).sqrt() + 4.0 * hi.sqrt(),
        PlanarRegime::NestedSquares => 4.0 * (lo + hi).sqrt() + 2.0 * lo.sqrt(),
    })
}

/// Optimal shared-face area and energy of the cuboid-pair family.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Emin {
    /// Optimal shared square face area `M*`.
    pub face_area: f64,
    pub energy: f64,
}

/// `min over M > 0 of 3M + 4(V_A + V_B)/√M`, attained at
/// `M* = (2(V_A + V_B)/3)^(2/3)`.
pub fn emin(va: f64, vb: f64) -> Result<Emin, ClosedFormError> {
    require("V_A", va, va > 0.0, "a positive volume")?;
    require("V_B", vb, vb > 0.0, "a positive volume")?;
    let v = va + vb;
    let m = (2.0 * v / 3.0).powf(2.0 / 3.0);
    Ok(Emin { face_area: m, energy: cuboid_family_energy(m, v) })
}

/// Energy of two cuboids sharing a square face of area `m` with total volume
/// `v`: three squares of area `m` plus four rectangles `√m × v/m`.
pub fn cuboid_family_energy(m: f64, v: f64) -> f64 {
    3.0 * m + 4.0 * v / m.sqrt()
}

/// `(3(2/3)^(2/3) + 4(3/2)^(1/3)) (V_A + V_B)^(2/3)`.
pub fn emin_closed_form(va: f64, vb: f64) -> Result<f64, ClosedFormError> {
    require("V_A", va, va > 0.0, "a positive volume")?;
    require("V_B", vb, vb > 0.0, "a positive volume")?;
    let k = 3.0 * (2.0f64 / 3.0).powf(2.0 / 3.0) + 4.0 * 1.5f64.cbrt();
    Ok(k * (va + vb).powf(2.0 / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    #[test]
    fn threshold_constant_matches_formula() {
        assert!((r_star() - 0.1872957155).abs() < 1e-9);
        assert!((r_star() - R_STAR).abs() < 1e-16);
    }

    #[test]
    fn branches_meet_at_threshold() {
        let r = r_star();
        let lower = 4.0 + 2.0 * (r / (1.0 + r)).sqrt();
        let upper = (4.0 + 2.0 * (2.0 * r).sqrt()) / (1.0 + r).sqrt();
        assert!((lower - upper).abs() < EPS);
        let expected = 20.0 / 41.0 * (7.0 + 2.0 * 2f64.sqrt());
        assert!((f(r).unwrap() - expected).abs() < EPS);
    }

    #[test]
    fn f_anchor_values() {
        let two_sqrt6 = 2.0 * 6f64.sqrt();
        assert_eq!(f(0.0).unwrap(), 4.0);
        assert!((f(1.0).unwrap() - two_sqrt6).abs() < EPS);
        assert!((f(2.0).unwrap() - two_sqrt6).abs() < EPS);
        assert!((f(0.5).unwrap() - two_sqrt6).abs() < EPS);
        assert!(f(-1.0).is_err());
        assert!(f(f64::NAN).is_err());
        assert!(f(f64::INFINITY).is_err());
    }

    #[test]
    fn planar_anchor_cases() {
        assert!((planar_energy(2.0, 4.0).unwrap() - 12.0).abs() < EPS);
        assert!((planar_energy(1.0, 8.0).unwrap() - 14.0).abs() < EPS);
        assert!((planar_energy(4.0, 1.0).unwrap() - (2.0 * 2f64.sqrt() + 8.0)).abs() < EPS);
        assert!(planar_energy(0.0, 0.0).is_err());
        assert_eq!(planar_energy(0.0, 4.0).unwrap(), 8.0);
    }

    #[test]
    fn emin_examples() {
        let e = emin(6.0, 6.0).unwrap();
        assert!((e.face_area - 4.0).abs() < EPS);
        assert!((e.energy - 36.0).abs() < EPS);
        let e1 = emin(1.0, 1.0).unwrap();
        assert!((e1.energy - 10.902_723_556_992_838).abs() < 1e-12);
        assert!((e1.energy - emin_closed_form(1.0, 1.0).unwrap()).abs() < EPS);
        assert!(emin(0.0, 1.0).is_err());
    }
}
