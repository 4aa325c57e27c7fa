use serde::Serialize;

use super::audit::{self, AuditResult, AxisBox, Owner};
use super::{emin, require, ClosedFormError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cuboid {
    pub corner: [f64; 3],
    pub extent: [f64; 3],
}

impl Cuboid {
    pub fn volume(&self) -> f64 {
        self.extent.iter().product()
    }

    fn as_box(&self) -> AxisBox<3> {
        let mut hi = self.corner;
        for (h, e) in hi.iter_mut().zip(self.extent) {
            *h += e;
        }
        AxisBox { lo: self.corner, hi }
    }
}

/// Two cuboids glued along a full face of area `shared_face`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CuboidPair {
    pub a: Cuboid,
    pub b: Cuboid,
    pub shared_face: f64,
}

impl CuboidPair {
    /// Energy recomputed from the face geometry.
    pub fn audit(&self) -> AuditResult {
        audit::audit(&[(self.a.as_box(), Owner::A), (self.b.as_box(), Owner::B)])
    }
}

/// The optimal pair for `V_B / V_A ∈ [1/2, 2]`: cuboids of square cross
/// section `(2(V_A+V_B)/3)^(1/3)` meeting in the plane `x = 0`.
pub fn theorem_minimizer(va: f64, vb: f64) -> Result<CuboidPair, ClosedFormError> {
    require("V_A", va, va > 0.0, "a positive volume")?;
    require("V_B", vb, vb > 0.0, "a positive volume")?;
    let ratio = vb / va;
    if !(0.5..=2.0).contains(&ratio) {
        return Err(ClosedFormError::RatioOutOfRange { ratio });
    }
    let m = emin(va, vb)?.face_area;
    let side = m.sqrt();
    let a = Cuboid { corner: [-va / m, 0.0, 0.0], extent: [va / m, side, side] };
    let b = Cuboid { corner: [0.0, 0.0, 0.0], extent: [vb / m, side, side] };
    Ok(CuboidPair { a, b, shared_face: m })
}
