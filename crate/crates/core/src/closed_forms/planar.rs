use serde::Serialize;

use super::audit::{self, AuditResult, AxisBox, Owner};
use super::{planar_energy, require, ClosedFormError, R_STAR};

/// Shape family of the planar minimizer, selected by `x = min(a,b)/max(a,b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PlanarRegime {
    /// Two rectangles of common height sharing a full side; `x ∈ [1/2, 1]`.
    Rectangles,
    /// A strip against one side of a square; `x ∈ [r*, 1/2)`.
    SideSquare,
    /// A small square in the corner of a larger square; `x ∈ (0, r*)`.
    NestedSquares,
}

impl PlanarRegime {
    /// At the regime boundaries both neighbouring constructions are optimal;
    /// ties go to the regime listed first (`Rectangles` at 1/2, `SideSquare`
    /// at r*).
    pub fn classify(x: f64) -> PlanarRegime {
        if x >= 0.5 {
            PlanarRegime::Rectangles
        } else if x >= R_STAR {
            PlanarRegime::SideSquare
        } else {
            PlanarRegime::NestedSquares
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Rect {
        Rect { x0, y0, x1, y1 }
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }

    fn as_box(&self) -> AxisBox<2> {
        AxisBox { lo: [self.x0, self.y0], hi: [self.x1, self.y1] }
    }
}

/// An explicit planar minimizer. Each region is a union of disjoint
/// rectangles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanarMinimizer {
    pub regime: PlanarRegime,
    pub a: Vec<Rect>,
    pub b: Vec<Rect>,
    /// Admissible vertical offsets of the strip in the side-square regime;
    /// the emitted rectangles use the lower end.
    pub lambda_interval: Option<[f64; 2]>,
    pub energy: f64,
}

impl PlanarMinimizer {
    pub fn area_a(&self) -> f64 {
        self.a.iter().map(Rect::area).sum()
    }

    pub fn area_b(&self) -> f64 {
        self.b.iter().map(Rect::area).sum()
    }

    /// Re-evaluates the energy from the rectangle geometry alone.
    pub fn audit(&self) -> AuditResult {
        let boxes: Vec<_> = self
            .a
            .iter()
            .map(|r| (r.as_box(), Owner::A))
            .chain(self.b.iter().map(|r| (r.as_box(), Owner::B)))
            .collect();
        audit::audit(&boxes)
    }
}

pub fn planar_minimizer(a: f64, b: f64) -> Result<PlanarMinimizer, ClosedFormError> {
    require("a", a, a > 0.0, "a positive area")?;
    require("b", b, b > 0.0, "a positive area")?;
    let (small, large) = if a <= b { (a, b) } else { (b, a) };
    let regime = PlanarRegime::classify(small / large);
    let mut lambda_interval = None;
    let (s_region, l_region) = match regime {
        PlanarRegime::Rectangles => {
            let c = (2.0 * (small + large) / 3.0).sqrt();
            (vec![Rect::new(-small / c, 0.0, 0.0, c)], vec![Rect::new(0.0, 0.0, large / c, c)])
        }
        PlanarRegime::SideSquare => {
            let c = (2.0 * small).sqrt();
            let side = large.sqrt();
            lambda_interval = Some([0.0, side - c]);
            (vec![Rect::new(-small / c, 0.0, 0.0, c)], vec![Rect::new(0.0, 0.0, side, side)])
        }
        PlanarRegime::NestedSquares => {
            let inner = small.sqrt();
            let outer = (small + large).sqrt();
            (
                vec![Rect::new(0.0, 0.0, inner, inner)],
                vec![Rect::new(inner, 0.0, outer, outer), Rect::new(0.0, inner, inner, outer)],
            )
        }
    };
    let (ra, rb) = if a <= b { (s_region, l_region) } else { (l_region, s_region) };
    Ok(PlanarMinimizer { regime, a: ra, b: rb, lambda_interval, energy: planar_energy(a, b)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    fn close(x: f64, y: f64) -> bool {
        (x - y).abs() < EPS
    }

    #[test]
    fn rectangles_case() {
        let m = planar_minimizer(2.0, 4.0).unwrap();
        assert_eq!(m.regime, PlanarRegime::Rectangles);
        let (ra, rb) = (m.a[0], m.b[0]);
        assert!(close(ra.x0, -1.0) && close(ra.x1, 0.0) && close(ra.y1, 2.0));
        assert!(close(rb.x1, 2.0) && close(rb.y1, 2.0));
        assert!(close(m.audit().energy, 12.0));
    }

    #[test]
    fn nested_case() {
        let m = planar_minimizer(1.0, 8.0).unwrap();
        assert_eq!(m.regime, PlanarRegime::NestedSquares);
        assert_eq!(m.a, vec![Rect::new(0.0, 0.0, 1.0, 1.0)]);
        assert!(close(m.area_b(), 8.0));
        assert!(close(m.audit().energy, 14.0));
    }

    #[test]
    fn side_square_case() {
        let m = planar_minimizer(1.0, 4.0).unwrap();
        assert_eq!(m.regime, PlanarRegime::SideSquare);
        let strip = m.a[0];
        assert!(close(strip.y1 - strip.y0, 2f64.sqrt()));
        assert!(close(strip.x1 - strip.x0, 1.0 / 2f64.sqrt()));
        let [lo, hi] = m.lambda_interval.unwrap();
        assert!(close(lo, 0.0) && close(hi, 2.0 - 2f64.sqrt()));
        assert!(close(m.audit().energy, m.energy));
    }

    #[test]
    fn labels_follow_inputs_when_a_is_larger() {
        let m = planar_minimizer(8.0, 1.0).unwrap();
        assert!(close(m.area_a(), 8.0));
        assert!(close(m.area_b(), 1.0));
        assert!(planar_minimizer(0.0, 1.0).is_err());
    }

    #[test]
    fn boundary_ties() {
        assert_eq!(PlanarRegime::classify(0.5), PlanarRegime::Rectangles);
        assert_eq!(PlanarRegime::classify(R_STAR), PlanarRegime::SideSquare);
        assert_eq!(PlanarRegime::classify(0.1), PlanarRegime::NestedSquares);
    }
}
