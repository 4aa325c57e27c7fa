//! Face audit of configurations built from real-valued axis-aligned boxes.
//!
//! The boxes are rasterized on the grid spanned by all their corner
//! coordinates; every compressed cell is labelled A, B or empty and the energy
//! is the total measure of faces between differently labelled cells. This is
//! independent of the per-regime energy formulas it is used to check.

/// Owner label for an audited box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Owner {
    A,
    B,
}

/// Real axis-aligned box `[lo, hi]` in `D` dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisBox<const D: usize> {
    pub lo: [f64; D],
    pub hi: [f64; D],
}

impl<const D: usize> AxisBox<D> {
    pub fn measure(&self) -> f64 {
        (0..D).map(|i| self.hi[i] - self.lo[i]).product()
    }

    fn contains_point(&self, p: &[f64; D]) -> bool {
        (0..D).all(|i| self.lo[i] < p[i] && p[i] < self.hi[i])
    }
}

/// Audited quantities of a boxed configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditResult {
    pub volume_a: f64,
    pub volume_b: f64,
    pub perimeter_a: f64,
    pub perimeter_b: f64,
    pub interface: f64,
    pub energy: f64,
}

/// Boxes with the same owner may touch but must not overlap.
pub fn audit<const D: usize>(boxes: &[(AxisBox<D>, Owner)]) -> AuditResult {
    let mut coords: Vec<Vec<f64>> = vec![Vec::new(); D];
    for (b, _) in boxes {
        for i in 0..D {
            coords[i].push(b.lo[i]);
            coords[i].push(b.hi[i]);
        }
    }
    for c in coords.iter_mut() {
        c.sort_by(f64::total_cmp);
        c.dedup();
    }
    // cell counts per axis including one empty halo cell at each end
    let dims: Vec<usize> = coords.iter().map(|c| c.len() + 1).collect();
    let total: usize = dims.iter().product();
    let width = |axis: usize, k: usize| -> f64 {
        if k == 0 || k == dims[axis] - 1 {
            0.0
        } else {
            coords[axis][k] - coords[axis][k - 1]
        }
    };
    let unravel = |mut idx: usize| -> [usize; D] {
        let mut out = [0; D];
        for i in 0..D {
            out[i] = idx % dims[i];
            idx /= dims[i];
        }
        out
    };
    let mut labels: Vec<Option<Owner>> = vec![None; total];
    let mut res = AuditResult { volume_a: 0.0, volume_b: 0.0, perimeter_a: 0.0, perimeter_b: 0.0, interface: 0.0, energy: 0.0 };
    for (idx, label) in labels.iter_mut().enumerate() {
        let k = unravel(idx);
        if (0..D).any(|i| k[i] == 0 || k[i] == dims[i] - 1) {
            continue;
        }
        let mut centre = [0.0; D];
        for i in 0..D {
            centre[i] = 0.5 * (coords[i][k[i] - 1] + coords[i][k[i]]);
        }
        *label = boxes.iter().find(|(b, _)| b.contains_point(&centre)).map(|(_, o)| *o);
        let vol: f64 = (0..D).map(|i| width(i, k[i])).product();
        match label {
            Some(Owner::A) => res.volume_a += vol,
            Some(Owner::B) => res.volume_b += vol,
            None => {}
        }
    }
    let mut stride = 1;
    for axis in 0..D {
        for idx in 0..total {
            let k = unravel(idx);
            if k[axis] + 1 >= dims[axis] {
                continue;
            }
            let (l, r) = (labels[idx], labels[idx + stride]);
            if l == r {
                continue;
            }
            let face: f64 = (0..D).filter(|&i| i != axis).map(|i| width(i, k[i])).product();
            match (l, r) {
                (Some(Owner::A), Some(Owner::B)) | (Some(Owner::B), Some(Owner::A)) => {
                    res.interface += face;
                    res.perimeter_a += face;
                    res.perimeter_b += face;
                }
                (Some(Owner::A), None) | (None, Some(Owner::A)) => res.perimeter_a += face,
                (Some(Owner::B), None) | (None, Some(Owner::B)) => res.perimeter_b += face,
                _ => {}
            }
        }
        stride *= dims[axis];
    }
    res.energy = res.perimeter_a + res.perimeter_b - res.interface;
    res
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_pair() {
        let a = AxisBox { lo: [0.0, 0.0], hi: [1.0, 1.0] };
        let b = AxisBox { lo: [1.0, 0.0], hi: [2.0, 1.0] };
        let r = audit(&[(a, Owner::A), (b, Owner::B)]);
        assert_eq!((r.perimeter_a, r.perimeter_b, r.interface, r.energy), (4.0, 4.0, 1.0, 7.0));
    }

    #[test]
    fn l_shaped_region_from_two_boxes() {
        // B = [0,3]^2 minus A = [0,1]^2, split into two boxes
        let a = AxisBox { lo: [0.0, 0.0], hi: [1.0, 1.0] };
        let b1 = AxisBox { lo: [1.0, 0.0], hi: [3.0, 3.0] };
        let b2 = AxisBox { lo: [0.0, 1.0], hi: [1.0, 3.0] };
        let r = audit(&[(a, Owner::A), (b1, Owner::B), (b2, Owner::B)]);
        assert_eq!(r.volume_b, 8.0);
        assert_eq!(r.interface, 2.0);
        assert_eq!(r.energy, 14.0);
    }

    #[test]
    fn cube_pair() {
        let a = AxisBox { lo: [0.0; 3], hi: [1.0; 3] };
        let b = AxisBox { lo: [1.0, 0.0, 0.0], hi: [2.0, 1.0, 1.0] };
        assert_eq!(audit(&[(a, Owner::A), (b, Owner::B)]).energy, 11.0);
    }
}
