//! Grid search over pairs of cuboids stacked on a common `s1 × s2` face.

use serde::Serialize;

use super::SearchError;

/// Energy of two cuboids sharing an `s1 × s2` face with total volume `v`:
/// three faces of area `s1·s2` and a lateral band of perimeter `2(s1 + s2)`
/// and height `v/(s1·s2)`.
pub fn cuboid_pair_energy(s1: f64, s2: f64, v: f64) -> f64 {
    let face = s1 * s2;
    3.0 * face + 2.0 * (s1 + s2) * v / face
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CuboidSearch {
    pub s1: f64,
    pub s2: f64,
    pub height_a: f64,
    pub height_b: f64,
    pub energy: f64,
    pub evaluations: u64,
}

const ZOOM_ROUNDS: usize = 3;

/// Minimizes [`cuboid_pair_energy`] on a `density × density` logarithmic grid
/// over `[c/16, 16c]²`, `c = (V_A + V_B)^(1/3)`, then refines three times on a
/// linear grid spanning two cells around the incumbent.
pub fn cuboid_family_search(va: f64, vb: f64, density: usize) -> Result<CuboidSearch, SearchError> {
    for (name, value) in [("V_A", va), ("V_B", vb)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(SearchError::InvalidVolume { name, value });
        }
    }
    if density < 64 {
        return Err(SearchError::DensityTooLow(density));
    }
    let v = va + vb;
    let c = v.cbrt();
    let (lo, hi) = ((c / 16.0).ln(), (16.0 * c).ln());
    let step = (hi - lo) / (density - 1) as f64;
    let axis: Vec<f64> = (0..density).map(|i| (lo + step * i as f64).exp()).collect();
    let mut evaluations = 0u64;
    let (mut best, mut s1, mut s2) = (f64::INFINITY, axis[0], axis[0]);
    let mut best_idx = (0, 0);
    for (i, &x) in axis.iter().enumerate() {
        for (j, &y) in axis.iter().enumerate() {
            let e = cuboid_pair_energy(x, y, v);
            evaluations += 1;
            if e < best {
                (best, s1, s2, best_idx) = (e, x, y, (i, j));
            }
        }
    }
    let cell = |i: usize| (axis[i.saturating_sub(1)], axis[(i + 1).min(density - 1)]);
    let (mut r1, mut r2) = (cell(best_idx.0), cell(best_idx.1));
    for _ in 0..ZOOM_ROUNDS {
        let lin = |(a, b): (f64, f64)| -> Vec<f64> { (0..density).map(|k| a + (b - a) * k as f64 / (density - 1) as f64).collect() };
        let (xs, ys) = (lin(r1), lin(r2));
        for &x in &xs {
            for &y in &ys {
                let e = cuboid_pair_energy(x, y, v);
                evaluations += 1;
                if e < best {
                    (best, s1, s2) = (e, x, y);
                }
            }
        }
        let w1 = 2.0 * (r1.1 - r1.0) / (density - 1) as f64;
        let w2 = 2.0 * (r2.1 - r2.0) / (density - 1) as f64;
        r1 = ((s1 - w1).max(f64::MIN_POSITIVE), s1 + w1);
        r2 = ((s2 - w2).max(f64::MIN_POSITIVE), s2 + w2);
    }
    let face = s1 * s2;
    Ok(CuboidSearch { s1, s2, height_a: va / face, height_b: vb / face, energy: best, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_face_reduces_to_the_one_parameter_family() {
        for (m, v) in [(4.0, 12.0), (2.5, 3.0), (0.3, 7.0)] {
            let s = f64::sqrt(m);
            let expected = 3.0 * m + 4.0 * v / s;
            assert!((cuboid_pair_energy(s, s, v) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn equal_volumes_six_converge_to_side_two() {
        let r = cuboid_family_search(6.0, 6.0, 512).unwrap();
        assert!((r.s1 - 2.0).abs() < 1e-6 && (r.s2 - 2.0).abs() < 1e-6, "{r:?}");
        assert!((r.energy - 36.0).abs() < 1e-9);
        assert!(r.energy >= 36.0 - 1e-9);
    }

    #[test]
    fn non_square_face_is_worse() {
        assert!(cuboid_pair_energy(1.0, 4.0, 12.0) > 36.0 + 1.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(cuboid_family_search(0.0, 1.0, 64), Err(SearchError::InvalidVolume { .. })));
        assert!(matches!(cuboid_family_search(1.0, f64::NAN, 64), Err(SearchError::InvalidVolume { .. })));
        assert!(matches!(cuboid_family_search(1.0, 1.0, 63), Err(SearchError::DensityTooLow(63))));
    }
}
