use serde::Serialize;

use super::bound::BOUND_TOLERANCE;
use super::profile::level_areas;
use super::{projection_stats, SlicingError};
use crate::closed_forms::planar_energy;
use crate::geometry::{pair_energy, Axis, Configuration, FaceSet};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaLevel {
    pub level: i32,
    pub a: u64,
    pub b: u64,
    /// Discrete planar energy of the slice pair.
    pub slice_energy: u64,
    /// Continuous planar minimum for the slice areas.
    pub e2d: f64,
    pub slack: f64,
}

/// Both sides of the slicing inequality
/// `E ≥ Σ_t E_2D(a(t), b(t)) + 2|π(A) ∪ π(B)| + |π(A) ∩ π(B)|`
/// and of its two parts: facets parallel to the axis (the slices) and
/// facets normal to it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlicingLemmaReport {
    pub axis: Axis,
    pub energy: u64,
    pub slice_energy_sum: u64,
    pub e2d_sum: f64,
    /// Facets of `∂A ∪ ∂B` normal to the axis.
    pub axis_facets: u64,
    pub union_area: u64,
    pub intersection_area: u64,
    /// `2|π∪| + |π∩|`.
    pub projection_term: u64,
    pub rhs: f64,
    pub lemma_slack: f64,
    pub slice_slack: f64,
    pub facet_slack: i64,
    /// Slice energies and axis-normal facets add up to the energy exactly.
    pub decomposition_exact: bool,
    pub levels: Vec<LemmaLevel>,
}

impl SlicingLemmaReport {
    pub fn holds(&self) -> bool {
        self.lemma_slack >= -BOUND_TOLERANCE
            && self.slice_slack >= -BOUND_TOLERANCE
            && self.facet_slack >= 0
            && self.decomposition_exact
    }

    /// Every slice is a lattice pair attaining the continuous planar minimum.
    pub fn slices_planar_optimal(&self) -> bool {
        self.levels.iter().all(|l| l.slack <= BOUND_TOLERANCE)
    }
}

pub fn slicing_lemma_check(cfg: &Configuration, axis: Axis) -> Result<SlicingLemmaReport, SlicingError> {
    if cfg.dim() != 3 {
        return Err(SlicingError::NotThreeDimensional(cfg.dim()));
    }
    let stats = projection_stats(cfg, axis)?;
    let energy = cfg.energy().energy;
    let axis_facets = FaceSet::of_pair(cfg.a(), cfg.b())?.count_normal(axis);

    let mut levels = Vec::new();
    for (level, a, b) in level_areas(cfg, axis) {
        let slice_energy = pair_energy(&cfg.a().slice(axis, level)?, &cfg.b().slice(axis, level)?)?.energy;
        let e2d = if a + b == 0 { 0.0 } else { planar_energy(a as f64, b as f64).expect("positive total area") };
        levels.push(LemmaLevel { level, a, b, slice_energy, e2d, slack: slice_energy as f64 - e2d });
    }
    let slice_energy_sum: u64 = levels.iter().map(|l| l.slice_energy).sum();
    let e2d_sum: f64 = levels.iter().map(|l| l.e2d).sum();
    let intersection_area = stats.intersection();
    let projection_term = 2 * stats.m + intersection_area;
    let rhs = e2d_sum + projection_term as f64;
    Ok(SlicingLemmaReport {
        axis,
        energy,
        slice_energy_sum,
        e2d_sum,
        axis_facets,
        union_area: stats.m,
        intersection_area,
        projection_term,
        rhs,
        lemma_slack: energy as f64 - rhs,
        slice_slack: slice_energy_sum as f64 - e2d_sum,
        facet_slack: axis_facets as i64 - projection_term as i64,
        decomposition_exact: slice_energy_sum + axis_facets == energy,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slicing::fixtures::{cuboid, pair, unit_cubes};

    #[test]
    fn unit_cubes_across_the_interface() {
        let r = slicing_lemma_check(&unit_cubes(), Axis::X).unwrap();
        // two slices each holding one square, one shared column
        assert_eq!(r.energy, 11);
        assert!((r.e2d_sum - 8.0).abs() < 1e-12);
        assert_eq!(r.projection_term, 3);
        assert!((r.rhs - 11.0).abs() < 1e-12);
        assert!(r.holds());
    }

    #[test]
    fn unit_cubes_parallel_to_the_interface() {
        let r = slicing_lemma_check(&unit_cubes(), Axis::Z).unwrap();
        let e2d = 2.0 * 6f64.sqrt() * 2f64.sqrt();
        assert!((r.e2d_sum - e2d).abs() < 1e-12);
        assert_eq!(r.projection_term, 4);
        assert!((r.rhs - (4.0 + e2d)).abs() < 1e-12);
        assert_eq!(r.slice_energy_sum, 7);
        assert!(r.holds());
        assert!(!r.slices_planar_optimal());
    }

    #[test]
    fn edge_contact_has_no_interface() {
        let cfg = pair(cuboid([0, 0, 0], [1, 1, 1]), cuboid([1, 1, 0], [1, 1, 1]));
        assert_eq!(cfg.energy().interface, 0);
        for ax in Axis::ALL {
            assert!(slicing_lemma_check(&cfg, ax).unwrap().holds());
        }
    }

    #[test]
    fn planar_optimal_product_is_tight() {
        // 1x2 strip of A beside a 2x2 square of B, three layers
        let cfg = pair(cuboid([0, 0, 0], [1, 2, 3]), cuboid([1, 0, 0], [2, 2, 3]));
        let r = slicing_lemma_check(&cfg, Axis::Z).unwrap();
        assert!(r.slices_planar_optimal());
        assert!(r.lemma_slack.abs() < 1e-9);
    }
}
