use num_rational::Ratio;
use serde::Serialize;

use super::{ratio_to_f64, serialize_ratio, SlicingError};
use crate::geometry::{projection_columns, Axis, Configuration};

/// Projection areas along one axis and the overlap parameter
/// `p = (m_A + m_B)/m − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectionStats {
    pub axis: Axis,
    /// Area of the projection of `A ∪ B`.
    pub m: u64,
    pub m_a: u64,
    pub m_b: u64,
    #[serde(serialize_with = "serialize_ratio")]
    pub p: Ratio<i64>,
}

impl ProjectionStats {
    /// Area of the intersection of the two projections, `m_A + m_B − m`.
    pub fn intersection(&self) -> u64 {
        self.m_a + self.m_b - self.m
    }

    pub fn p_value(&self) -> f64 {
        ratio_to_f64(self.p)
    }

    pub fn p_at_most_one_third(&self) -> bool {
        self.p * 3 <= Ratio::from_integer(1)
    }
}

pub fn projection_stats(cfg: &Configuration, axis: Axis) -> Result<ProjectionStats, SlicingError> {
    let cols_a = projection_columns(cfg.a(), axis)?;
    let cols_b = projection_columns(cfg.b(), axis)?;
    let m_a = cols_a.len() as u64;
    let m_b = cols_b.len() as u64;
    let m = cols_a.union(&cols_b).count() as u64;
    let p = Ratio::new((m_a + m_b) as i64, m as i64) - 1;
    Ok(ProjectionStats { axis, m, m_a, m_b, p })
}

/// Overlap along every axis together with the selected direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionReport {
    pub per_axis: Vec<ProjectionStats>,
    /// Axis of least overlap, ties going to the smaller index.
    pub best: ProjectionStats,
    pub best_p_at_most_one_third: bool,
    /// `7 m̄` with `m̄` the mean projection area.
    pub seven_mbar: f64,
}

pub fn best_direction(cfg: &Configuration) -> Result<DirectionReport, SlicingError> {
    if cfg.dim() != 3 {
        return Err(SlicingError::NotThreeDimensional(cfg.dim()));
    }
    let per_axis = Axis::ALL.iter().map(|&ax| projection_stats(cfg, ax)).collect::<Result<Vec<_>, _>>()?;
    let best = *per_axis
        .iter()
        .min_by(|x, y| x.p.cmp(&y.p).then(x.axis.cmp(&y.axis)))
        .expect("three axes");
    let seven_mbar = seven_mbar_from(&per_axis);
    Ok(DirectionReport { best_p_at_most_one_third: best.p_at_most_one_third(), per_axis, best, seven_mbar })
}

fn seven_mbar_from(stats: &[ProjectionStats]) -> f64 {
    let total: u64 = stats.iter().map(|s| s.m).sum();
    7.0 * total as f64 / 3.0
}

/// Energy `7 m̄` of the comparison configuration: a cube with face area
/// `m̄ = (m_1 + m_2 + m_3)/3` cut by one square interface parallel to a face.
pub fn seven_mbar_comparator(cfg: &Configuration) -> Result<f64, SlicingError> {
    Ok(best_direction(cfg)?.seven_mbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slicing::fixtures::{cuboid, pair, unit_cubes};

    #[test]
    fn side_by_side_has_zero_overlap_across_the_interface() {
        let cfg = pair(cuboid([0, 0, 0], [2, 2, 2]), cuboid([2, 0, 0], [2, 2, 2]));
        let s = projection_stats(&cfg, Axis::Z).unwrap();
        assert_eq!((s.m, s.m_a, s.m_b), (8, 4, 4));
        assert_eq!(s.p, Ratio::from_integer(0));
        let along = projection_stats(&cfg, Axis::X).unwrap();
        assert_eq!(along.p, Ratio::from_integer(1));
    }

    #[test]
    fn half_shifted_footprints() {
        let a = cells(&[[0, 0, 0], [1, 0, 0]]);
        let b = cells(&[[1, 0, 1], [2, 0, 1]]);
        let s = projection_stats(&pair(a, b), Axis::Z).unwrap();
        assert_eq!((s.m, s.m_a, s.m_b), (3, 2, 2));
        assert_eq!(s.p, Ratio::new(1, 3));
        assert!(s.p_at_most_one_third());
        assert_eq!(s.intersection(), 1);
    }

    #[test]
    fn stacked_plates_pick_a_horizontal_axis() {
        let cfg = pair(cuboid([0, 0, 0], [3, 3, 1]), cuboid([0, 0, 1], [3, 3, 1]));
        let report = best_direction(&cfg).unwrap();
        assert_eq!(report.per_axis[2].p, Ratio::from_integer(1));
        assert_eq!(report.best.axis, Axis::X);
        assert!(report.best_p_at_most_one_third);
        assert_eq!(report.per_axis.len(), 3);
    }

    #[test]
    fn comparator_values() {
        let cube = pair(cuboid([0, 0, 0], [1, 2, 2]), cuboid([1, 0, 0], [1, 2, 2]));
        assert_eq!(cube.energy().energy, 28);
        assert!((seven_mbar_comparator(&cube).unwrap() - 28.0).abs() < 1e-12);
        // unit cube pair: m = (1 + 2 + 2), comparator 35/3 against energy 11
        assert!((seven_mbar_comparator(&unit_cubes()).unwrap() - 35.0 / 3.0).abs() < 1e-12);
    }

    fn cells(cells: &[[i32; 3]]) -> crate::geometry::GridSet {
        crate::geometry::GridSet::from_cells(3, cells.iter().copied()).unwrap()
    }
}
