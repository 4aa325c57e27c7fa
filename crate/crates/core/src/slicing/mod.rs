//! Projection statistics, slice profiles and the slicing lower bound for
//! three-dimensional voxel configurations.
//!
//! Integrals over the slicing coordinate become sums over unit levels, which
//! is exact for voxel sets. All classifications and the volume balance are
//! computed in exact rational arithmetic.

mod bound;
pub mod corpus;
mod lemma;
mod profile;
mod projection;

use num_rational::Ratio;
use serde::Serializer;
use thiserror::Error;

use crate::geometry::{Axis, GeometryError};

pub use bound::{lower_bound, BoundReport, EqualityFlags, ProofChain, Tightness, BOUND_TOLERANCE};
pub use lemma::{slicing_lemma_check, LemmaLevel, SlicingLemmaReport};
pub use profile::{constant_slices, slice_profile, LevelClass, LevelRow, SliceProfile};
pub use projection::{best_direction, projection_stats, seven_mbar_comparator, DirectionReport, ProjectionStats};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SlicingError {
    #[error("volume ratio V_B/V_A = {ratio} lies outside [1/2, 2]")]
    RatioOutOfRange { ratio: Ratio<i64> },
    #[error("overlap p = {p} > 1/3 along axis {axis}")]
    OverlapTooLarge { axis: Axis, p: Ratio<i64> },
    #[error("slicing requires a three-dimensional configuration, got dimension {0}")]
    NotThreeDimensional(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl SlicingError {
    /// Short stable identifier of the violated hypothesis.
    pub fn code(&self) -> &'static str {
        match self {
            SlicingError::RatioOutOfRange { .. } => "ratio_out_of_range",
            SlicingError::OverlapTooLarge { .. } => "overlap_too_large",
            SlicingError::NotThreeDimensional(_) => "not_three_dimensional",
            SlicingError::Geometry(_) => "invalid_geometry",
        }
    }
}

pub(crate) fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Rationals serialize as `"n/d"` (or `"n"` when integral).
pub(crate) fn serialize_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub(crate) fn serialize_opt_ratio<S: Serializer>(r: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::geometry::{Configuration, GridSet};

    pub fn cuboid(lo: [i32; 3], size: [usize; 3]) -> GridSet {
        GridSet::cuboid(3, lo, size).unwrap()
    }

    pub fn pair(a: GridSet, b: GridSet) -> Configuration {
        Configuration::new(a, b).unwrap()
    }

    /// Two unit cubes sharing the face normal to x.
    pub fn unit_cubes() -> Configuration {
        pair(cuboid([0, 0, 0], [1, 1, 1]), cuboid([1, 0, 0], [1, 1, 1]))
    }
}
