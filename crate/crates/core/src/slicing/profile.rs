use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use super::{serialize_opt_ratio, serialize_ratio, SlicingError};
use crate::geometry::{Axis, Configuration};

/// Classification of a level by comparing `r·a(t)` with `b(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LevelClass {
    /// `r·a = b > 0`.
    T0,
    /// `r·a > b`.
    TA,
    /// `r·a < b`.
    TB,
    /// `a = b = 0`; belongs to no class.
    Empty,
}

impl LevelClass {
    pub fn label(self) -> &'static str {
        match self {
            LevelClass::T0 => "T0",
            LevelClass::TA => "TA",
            LevelClass::TB => "TB",
            LevelClass::Empty => "empty",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    /// Coordinate of the slice along the slicing axis.
    pub level: i32,
    pub a: u64,
    pub b: u64,
    pub class: LevelClass,
    /// `b/a` on TA levels.
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub alpha: Option<Ratio<i64>>,
    /// `a/b` on TB levels.
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub beta: Option<Ratio<i64>>,
}

/// Slice areas along one axis with their exact classification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceProfile {
    pub axis: Axis,
    #[serde(serialize_with = "serialize_ratio")]
    pub ratio: Ratio<i64>,
    pub levels: Vec<LevelRow>,
    pub u_a: u64,
    pub u_b: u64,
    pub u_0: u64,
    /// `Σ_TA a(t)(r − α(t))`.
    #[serde(serialize_with = "serialize_ratio")]
    pub u_star: Ratio<i64>,
    /// `Σ_TB b(t)(1 − r β(t))`; equal to `u_star` by volume balance.
    #[serde(serialize_with = "serialize_ratio")]
    pub u_star_b: Ratio<i64>,
}

impl SliceProfile {
    pub fn balance_holds(&self) -> bool {
        self.u_star == self.u_star_b
    }

    pub fn has_ta_or_tb(&self) -> bool {
        self.levels.iter().any(|l| matches!(l.class, LevelClass::TA | LevelClass::TB))
    }

    pub fn nonempty_levels(&self) -> impl Iterator<Item = &LevelRow> {
        self.levels.iter().filter(|l| l.class != LevelClass::Empty)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,a,b,class,alpha,beta\n");
        for l in &self.levels {
            let opt = |r: Option<Ratio<i64>>| r.map(|r| r.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{},{},{}", l.level, l.a, l.b, l.class.label(), opt(l.alpha), opt(l.beta));
        }
        out
    }
}

/// Inclusive level range of `A ∪ B` along `axis`.
pub(crate) fn level_range(cfg: &Configuration, axis: Axis) -> (i32, i32) {
    let b = cfg.bounds();
    (b.min[axis.index()], b.max[axis.index()])
}

pub(crate) fn level_areas(cfg: &Configuration, axis: Axis) -> Vec<(i32, u64, u64)> {
    let (lo, hi) = level_range(cfg, axis);
    let mut rows: Vec<(i32, u64, u64)> = (lo..=hi).map(|t| (t, 0, 0)).collect();
    let k = axis.index();
    for c in cfg.a().cells() {
        rows[(c[k] - lo) as usize].1 += 1;
    }
    for c in cfg.b().cells() {
        rows[(c[k] - lo) as usize].2 += 1;
    }
    rows
}

pub fn slice_profile(cfg: &Configuration, axis: Axis) -> Result<SliceProfile, SlicingError> {
    let axis = axis.check(cfg.dim())?;
    let ratio = cfg.ratio();
    let (num, den) = (*ratio.numer(), *ratio.denom());
    let mut profile = SliceProfile {
        axis,
        ratio,
        levels: Vec::new(),
        u_a: 0,
        u_b: 0,
        u_0: 0,
        u_star: Ratio::from_integer(0),
        u_star_b: Ratio::from_integer(0),
    };
    for (level, a, b) in level_areas(cfg, axis) {
        let (ai, bi) = (a as i64, b as i64);
        // r·a − b scaled by the denominator of r
        let excess = num * ai - den * bi;
        let (class, alpha, beta) = if a == 0 && b == 0 {
            (LevelClass::Empty, None, None)
        } else if excess == 0 {
            (LevelClass::T0, None, None)
        } else if excess > 0 {
            (LevelClass::TA, Some(Ratio::new(bi, ai)), None)
        } else {
            (LevelClass::TB, None, Some(Ratio::new(ai, bi)))
        };
        match class {
            LevelClass::T0 => profile.u_0 += a + b,
            LevelClass::TA => {
                profile.u_a += a + b;
                profile.u_star += Ratio::new(excess, den);
            }
            LevelClass::TB => {
                profile.u_b += a + b;
                profile.u_star_b += Ratio::new(-excess, den);
            }
            LevelClass::Empty => {}
        }
        profile.levels.push(LevelRow { level, a, b, class, alpha, beta });
    }
    Ok(profile)
}

/// True when every level of `A ∪ B` along `axis` carries the same pair of
/// planar slices (translated copies along `axis`).
pub fn constant_slices(cfg: &Configuration, axis: Axis) -> Result<bool, SlicingError> {
    let axis = axis.check(cfg.dim())?;
    let (lo, hi) = level_range(cfg, axis);
    let first = (cfg.a().slice(axis, lo)?, cfg.b().slice(axis, lo)?);
    for t in lo + 1..=hi {
        if (cfg.a().slice(axis, t)?, cfg.b().slice(axis, t)?) != first {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GridSet;
    use crate::slicing::fixtures::{cuboid, pair};

    #[test]
    fn equal_stacked_slabs_are_all_balanced() {
        let cfg = pair(cuboid([0, 0, 0], [1, 2, 3]), cuboid([1, 0, 0], [1, 2, 3]));
        let p = slice_profile(&cfg, Axis::Z).unwrap();
        assert!(p.levels.iter().all(|l| l.class == LevelClass::T0));
        assert_eq!(p.u_0, 12);
        assert_eq!(p.u_star, Ratio::from_integer(0));
        assert!(p.balance_holds());
        assert!(constant_slices(&cfg, Axis::Z).unwrap());
        assert!(!constant_slices(&cfg, Axis::X).unwrap());
    }

    #[test]
    fn three_cell_instance() {
        // A: column of two cells, B: one cell beside the lower one; r = 1/2
        let a = GridSet::from_cells(3, [[0, 0, 0], [0, 0, 1]]).unwrap();
        let b = GridSet::from_cells(3, [[1, 0, 0]]).unwrap();
        let p = slice_profile(&pair(a, b), Axis::Z).unwrap();
        assert_eq!(p.ratio, Ratio::new(1, 2));
        assert_eq!(p.levels[0].class, LevelClass::TB);
        assert_eq!(p.levels[0].beta, Some(Ratio::from_integer(1)));
        assert_eq!(p.levels[1].class, LevelClass::TA);
        assert_eq!(p.levels[1].alpha, Some(Ratio::from_integer(0)));
        assert_eq!(p.u_star, Ratio::new(1, 2));
        assert_eq!(p.u_star_b, Ratio::new(1, 2));
        assert_eq!(p.u_a + p.u_b + p.u_0, 3);
    }

    #[test]
    fn gaps_are_empty_levels() {
        let cfg = pair(cuboid([0, 0, 0], [1, 1, 1]), cuboid([0, 0, 2], [1, 1, 1]));
        let p = slice_profile(&cfg, Axis::Z).unwrap();
        assert_eq!(p.levels.len(), 3);
        assert_eq!(p.levels[1].class, LevelClass::Empty);
        assert_eq!(p.nonempty_levels().count(), 2);
        assert_eq!(p.u_a + p.u_b + p.u_0, 2);
        assert!(p.to_csv().starts_with("level,a,b,class,alpha,beta\n0,1,0,TA,0,\n"));
    }
}
