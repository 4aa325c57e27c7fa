use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use super::lemma::SlicingLemmaReport;
use super::profile::{LevelClass, SliceProfile};
use super::{projection_stats, ratio_to_f64, slice_profile, slicing_lemma_check, ProjectionStats, SlicingError};
use crate::closed_forms::f_unchecked;
use crate::geometry::{Axis, Configuration};

/// Absolute tolerance for every floating comparison in this module.
pub const BOUND_TOLERANCE: f64 = 1e-9;

/// The discrete equality characterization: no TA or TB levels, and every
/// nonempty level fills the projection (`a(t) + b(t) = m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EqualityFlags {
    pub ta_tb_null: bool,
    pub full_slices: bool,
}

impl EqualityFlags {
    pub fn both(&self) -> bool {
        self.ta_tb_null && self.full_slices
    }
}

/// Conditions that the lattice adds to the continuous equality case. The
/// bound is attained on voxels exactly when the equality flags hold and both
/// of these do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tightness {
    /// Axis-normal facets equal `2|π∪| + |π∩|`.
    pub axis_facets_tight: bool,
    /// Every slice attains the continuous planar minimum.
    pub slices_planar_optimal: bool,
}

/// The successive lower bounds between the energy and the right-hand side.
/// Each entry must dominate the next.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProofChain {
    pub energy: f64,
    /// `(2+p)m + Σ E_2D(a(t), b(t))`.
    pub after_slicing: f64,
    /// Slice energies bounded through `a + b ≤ min{m, (1+α)m_A}`.
    pub after_area_bound: f64,
    pub rhs: f64,
}

impl ProofChain {
    pub fn links(&self) -> [f64; 3] {
        [self.energy - self.after_slicing, self.after_slicing - self.after_area_bound, self.after_area_bound - self.rhs]
    }

    pub fn holds(&self) -> bool {
        self.links().iter().all(|&d| d >= -BOUND_TOLERANCE)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub stats: ProjectionStats,
    pub profile: SliceProfile,
    pub p_tilde: f64,
    pub u_hat: f64,
    pub rhs: f64,
    pub energy: u64,
    pub slack: f64,
    pub equality_flags: EqualityFlags,
    pub tightness: Tightness,
    pub chain: ProofChain,
    pub lemma: SlicingLemmaReport,
}

impl BoundReport {
    pub fn is_tight(&self) -> bool {
        self.slack <= BOUND_TOLERANCE
    }

    /// Per-level table: slice areas, class, α/β, discrete slice energy and
    /// continuous planar minimum.
    pub fn level_table_csv(&self) -> String {
        let mut out = String::from("level,a,b,class,alpha,beta,slice_energy,e2d\n");
        for (row, lvl) in self.profile.levels.iter().zip(&self.lemma.levels) {
            let opt = |r: Option<Ratio<i64>>| r.map(|r| r.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                row.level,
                row.a,
                row.b,
                row.class.label(),
                opt(row.alpha),
                opt(row.beta),
                lvl.slice_energy,
                lvl.e2d
            );
        }
        out
    }
}

fn check_hypotheses(cfg: &Configuration, stats: &ProjectionStats) -> Result<(), SlicingError> {
    if cfg.dim() != 3 {
        return Err(SlicingError::NotThreeDimensional(cfg.dim()));
    }
    let r = cfg.ratio();
    if r < Ratio::new(1, 2) || r > Ratio::from_integer(2) {
        return Err(SlicingError::RatioOutOfRange { ratio: r });
    }
    if !stats.p_at_most_one_third() {
        return Err(SlicingError::OverlapTooLarge { axis: stats.axis, p: stats.p });
    }
    Ok(())
}

/// Evaluates
/// `E ≥ (2+p)m + 4√6/(√(4+2p)√m)·(U_A+U_B) + 2√6/√m·U_0`
/// along `axis`. Refuses configurations outside `r ∈ [1/2, 2]`, `p ≤ 1/3`.
pub fn lower_bound(cfg: &Configuration, axis: Axis) -> Result<BoundReport, SlicingError> {
    if cfg.dim() != 3 {
        return Err(SlicingError::NotThreeDimensional(cfg.dim()));
    }
    let stats = projection_stats(cfg, axis)?;
    check_hypotheses(cfg, &stats)?;
    let profile = slice_profile(cfg, axis)?;
    let lemma = slicing_lemma_check(cfg, axis)?;

    let p = stats.p_value();
    let m = stats.m as f64;
    let sqrt6 = 6f64.sqrt();
    let p_tilde = sqrt6 * (1.0 + p / 2.0).sqrt() - sqrt6;
    let coef_unbalanced = 4.0 * sqrt6 / ((4.0 + 2.0 * p).sqrt() * m.sqrt());
    let coef_balanced = 2.0 * sqrt6 / m.sqrt();
    let u_hat = coef_unbalanced * (profile.u_a + profile.u_b) as f64 + coef_balanced * profile.u_0 as f64;
    let projection_part = (2.0 + p) * m;
    let rhs = projection_part + u_hat;
    let energy = cfg.energy().energy;

    let chain = ProofChain {
        energy: energy as f64,
        after_slicing: lemma.projection_term as f64 + lemma.e2d_sum,
        after_area_bound: projection_part + area_bounded_sum(&profile, &stats),
        rhs,
    };
    let equality_flags = EqualityFlags {
        ta_tb_null: !profile.has_ta_or_tb(),
        full_slices: profile.nonempty_levels().all(|l| l.a + l.b == stats.m),
    };
    let tightness =
        Tightness { axis_facets_tight: lemma.facet_slack == 0, slices_planar_optimal: lemma.slices_planar_optimal() };
    Ok(BoundReport {
        stats,
        profile,
        p_tilde,
        u_hat,
        rhs,
        energy,
        slack: energy as f64 - rhs,
        equality_flags,
        tightness,
        chain,
        lemma,
    })
}

/// `Σ (a+b) f(ratio) / min{√m, √((1+ratio)·m_side)}` over TA and TB, plus
/// `2√6/√m · U_0`.
fn area_bounded_sum(profile: &SliceProfile, stats: &ProjectionStats) -> f64 {
    let m = stats.m as f64;
    let mut total = 2.0 * 6f64.sqrt() / m.sqrt() * profile.u_0 as f64;
    for l in &profile.levels {
        let (x, side) = match l.class {
            LevelClass::TA => (ratio_to_f64(l.alpha.expect("TA rows carry alpha")), stats.m_a as f64),
            LevelClass::TB => (ratio_to_f64(l.beta.expect("TB rows carry beta")), stats.m_b as f64),
            LevelClass::T0 | LevelClass::Empty => continue,
        };
        let denom = m.sqrt().min(((1.0 + x) * side).sqrt());
        total += (l.a + l.b) as f64 * f_unchecked(x) / denom;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slicing::fixtures::{cuboid, pair, unit_cubes};

    #[test]
    fn unit_cubes_parallel_to_interface() {
        let r = lower_bound(&unit_cubes(), Axis::Y).unwrap();
        assert_eq!((r.stats.m, r.energy), (2, 11));
        let expected = 4.0 + 4.0 * 3f64.sqrt();
        assert!((r.rhs - expected).abs() < 1e-12);
        assert!(r.slack > 0.0);
        assert!(r.equality_flags.both());
        assert!(!r.tightness.slices_planar_optimal);
        assert!(r.chain.holds());
    }

    #[test]
    fn unit_cubes_across_interface_violate_overlap() {
        assert!(matches!(lower_bound(&unit_cubes(), Axis::X), Err(SlicingError::OverlapTooLarge { .. })));
    }

    #[test]
    fn ratio_three_is_refused() {
        let cfg = pair(cuboid([0, 0, 0], [1, 1, 1]), cuboid([1, 0, 0], [3, 1, 1]));
        let err = lower_bound(&cfg, Axis::Z).unwrap_err();
        assert!(matches!(err, SlicingError::RatioOutOfRange { .. }));
        assert_eq!(err.code(), "ratio_out_of_range");
    }

    #[test]
    fn bars_sharing_a_long_face() {
        // two 1x1x2 bars side by side along x, sliced along their length (z)
        let cfg = pair(cuboid([0, 0, 0], [1, 1, 2]), cuboid([1, 0, 0], [1, 1, 2]));
        let r = lower_bound(&cfg, Axis::Z).unwrap();
        assert_eq!(r.stats.p, Ratio::from_integer(0));
        assert!(r.equality_flags.both());
        assert!(r.slack >= -BOUND_TOLERANCE);
        assert!(r.chain.holds());
    }

    #[test]
    fn planar_optimal_product_attains_the_bound() {
        let cfg = pair(cuboid([0, 0, 0], [1, 2, 2]), cuboid([1, 0, 0], [2, 2, 2]));
        let r = lower_bound(&cfg, Axis::Z).unwrap();
        assert_eq!(r.energy, 36);
        assert!(r.is_tight(), "slack {}", r.slack);
        assert!(r.equality_flags.both());
        assert!(r.tightness.axis_facets_tight && r.tightness.slices_planar_optimal);
        assert!(r.level_table_csv().lines().nth(1).unwrap().starts_with("0,2,4,T0,,,12,"));
    }

    #[test]
    fn p_tilde_and_u_hat_at_zero_overlap() {
        let cfg = pair(cuboid([0, 0, 0], [1, 2, 2]), cuboid([1, 0, 0], [2, 2, 2]));
        let r = lower_bound(&cfg, Axis::Z).unwrap();
        assert_eq!(r.p_tilde, 0.0);
        assert!((r.u_hat - 2.0 * 6f64.sqrt() / 6f64.sqrt() * 12.0).abs() < 1e-12);
    }
}
