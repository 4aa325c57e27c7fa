//! Numerical certification of the one-variable inequalities behind the
//! slicing bound: the minima of `g_A`, `g_B`, the monotonicity of the
//! auxiliary functions `h_1 … h_4`, endpoint comparisons, the separation
//! constant, and the algebraic identities linking them.
//!
//! Certification is by dense sampling with adaptive refinement around the
//! worst sample. It is evidence, not proof. Every projection area is
//! normalized to `m = 1`, which is exact by homogeneity.

mod checks;
mod functions;
mod harness;

use std::cmp::Ordering;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use checks::{
    certify_c2_gt_c1, certify_endpoint_comparisons, certify_g_minima, certify_h_monotonicity, certify_identities,
    report_r_monotonicity, verify_all,
};
pub use functions::{LemmaContext, PoleLimit};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LemmaError {
    #[error("context violates the hypothesis {what}: {context:?}")]
    OutsideHypothesis { what: &'static str, context: LemmaContext },
    #[error("{name} = {value} is outside [0, {pole})")]
    OutsideDomain { name: &'static str, value: f64, pole: f64 },
}

/// Sampling densities for a certification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub name: String,
    /// Points on `[1/2, 2]`; `1/2` and `1` are always added.
    pub r_points: usize,
    /// Points on `[0, 1/3]`.
    pub p_points: usize,
    /// Points on each projection-ratio range, corners included.
    pub ratio_points: usize,
    /// Points on each `α`, `β` or `x` interval.
    pub x_points: usize,
    /// Points per piece for derivative sign patterns.
    pub derivative_points: usize,
    /// Points for the identity checks.
    pub identity_points: usize,
    /// Points on `[0, 1/3]` for the separation constant.
    pub c2_points: usize,
    pub refine_rounds: usize,
    pub refine_points: usize,
    /// Distance kept from poles.
    pub pole_margin: f64,
    pub fd_step: f64,
}

impl GridSpec {
    pub fn dense() -> GridSpec {
        GridSpec {
            name: "dense".into(),
            r_points: 32,
            p_points: 64,
            ratio_points: 34,
            x_points: 10_000,
            derivative_points: 2_000,
            identity_points: 1_000,
            c2_points: 256,
            refine_rounds: 3,
            refine_points: 21,
            pole_margin: 1e-6,
            fd_step: 1e-6,
        }
    }

    pub fn fast() -> GridSpec {
        GridSpec {
            name: "fast".into(),
            r_points: 8,
            p_points: 9,
            ratio_points: 6,
            x_points: 1_000,
            derivative_points: 400,
            identity_points: 200,
            c2_points: 64,
            ..GridSpec::dense()
        }
    }

    pub fn by_name(name: &str) -> Option<GridSpec> {
        match name {
            "dense" => Some(GridSpec::dense()),
            "fast" => Some(GridSpec::fast()),
            _ => None,
        }
    }

    fn summary(&self) -> String {
        format!(
            "{}: r {}+2, p {}, ratios {}, x {}, refine {}x{}",
            self.name, self.r_points, self.p_points, self.ratio_points, self.x_points, self.refine_rounds, self.refine_points
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Reported without a pass/fail claim.
    Info,
}

/// The sampled point with the smallest margin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "serialize_params")]
    pub params: Vec<(&'static str, f64)>,
    pub value: f64,
    pub margin: f64,
}

fn serialize_params<S: Serializer>(params: &[(&'static str, f64)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(params.len()))?;
    for (k, v) in params {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

impl Witness {
    /// Smaller margin first; NaN is worst; ties go to the lexicographically
    /// smaller parameter tuple.
    fn worse_than(&self, other: &Witness) -> bool {
        let key = |w: &Witness| if w.margin.is_nan() { f64::NEG_INFINITY } else { w.margin };
        match key(self).total_cmp(&key(other)) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => {
                let a: Vec<f64> = self.params.iter().map(|p| p.1).collect();
                let b: Vec<f64> = other.params.iter().map(|p| p.1).collect();
                harness::cmp_params(&a, &b) == Ordering::Less
            }
        }
    }
}

/// How a margin is judged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `margin ≥ −tolerance`.
    AtLeast { tolerance: f64 },
    /// `margin > 0`.
    Positive,
    Informational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub id: &'static str,
    pub description: &'static str,
    pub grid: String,
    pub rule: Rule,
    pub verdict: Verdict,
    pub worst: Option<Witness>,
    pub samples: u64,
    /// Contexts skipped because a comparison does not apply there.
    pub excluded: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LemmaReport {
    fn new(id: &'static str, description: &'static str, grid: &GridSpec, rule: Rule) -> LemmaReport {
        LemmaReport {
            id,
            description,
            grid: grid.summary(),
            rule,
            verdict: Verdict::Info,
            worst: None,
            samples: 0,
            excluded: 0,
            note: None,
        }
    }

    fn offer(&mut self, mut w: Witness) {
        // report 0 rather than -0
        w.margin += 0.0;
        if self.worst.as_ref().is_none_or(|cur| w.worse_than(cur)) {
            self.worst = Some(w);
        }
    }

    fn finish(mut self) -> LemmaReport {
        self.verdict = match (self.rule, &self.worst) {
            (Rule::Informational, _) => Verdict::Info,
            (_, None) => Verdict::Fail,
            (Rule::AtLeast { tolerance }, Some(w)) => {
                if w.margin >= -tolerance {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
            (Rule::Positive, Some(w)) => {
                if w.margin > 0.0 {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaSuite {
    pub grid: GridSpec,
    pub reports: Vec<LemmaReport>,
}

impl LemmaSuite {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(LemmaReport::passed)
    }

    /// Fixed-width table: id, verdict, worst margin, samples.
    pub fn summary_table(&self) -> String {
        let mut out = format!("{:<34} {:<6} {:>14} {:>12}\n", "check", "result", "worst margin", "samples");
        for r in &self.reports {
            let margin = r.worst.as_ref().map_or("-".to_string(), |w| format!("{:.6e}", w.margin));
            let verdict = match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::Info => "info",
            };
            out.push_str(&format!("{:<34} {:<6} {:>14} {:>12}\n", r.id, verdict, margin, r.samples));
        }
        out
    }
}
