//! Exhaustive lattice minima against the continuous closed forms.

use std::path::Path;

use serde::Serialize;

use super::{brute_force, SearchError, SearchSpec};
use crate::closed_forms::{emin, planar_energy};
use crate::geometry::io::{write_grid, GridFileError};
use crate::geometry::Configuration;

/// Equality tolerance between a lattice minimum and the continuous value.
pub const EQUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub a: u64,
    pub b: u64,
    pub discrete_min: u64,
    pub continuous_value: f64,
    pub equal: bool,
    /// `discrete_min ≥ continuous_value − 1e-9`.
    pub dominates: bool,
    /// Whether the continuous value is a proven lower bound here: always in
    /// 2D, and for `b/a ∈ [1/2, 2]` in 3D.
    pub bound_applies: bool,
    pub optimum_classes: usize,
    pub witness_path: Option<String>,
    #[serde(skip)]
    pub witness: Configuration,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub dimension: usize,
    pub max_total: u64,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Rows where the continuous value is a proven bound but the lattice
    /// minimum falls below it.
    pub fn violations(&self) -> Vec<&SweepRow> {
        self.rows.iter().filter(|r| r.bound_applies && !r.dominates).collect()
    }

    /// Writes one witness grid per row into `dir` and records the paths.
    pub fn write_witnesses(&mut self, dir: &Path) -> Result<(), GridFileError> {
        std::fs::create_dir_all(dir).map_err(|source| GridFileError::Io { path: dir.display().to_string(), source })?;
        for row in &mut self.rows {
            let path = dir.join(format!("{}d_{}_{}.grid", self.dimension, row.a, row.b));
            write_grid(&row.witness, &path)?;
            row.witness_path = Some(path.display().to_string());
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["a", "b", "discrete_min", "continuous_value", "equal", "witness_path"])?;
        for r in &self.rows {
            w.write_record([
                r.a.to_string(),
                r.b.to_string(),
                r.discrete_min.to_string(),
                format!("{:.12}", r.continuous_value),
                r.equal.to_string(),
                r.witness_path.clone().unwrap_or_default(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn continuous(dim: usize, a: u64, b: u64) -> f64 {
    let (a, b) = (a as f64, b as f64);
    let value = if dim == 2 { planar_energy(a, b) } else { emin(a, b).map(|e| e.energy) };
    value.expect("positive integer volumes are valid closed-form inputs")
}

/// Every pair `1 ≤ a ≤ b` with `a + b ≤ max_total`. The energy is symmetric
/// in the two labels, so `b < a` adds nothing.
pub fn discrete_dominance_sweep(dim: usize, max_total: u64, max_cells: Option<u64>) -> Result<SweepTable, SearchError> {
    let mut rows = Vec::new();
    for total in 2..=max_total {
        for a in 1..=total / 2 {
            let b = total - a;
            let mut spec = SearchSpec::new(dim, a, b);
            spec.max_cells = max_cells;
            let result = brute_force(&spec)?;
            let value = continuous(dim, a, b);
            let discrete = result.min_energy as f64;
            let ratio = b as f64 / a as f64;
            rows.push(SweepRow {
                a,
                b,
                discrete_min: result.min_energy,
                continuous_value: value,
                equal: (discrete - value).abs() <= EQUALITY_TOL,
                dominates: discrete >= value - EQUALITY_TOL,
                bound_applies: dim == 2 || (0.5..=2.0).contains(&ratio),
                optimum_classes: result.optimum_classes,
                witness_path: None,
                witness: result.witnesses[0].clone(),
            });
        }
    }
    Ok(SweepTable { dimension: dim, max_total, rows })
}
