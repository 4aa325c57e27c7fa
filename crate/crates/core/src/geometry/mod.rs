//! Exact rectilinear geometry on the unit lattice.
//!
//! Sets are finite unions of unit cells, so every ℓ1 quantity here (perimeter,
//! interface, projection area, slice area) is an integer.

mod config;
mod facets;
mod grid;
pub mod io;

use std::fmt;

use thiserror::Error;

pub use config::Configuration;
pub use facets::{
    column_crossings, double_bubble_energy, interface_area, l1_perimeter, pair_energy, projection_area,
    EnergyBreakdown, FaceSet, Facet, FacetOwner,
};
pub(crate) use facets::projection_columns;
pub use grid::{Axis, Bounds, Cell, GridSet, Isometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    A,
    B,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::A => "A",
            Which::B => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("unsupported dimension {0}")]
    InvalidDimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("axis {axis} is not valid in dimension {dim}")]
    InvalidAxis { axis: usize, dim: usize },
    #[error("cell {cell:?} has nonzero coordinates beyond dimension {dim}")]
    CellOutsideDimension { cell: Cell, dim: usize },
    #[error("sets overlap at cell {cell:?}")]
    Overlap { cell: Cell },
    #[error("set {0} is empty")]
    EmptySet(Which),
}
