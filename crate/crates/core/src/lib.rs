//! Exact ℓ1 double-bubble energies on the cubic lattice, the planar and
//! three-dimensional closed forms, the slicing lower bound, numerical
//! certification of the one-variable lemmas and brute-force discrete search.

pub mod closed_forms;
pub mod geometry;
pub mod lemmas;
pub mod search;
pub mod slicing;

pub use geometry::{Axis, Cell, Configuration, EnergyBreakdown, GeometryError, GridSet};
