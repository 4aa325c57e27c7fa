use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Axis, Cell, Configuration, GeometryError, GridSet};

/// Which sets a unit facet bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FacetOwner {
    /// Separates a cell of A from empty space.
    AOnly,
    /// Separates a cell of B from empty space.
    BOnly,
    /// Separates a cell of A from a cell of B.
    Interface,
}

/// A unit facet orthogonal to `normal`, lying between `low` and
/// `low + e_normal`. Its plane coordinate along the normal is `level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub owner: FacetOwner,
    pub normal: Axis,
    pub low: Cell,
}

impl Facet {
    pub fn level(&self) -> i32 {
        self.low[self.normal.index()] + 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Label {
    Empty,
    A,
    B,
}

/// Boundary facets of a disjoint pair `(A, B)`: the facets of `∂A ∪ ∂B`.
///
/// The number of facets equals the double-bubble energy, since exterior facets
/// are counted once and interface facets once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    dim: usize,
    facets: Vec<Facet>,
}

impl FaceSet {
    /// Scans every adjacent cell pair of the joint bounding box widened by a
    /// one-cell halo.
    pub fn of_pair(a: &GridSet, b: &GridSet) -> Result<FaceSet, GeometryError> {
        if a.dim() != b.dim() {
            return Err(GeometryError::DimensionMismatch(a.dim(), b.dim()));
        }
        if let Some(cell) = a.first_common_cell(b) {
            return Err(GeometryError::Overlap { cell });
        }
        let dim = a.dim();
        let bounds = match (a.bounds(), b.bounds()) {
            (None, None) => return Ok(FaceSet { dim, facets: Vec::new() }),
            (Some(x), None) | (None, Some(x)) => x,
            (Some(x), Some(y)) => x.union(y),
        };
        let label = |c: Cell| {
            if a.contains(c) {
                Label::A
            } else if b.contains(c) {
                Label::B
            } else {
                Label::Empty
            }
        };
        let mut facets = Vec::new();
        for &axis in Axis::axes(dim) {
            let k = axis.index();
            let mut lo = bounds.min;
            let hi = bounds.max;
            lo[k] -= 1;
            for z in lo[2]..=hi[2] {
                for y in lo[1]..=hi[1] {
                    for x in lo[0]..=hi[0] {
                        let c = [x, y, z];
                        let mut n = c;
                        n[k] += 1;
                        let owner = match (label(c), label(n)) {
                            (Label::A, Label::B) | (Label::B, Label::A) => FacetOwner::Interface,
                            (Label::A, Label::Empty) | (Label::Empty, Label::A) => FacetOwner::AOnly,
                            (Label::B, Label::Empty) | (Label::Empty, Label::B) => FacetOwner::BOnly,
                            _ => continue,
                        };
                        facets.push(Facet { owner, normal: axis, low: c });
                    }
                }
            }
        }
        facets.sort_unstable();
        Ok(FaceSet { dim, facets })
    }

    pub fn of_set(s: &GridSet) -> FaceSet {
        let empty = GridSet::empty(s.dim()).expect("valid dimension");
        FaceSet::of_pair(s, &empty).expect("a set never overlaps the empty set")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn count_owner(&self, owner: FacetOwner) -> u64 {
        self.facets.iter().filter(|f| f.owner == owner).count() as u64
    }

    /// Facets whose normal is `axis`.
    pub fn count_normal(&self, axis: Axis) -> u64 {
        self.facets.iter().filter(|f| f.normal == axis).count() as u64
    }
}

/// ℓ1 perimeter of a rectilinear set: every axis facet has `|ν|₁ = 1`, so this
/// is the boundary facet count.
pub fn l1_perimeter(s: &GridSet) -> u64 {
    FaceSet::of_set(s).len() as u64
}

/// Number of unit facets shared by a cell of `a` and a cell of `b`.
pub fn interface_area(a: &GridSet, b: &GridSet) -> Result<u64, GeometryError> {
    Ok(FaceSet::of_pair(a, b)?.count_owner(FacetOwner::Interface))
}

/// The three addends of the double-bubble energy and their combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub perimeter_a: u64,
    pub perimeter_b: u64,
    pub interface: u64,
    pub energy: u64,
}

/// `E(A,B) = ℓ1(∂A) + ℓ1(∂B) − ℓ1(∂A ∩ ∂B)`.
pub fn double_bubble_energy(cfg: &Configuration) -> EnergyBreakdown {
    pair_energy(cfg.a(), cfg.b()).expect("configuration invariants guarantee a disjoint pair")
}

/// Energy of an arbitrary disjoint pair; either set may be empty.
pub fn pair_energy(a: &GridSet, b: &GridSet) -> Result<EnergyBreakdown, GeometryError> {
    let faces = FaceSet::of_pair(a, b)?;
    let a_only = faces.count_owner(FacetOwner::AOnly);
    let b_only = faces.count_owner(FacetOwner::BOnly);
    let interface = faces.count_owner(FacetOwner::Interface);
    Ok(EnergyBreakdown {
        perimeter_a: a_only + interface,
        perimeter_b: b_only + interface,
        interface,
        energy: a_only + b_only + interface,
    })
}

/// Area of the orthogonal projection along `axis`: the number of distinct
/// occupied lines parallel to `axis`.
pub fn projection_area(s: &GridSet, axis: Axis) -> Result<u64, GeometryError> {
    Ok(projection_columns(s, axis)?.len() as u64)
}

pub(crate) fn projection_columns(s: &GridSet, axis: Axis) -> Result<std::collections::BTreeSet<[i32; 2]>, GeometryError> {
    let axis = axis.check(s.dim())?;
    let others = axis.others(s.dim());
    Ok(s.cells().map(|c| column_key(c, &others)).collect())
}

fn column_key(c: Cell, others: &[Axis]) -> [i32; 2] {
    let mut key = [0; 2];
    for (j, a) in others.iter().enumerate() {
        key[j] = c[a.index()];
    }
    key
}

/// For every occupied line parallel to `axis`, the number of facets of
/// `∂A ∪ ∂B` normal to `axis` that the line crosses.
pub fn column_crossings(a: &GridSet, b: &GridSet, axis: Axis) -> Result<BTreeMap<[i32; 2], u32>, GeometryError> {
    let axis = axis.check(a.dim())?;
    let faces = FaceSet::of_pair(a, b)?;
    let others = axis.others(a.dim());
    let mut out = BTreeMap::new();
    for f in faces.facets().iter().filter(|f| f.normal == axis) {
        *out.entry(column_key(f.low, &others)).or_insert(0) += 1;
    }
    Ok(out)
}
