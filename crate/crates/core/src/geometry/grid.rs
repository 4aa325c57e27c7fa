use std::fmt;

use serde::{Deserialize, Serialize};

use super::GeometryError;

/// Integer lattice cell. Unused trailing coordinates are zero.
pub type Cell = [i32; 3];

/// A coordinate direction of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Zero-based coordinate index.
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Axis> {
        Axis::ALL.get(i).copied()
    }

    /// Parses the one-based numbering used on the command line (1 = x).
    pub fn from_one_based(n: usize) -> Option<Axis> {
        n.checked_sub(1).and_then(Axis::from_index)
    }

    pub fn one_based(self) -> usize {
        self.index() + 1
    }

    /// Axes of a `dim`-dimensional lattice.
    pub fn axes(dim: usize) -> &'static [Axis] {
        &Axis::ALL[..dim.min(3)]
    }

    /// The remaining axes of a `dim`-dimensional lattice, in increasing order.
    pub fn others(self, dim: usize) -> Vec<Axis> {
        Axis::axes(dim).iter().copied().filter(|&a| a != self).collect()
    }

    pub fn check(self, dim: usize) -> Result<Axis, GeometryError> {
        if self.index() < dim {
            Ok(self)
        } else {
            Err(GeometryError::InvalidAxis { axis: self.one_based(), dim })
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_based())
    }
}

/// Inclusive integer bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub min: Cell,
    pub max: Cell,
}

impl Bounds {
    pub fn union(self, other: Bounds) -> Bounds {
        let mut out = self;
        for i in 0..3 {
            out.min[i] = out.min[i].min(other.min[i]);
            out.max[i] = out.max[i].max(other.max[i]);
        }
        out
    }

    pub fn extent(&self, axis: Axis) -> usize {
        (self.max[axis.index()] - self.min[axis.index()] + 1) as usize
    }
}

/// A finite set of unit cells on the 1-, 2- or 3-dimensional integer lattice.
///
/// Occupancy is a dense mask over the tight bounding box, so two sets with the
/// same cells compare equal regardless of how they were built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GridSet {
    dim: usize,
    origin: Cell,
    extent: [usize; 3],
    mask: Vec<bool>,
    volume: u64,
}

impl GridSet {
    pub fn empty(dim: usize) -> Result<GridSet, GeometryError> {
        if !(1..=3).contains(&dim) {
            return Err(GeometryError::InvalidDimension(dim));
        }
        Ok(GridSet { dim, origin: [0; 3], extent: [0; 3], mask: Vec::new(), volume: 0 })
    }

    /// Builds a set from cells. Duplicates are merged; coordinates beyond
    /// `dim` must be zero.
    pub fn from_cells<I>(dim: usize, cells: I) -> Result<GridSet, GeometryError>
    where
        I: IntoIterator<Item = Cell>,
    {
        let mut set = GridSet::empty(dim)?;
        let cells: Vec<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Ok(set);
        }
        let mut min = cells[0];
        let mut max = cells[0];
        for c in &cells {
            if c[dim..].iter().any(|&v| v != 0) {
                return Err(GeometryError::CellOutsideDimension { cell: *c, dim });
            }
            for i in 0..3 {
                min[i] = min[i].min(c[i]);
                max[i] = max[i].max(c[i]);
            }
        }
        set.origin = min;
        for i in 0..3 {
            set.extent[i] = (max[i] - min[i] + 1) as usize;
        }
        set.mask = vec![false; set.extent.iter().product()];
        for c in &cells {
            let idx = set.index_of(*c).expect("cell inside computed bounds");
            if !set.mask[idx] {
                set.mask[idx] = true;
                set.volume += 1;
            }
        }
        Ok(set)
    }

    /// Axis-aligned box `[lo, lo + size)` in cell units.
    pub fn cuboid(dim: usize, lo: Cell, size: [usize; 3]) -> Result<GridSet, GeometryError> {
        let mut cells = Vec::new();
        let size = [size[0], if dim >= 2 { size[1] } else { 1 }, if dim >= 3 { size[2] } else { 1 }];
        for z in 0..size[2] as i32 {
            for y in 0..size[1] as i32 {
                for x in 0..size[0] as i32 {
                    cells.push([lo[0] + x, lo[1] + y, lo[2] + z]);
                }
            }
        }
        GridSet::from_cells(dim, cells)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn volume(&self) -> u64 {
        self.volume
    }

    pub fn is_empty(&self) -> bool {
        self.volume == 0
    }

    pub fn bounds(&self) -> Option<Bounds> {
        if self.is_empty() {
            return None;
        }
        let mut max = self.origin;
        for i in 0..3 {
            max[i] += self.extent[i] as i32 - 1;
        }
        Some(Bounds { min: self.origin, max })
    }

    fn index_of(&self, c: Cell) -> Option<usize> {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for i in 0..3 {
            let off = c[i] - self.origin[i];
            if off < 0 || off as usize >= self.extent[i] {
                return None;
            }
            idx += off as usize * stride;
            stride *= self.extent[i];
        }
        Some(idx)
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.index_of(c).is_some_and(|i| self.mask[i])
    }

    /// Occupied cells in z-major, then y, then x order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let [ex, ey, _] = self.extent;
        let origin = self.origin;
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| {
            let x = (i % ex) as i32;
            let y = ((i / ex) % ey) as i32;
            let z = (i / (ex * ey)) as i32;
            [origin[0] + x, origin[1] + y, origin[2] + z]
        })
    }

    pub fn is_disjoint(&self, other: &GridSet) -> bool {
        self.first_common_cell(other).is_none()
    }

    pub fn first_common_cell(&self, other: &GridSet) -> Option<Cell> {
        let (small, large) = if self.volume <= other.volume { (self, other) } else { (other, self) };
        small.cells().find(|&c| large.contains(c))
    }

    pub fn union(&self, other: &GridSet) -> Result<GridSet, GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch(self.dim, other.dim));
        }
        GridSet::from_cells(self.dim, self.cells().chain(other.cells()))
    }

    pub fn translate(&self, by: Cell) -> GridSet {
        let mut out = self.clone();
        if !out.is_empty() {
            for i in 0..self.dim {
                out.origin[i] += by[i];
            }
        }
        out
    }

    /// Applies a signed axis permutation: output coordinate `i` is
    /// `sign[i] * c[perm[i]]`.
    pub fn transform(&self, iso: &Isometry) -> GridSet {
        GridSet::from_cells(self.dim, self.cells().map(|c| iso.apply(c))).expect("isometry preserves dimension")
    }

    /// The `(dim - 1)`-dimensional set of cells at `level` along `axis`, with
    /// the remaining coordinates kept in increasing axis order.
    pub fn slice(&self, axis: Axis, level: i32) -> Result<GridSet, GeometryError> {
        let axis = axis.check(self.dim)?;
        if self.dim == 1 {
            return Err(GeometryError::InvalidDimension(0));
        }
        let others = axis.others(self.dim);
        let cells = self.cells().filter(|c| c[axis.index()] == level).map(|c| {
            let mut out = [0; 3];
            for (j, a) in others.iter().enumerate() {
                out[j] = c[a.index()];
            }
            out
        });
        GridSet::from_cells(self.dim - 1, cells)
    }

    /// Number of occupied cells at each level along `axis`, over the bounding
    /// range of the set.
    pub fn level_counts(&self, axis: Axis) -> Vec<(i32, u64)> {
        let Some(b) = self.bounds() else { return Vec::new() };
        let k = axis.index();
        let lo = b.min[k];
        let mut counts = vec![0u64; (b.max[k] - lo + 1) as usize];
        for c in self.cells() {
            counts[(c[k] - lo) as usize] += 1;
        }
        counts.into_iter().enumerate().map(|(i, n)| (lo + i as i32, n)).collect()
    }
}

impl fmt::Debug for GridSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridSet")
            .field("dim", &self.dim)
            .field("volume", &self.volume)
            .field("cells", &self.cells().collect::<Vec<_>>())
            .finish()
    }
}

/// Signed permutation of the coordinate axes (an axis-preserving isometry
/// fixing the origin).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Isometry {
    pub perm: [usize; 3],
    pub sign: [i32; 3],
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry { perm: [0, 1, 2], sign: [1, 1, 1] };

    pub fn apply(&self, c: Cell) -> Cell {
        [
            self.sign[0] * c[self.perm[0]],
            self.sign[1] * c[self.perm[1]],
            self.sign[2] * c[self.perm[2]],
        ]
    }

    /// All `2^dim * dim!` isometries of the `dim`-dimensional lattice; the
    /// unused axes stay fixed.
    pub fn all(dim: usize) -> Vec<Isometry> {
        let perms: Vec<[usize; 3]> = match dim {
            1 => vec![[0, 1, 2]],
            2 => vec![[0, 1, 2], [1, 0, 2]],
            _ => vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]],
        };
        let mut out = Vec::new();
        for p in perms {
            for bits in 0..(1u32 << dim) {
                let mut sign = [1; 3];
                for (i, s) in sign.iter_mut().enumerate().take(dim) {
                    if bits >> i & 1 == 1 {
                        *s = -1;
                    }
                }
                out.push(Isometry { perm: p, sign });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tight_bounds_make_equality_structural() {
        let a = GridSet::from_cells(2, [[3, 4, 0], [4, 4, 0]]).unwrap();
        let b = GridSet::from_cells(2, [[4, 4, 0], [3, 4, 0], [3, 4, 0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.volume(), 2);
        assert_eq!(a.bounds().unwrap().min, [3, 4, 0]);
    }

    #[test]
    fn rejects_cells_beyond_dimension() {
        assert!(GridSet::from_cells(2, [[0, 0, 1]]).is_err());
        assert!(GridSet::empty(4).is_err());
    }

    #[test]
    fn slice_keeps_remaining_axes_in_order() {
        let s = GridSet::cuboid(3, [0, 0, 0], [1, 2, 3]).unwrap();
        let t0 = s.slice(Axis::Z, 0).unwrap();
        assert_eq!(t0.dim(), 2);
        assert_eq!(t0.volume(), 2);
        let x = s.slice(Axis::X, 0).unwrap();
        assert_eq!(x.volume(), 6);
        assert_eq!(x.bounds().unwrap().max, [1, 2, 0]);
        assert!(s.slice(Axis::Z, 7).unwrap().is_empty());
        assert!(GridSet::empty(3).unwrap().slice(Axis::Y, 0).unwrap().is_empty());
    }

    #[test]
    fn isometry_counts() {
        assert_eq!(Isometry::all(2).len(), 8);
        assert_eq!(Isometry::all(3).len(), 48);
    }

    #[test]
    fn disjointness() {
        let a = GridSet::cuboid(3, [0, 0, 0], [2, 1, 1]).unwrap();
        let b = GridSet::cuboid(3, [1, 0, 0], [2, 1, 1]).unwrap();
        assert_eq!(a.first_common_cell(&b), Some([1, 0, 0]));
        assert!(a.is_disjoint(&b.translate([1, 0, 0])));
    }
}
