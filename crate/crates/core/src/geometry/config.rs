use num_rational::Ratio;

use super::{double_bubble_energy, EnergyBreakdown, GeometryError, GridSet, Isometry, Which};

/// An ordered pair of disjoint, nonempty lattice sets with exact volume ratio
/// `r = V_B / V_A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    a: GridSet,
    b: GridSet,
    ratio: Ratio<i64>,
}

impl Configuration {
    pub fn new(a: GridSet, b: GridSet) -> Result<Configuration, GeometryError> {
        if a.dim() != b.dim() {
            return Err(GeometryError::DimensionMismatch(a.dim(), b.dim()));
        }
        if a.dim() < 2 {
            return Err(GeometryError::InvalidDimension(a.dim()));
        }
        if a.is_empty() {
            return Err(GeometryError::EmptySet(Which::A));
        }
        if b.is_empty() {
            return Err(GeometryError::EmptySet(Which::B));
        }
        if let Some(cell) = a.first_common_cell(&b) {
            return Err(GeometryError::Overlap { cell });
        }
        let ratio = Ratio::new(b.volume() as i64, a.volume() as i64);
        Ok(Configuration { a, b, ratio })
    }

    pub fn from_cells(dim: usize, a: &[[i32; 3]], b: &[[i32; 3]]) -> Result<Configuration, GeometryError> {
        Configuration::new(GridSet::from_cells(dim, a.iter().copied())?, GridSet::from_cells(dim, b.iter().copied())?)
    }

    pub fn a(&self) -> &GridSet {
        &self.a
    }

    pub fn b(&self) -> &GridSet {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn volume_a(&self) -> u64 {
        self.a.volume()
    }

    pub fn volume_b(&self) -> u64 {
        self.b.volume()
    }

    /// `V_B / V_A` in lowest terms.
    pub fn ratio(&self) -> Ratio<i64> {
        self.ratio
    }

    pub fn energy(&self) -> EnergyBreakdown {
        double_bubble_energy(self)
    }

    pub fn swapped(&self) -> Configuration {
        Configuration::new(self.b.clone(), self.a.clone()).expect("swap preserves validity")
    }

    pub fn translate(&self, by: [i32; 3]) -> Configuration {
        Configuration { a: self.a.translate(by), b: self.b.translate(by), ratio: self.ratio }
    }

    pub fn transform(&self, iso: &Isometry) -> Configuration {
        Configuration { a: self.a.transform(iso), b: self.b.transform(iso), ratio: self.ratio }
    }

    /// Joint bounding box of `A ∪ B`.
    pub fn bounds(&self) -> super::Bounds {
        self.a.bounds().expect("nonempty").union(self.b.bounds().expect("nonempty"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_invariants() {
        let a = GridSet::cuboid(3, [0, 0, 0], [1, 1, 1]).unwrap();
        let b = GridSet::cuboid(3, [1, 0, 0], [2, 1, 1]).unwrap();
        let cfg = Configuration::new(a.clone(), b.clone()).unwrap();
        assert_eq!(cfg.ratio(), Ratio::new(2, 1));
        assert!(matches!(Configuration::new(a.clone(), a.clone()), Err(GeometryError::Overlap { .. })));
        assert!(matches!(
            Configuration::new(a.clone(), GridSet::empty(3).unwrap()),
            Err(GeometryError::EmptySet(Which::B))
        ));
        let flat = GridSet::cuboid(2, [5, 5, 0], [1, 1, 1]).unwrap();
        assert!(matches!(Configuration::new(a, flat), Err(GeometryError::DimensionMismatch(3, 2))));
    }

    #[test]
    fn energy_examples() {
        let cubes = Configuration::from_cells(3, &[[0, 0, 0]], &[[1, 0, 0]]).unwrap();
        assert_eq!(cubes.energy().energy, 11);
        let bars = Configuration::new(
            GridSet::cuboid(3, [0, 0, 0], [1, 1, 2]).unwrap(),
            GridSet::cuboid(3, [1, 0, 0], [1, 1, 2]).unwrap(),
        )
        .unwrap();
        let e = bars.energy();
        assert_eq!((e.perimeter_a, e.perimeter_b, e.interface, e.energy), (10, 10, 2, 18));
        // 2D: 1x2 strip beside a 2x2 square along the length-2 edge
        let planar = Configuration::new(
            GridSet::cuboid(2, [-1, 0, 0], [1, 2, 1]).unwrap(),
            GridSet::cuboid(2, [0, 0, 0], [2, 2, 1]).unwrap(),
        )
        .unwrap();
        let e = planar.energy();
        assert_eq!((e.perimeter_a, e.perimeter_b, e.interface, e.energy), (6, 8, 2, 12));
    }
}
