//! Seeded random voxel configurations for exercising the slicing bound.
//!
//! A corpus mixes three kinds of instance inside an `n³` box: connected pairs
//! grown cell by cell, products of a random planar pair stacked along a
//! random axis, and products of lattice pairs known to attain the continuous
//! planar minimum.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::{Axis, Cell, Configuration, GridSet};

/// Volume ratios `V_B / V_A` used by the corpus, as `(numerator, denominator)`.
pub const RATIOS: [(u32, u32); 5] = [(1, 2), (2, 3), (1, 1), (3, 2), (2, 1)];

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InstanceKind {
    Grown,
    Product,
    PlanarOptimalProduct,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusInstance {
    pub index: usize,
    pub kind: InstanceKind,
    /// For products, the axis along which the slices are constant.
    pub product_axis: Option<Axis>,
    #[serde(skip)]
    pub config: Configuration,
}

#[derive(Debug, Clone, Copy)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    pub box_side: i32,
    /// Upper bound on `V_A + V_B` for grown pairs.
    pub max_cells: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { seed: DEFAULT_SEED, count: 200, box_side: 8, max_cells: 40 }
    }
}

/// Lattice planar pairs `(A cells, B cells)` whose energy equals the
/// continuous planar minimum: widths/heights of two rectangles placed side
/// by side.
const PLANAR_OPTIMAL: [([usize; 2], [usize; 2]); 5] = [
    ([1, 2], [2, 2]),
    ([2, 2], [1, 2]),
    ([3, 4], [3, 4]),
    ([2, 4], [4, 4]),
    ([4, 4], [2, 4]),
];

pub fn generate(spec: &CorpusSpec) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for index in 0..spec.count {
        let (num, den) = RATIOS[index % RATIOS.len()];
        // every fifth instance is planted; one in four of those planar-optimal
        let (kind, product_axis, config) = if index % 5 == 4 {
            let axis = *Axis::ALL.choose(&mut rng).expect("nonempty");
            if (index / 5) % 4 == 3 {
                let (wa, wb) = PLANAR_OPTIMAL[(index / 20) % PLANAR_OPTIMAL.len()];
                (InstanceKind::PlanarOptimalProduct, Some(axis), planar_optimal_product(&mut rng, spec, wa, wb, axis))
            } else {
                (InstanceKind::Product, Some(axis), random_product(&mut rng, spec, num, den, axis))
            }
        } else {
            let k_max = (spec.max_cells as u32 / (num + den)).max(1);
            let k = rng.gen_range(1..=k_max);
            (InstanceKind::Grown, None, grown_pair(&mut rng, 3, spec.box_side, (den * k) as usize, (num * k) as usize))
        };
        out.push(CorpusInstance { index, kind, product_axis, config });
    }
    out
}

fn neighbours(c: Cell, dim: usize) -> impl Iterator<Item = Cell> {
    (0..dim).flat_map(move |k| {
        [-1, 1].into_iter().map(move |d| {
            let mut n = c;
            n[k] += d;
            n
        })
    })
}

fn in_box(c: Cell, dim: usize, side: i32) -> bool {
    (0..dim).all(|k| (0..side).contains(&c[k]))
}

/// Grows `target` cells from `seeds`, avoiding `blocked`, preferring cells
/// with many occupied neighbours so shapes range from compact to stringy.
fn grow(
    rng: &mut ChaCha8Rng,
    dim: usize,
    side: i32,
    seed: Cell,
    target: usize,
    blocked: &BTreeSet<Cell>,
) -> Option<BTreeSet<Cell>> {
    let mut set = BTreeSet::from([seed]);
    let compactness: f64 = rng.gen_range(0.0..3.0);
    while set.len() < target {
        let frontier: Vec<Cell> = set
            .iter()
            .flat_map(|&c| neighbours(c, dim))
            .filter(|&n| in_box(n, dim, side) && !set.contains(&n) && !blocked.contains(&n))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if frontier.is_empty() {
            return None;
        }
        let weights: Vec<f64> = frontier
            .iter()
            .map(|&c| {
                let occupied = neighbours(c, dim).filter(|n| set.contains(n)).count() as f64;
                occupied.powf(compactness)
            })
            .collect();
        let total: f64 = weights.iter().sum();
        let mut pick = rng.gen_range(0.0..total);
        let mut chosen = frontier[frontier.len() - 1];
        for (c, w) in frontier.iter().zip(&weights) {
            if pick < *w {
                chosen = *c;
                break;
            }
            pick -= w;
        }
        set.insert(chosen);
    }
    Some(set)
}

/// A connected `A` of `va` cells and a connected `B` of `vb` cells touching it.
pub fn grown_pair(rng: &mut ChaCha8Rng, dim: usize, side: i32, va: usize, vb: usize) -> Configuration {
    loop {
        let mut seed = [0; 3];
        for s in seed.iter_mut().take(dim) {
            *s = rng.gen_range(0..side);
        }
        let Some(a) = grow(rng, dim, side, seed, va, &BTreeSet::new()) else { continue };
        let touching: Vec<Cell> = a
            .iter()
            .flat_map(|&c| neighbours(c, dim))
            .filter(|&n| in_box(n, dim, side) && !a.contains(&n))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let Some(&b_seed) = touching.choose(rng) else { continue };
        let Some(b) = grow(rng, dim, side, b_seed, vb, &a) else { continue };
        let a = GridSet::from_cells(dim, a).expect("cells lie in the box");
        let b = GridSet::from_cells(dim, b).expect("cells lie in the box");
        return Configuration::new(a, b).expect("grown sets are disjoint and nonempty");
    }
}

/// Lifts planar cells to 3D with the planar axes mapped onto the two axes
/// other than `axis`, stacking `height` copies along `axis`.
fn stack(cells: &BTreeSet<Cell>, axis: Axis, height: i32) -> GridSet {
    let others = axis.others(3);
    let lifted = cells.iter().flat_map(|c| {
        let others = others.clone();
        (0..height).map(move |t| {
            let mut out = [0; 3];
            out[others[0].index()] = c[0];
            out[others[1].index()] = c[1];
            out[axis.index()] = t;
            out
        })
    });
    GridSet::from_cells(3, lifted).expect("three-dimensional cells")
}

fn random_product(rng: &mut ChaCha8Rng, spec: &CorpusSpec, num: u32, den: u32, axis: Axis) -> Configuration {
    let k_max = (16 / (num + den)).max(1);
    let k = rng.gen_range(1..=k_max);
    let planar = grown_pair(rng, 2, spec.box_side, (den * k) as usize, (num * k) as usize);
    let height = rng.gen_range(1..=3);
    let a: BTreeSet<Cell> = planar.a().cells().collect();
    let b: BTreeSet<Cell> = planar.b().cells().collect();
    Configuration::new(stack(&a, axis, height), stack(&b, axis, height)).expect("stacking keeps disjointness")
}

fn planar_optimal_product(
    rng: &mut ChaCha8Rng,
    spec: &CorpusSpec,
    size_a: [usize; 2],
    size_b: [usize; 2],
    axis: Axis,
) -> Configuration {
    let rect = |x0: usize, size: [usize; 2]| -> BTreeSet<Cell> {
        (0..size[0]).flat_map(|x| (0..size[1]).map(move |y| [(x0 + x) as i32, y as i32, 0])).collect()
    };
    let a = rect(0, size_a);
    let b = rect(size_a[0], size_b);
    let height = rng.gen_range(1..=2.min(spec.box_side));
    Configuration::new(stack(&a, axis, height), stack(&b, axis, height)).expect("rectangles are disjoint")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slicing::constant_slices;

    #[test]
    fn corpus_is_deterministic_and_respects_ratios() {
        let spec = CorpusSpec { count: 40, ..CorpusSpec::default() };
        let first = generate(&spec);
        let second = generate(&spec);
        for (x, y) in first.iter().zip(&second) {
            assert_eq!(x.config, y.config);
        }
        for inst in &first {
            let (num, den) = RATIOS[inst.index % RATIOS.len()];
            if inst.kind != InstanceKind::PlanarOptimalProduct {
                assert_eq!(inst.config.ratio(), num_rational::Ratio::new(num as i64, den as i64));
            }
            let b = inst.config.bounds();
            assert!((0..3).all(|k| b.min[k] >= 0 && b.max[k] < spec.box_side));
        }
    }

    #[test]
    fn products_have_constant_slices() {
        let spec = CorpusSpec { count: 40, ..CorpusSpec::default() };
        for inst in generate(&spec) {
            if let Some(axis) = inst.product_axis {
                assert!(constant_slices(&inst.config, axis).unwrap());
            }
        }
    }
}
