//! Exhaustive minimization of the lattice double-bubble energy over small
//! polyomino and polycube pairs, a grid search over the continuous cuboid
//! pair family, and sweeps comparing the two.
//!
//! The exhaustive search writes `E(A,B) = per(A∪B) + |interface|` and also
//! `2E = per(A) + per(B) + per(A∪B)`. The second identity gives the lower
//! bound `E ≥ (p(V_A) + p(V_B) + p(V_A+V_B))/2`, with `p(n)` the least
//! perimeter of an `n`-cell set. The search deepens a target energy `t` from that
//! bound. At each `t` it enumerates unions `U` with `per(U) ≤ 2t − p(V_A) −
//! p(V_B)`, then splits each `U` into a connected `A` and a connected `B`.

mod animals;
mod canonical;
pub mod cuboid;
pub mod sweep;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{io::format_grid, Cell, Configuration, GeometryError, Isometry};
use animals::{adjacencies, connected_subsets, fixed_animals, is_connected, perimeter};
use canonical::{canonical_pair, canonical_set, normalize, split, LabelledCells};

pub use cuboid::{cuboid_family_search, cuboid_pair_energy, CuboidSearch};
pub use sweep::{discrete_dominance_sweep, SweepRow, SweepTable};

/// Default limit on `V_A + V_B` in two dimensions.
pub const GUARDRAIL_2D: u64 = 14;
/// Default limit on `V_A + V_B` in three dimensions.
pub const GUARDRAIL_3D: u64 = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("search supports dimensions 2 and 3, not {0}")]
    InvalidDimension(usize),
    #[error("volumes must be at least 1 (got V_A = {volume_a}, V_B = {volume_b})")]
    ZeroVolume { volume_a: u64, volume_b: u64 },
    #[error("V_A + V_B = {total} exceeds the guardrail {limit}; raise the cell limit explicitly to go further")]
    GuardrailExceeded { total: u64, limit: u64 },
    #[error("bounding box holds {capacity} cells but V_A + V_B = {total}")]
    BoxTooSmall { capacity: u64, total: u64 },
    #[error("a bounding box requires connected sets")]
    BoxWithoutConnectivity,
    #[error("no configuration fits the bounding box")]
    NoConfiguration,
    #[error("{name} = {value} must be a positive finite volume")]
    InvalidVolume { name: &'static str, value: f64 },
    #[error("grid density {0} is below the minimum 64")]
    DensityTooLow(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl SearchError {
    pub fn code(&self) -> &'static str {
        match self {
            SearchError::InvalidDimension(_) => "invalid_dimension",
            SearchError::ZeroVolume { .. } => "zero_volume",
            SearchError::GuardrailExceeded { .. } => "guardrail_exceeded",
            SearchError::BoxTooSmall { .. } => "box_too_small",
            SearchError::BoxWithoutConnectivity => "box_without_connectivity",
            SearchError::NoConfiguration => "no_configuration",
            SearchError::InvalidVolume { .. } => "invalid_volume",
            SearchError::DensityTooLow(_) => "density_too_low",
            SearchError::Geometry(_) => "geometry",
        }
    }
}

/// What to search for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub dimension: usize,
    pub volume_a: u64,
    pub volume_b: u64,
    /// Extents the union must fit in, after some axis isometry. `None` means
    /// unbounded.
    pub bounding_box: Option<[u32; 3]>,
    /// Require A and B to be face-connected.
    pub connected: bool,
    /// Enumerate one union per isometry class instead of every placement.
    pub symmetry_reduction: bool,
    /// Overrides the default guardrail on `V_A + V_B`.
    pub max_cells: Option<u64>,
}

impl SearchSpec {
    pub fn new(dimension: usize, volume_a: u64, volume_b: u64) -> SearchSpec {
        SearchSpec {
            dimension,
            volume_a,
            volume_b,
            bounding_box: None,
            connected: true,
            symmetry_reduction: true,
            max_cells: None,
        }
    }

    pub fn total(&self) -> u64 {
        self.volume_a + self.volume_b
    }

    pub fn guardrail(&self) -> u64 {
        self.max_cells.unwrap_or(if self.dimension == 2 { GUARDRAIL_2D } else { GUARDRAIL_3D })
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if !(2..=3).contains(&self.dimension) {
            return Err(SearchError::InvalidDimension(self.dimension));
        }
        if self.volume_a == 0 || self.volume_b == 0 {
            return Err(SearchError::ZeroVolume { volume_a: self.volume_a, volume_b: self.volume_b });
        }
        let total = self.total();
        if total > self.guardrail() {
            return Err(SearchError::GuardrailExceeded { total, limit: self.guardrail() });
        }
        if let Some(bx) = self.bounding_box {
            if !self.connected {
                return Err(SearchError::BoxWithoutConnectivity);
            }
            let capacity: u64 = bx.iter().take(self.dimension).map(|&e| e as u64).product();
            if capacity < total {
                return Err(SearchError::BoxTooSmall { capacity, total });
            }
        }
        Ok(())
    }

    fn fits(&self, cells: &[Cell]) -> bool {
        let Some(bx) = self.bounding_box else { return true };
        let mut ext = extents(cells);
        let mut room = bx.map(|e| e as i32);
        ext[..self.dimension].sort_unstable();
        room[..self.dimension].sort_unstable();
        (0..self.dimension).all(|i| ext[i] <= room[i])
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Target energies tried by the deepening loop.
    pub targets: u64,
    /// Unions examined, summed over targets.
    pub unions: u64,
    /// Splits of a union whose energy was evaluated.
    pub partitions: u64,
    /// Splits discarded by the perimeter budget before evaluation.
    pub pruned: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub dimension: usize,
    pub volume_a: u64,
    pub volume_b: u64,
    pub min_energy: u64,
    /// `(p(V_A) + p(V_B) + p(V_A+V_B))/2`.
    pub lower_bound: u64,
    /// Optima counted up to translation and axis isometry.
    pub optimum_classes: usize,
    /// One witness per class, in canonical order.
    #[serde(skip)]
    pub witnesses: Vec<Configuration>,
    /// Whether the optimum has a connected union; false when the best
    /// configuration keeps A and B apart.
    pub union_connected: bool,
    /// A configuration with A and B apart attains the same energy.
    pub separated_tie: bool,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn witness_grids(&self) -> Vec<String> {
        self.witnesses.iter().map(format_grid).collect()
    }
}

fn extents(cells: &[Cell]) -> [i32; 3] {
    let mut lo = [i32::MAX; 3];
    let mut hi = [i32::MIN; 3];
    for c in cells {
        for i in 0..3 {
            lo[i] = lo[i].min(c[i]);
            hi[i] = hi[i].max(c[i]);
        }
    }
    [hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1]
}

/// Least perimeter of a `k`-cell set, for `k = 0..=n`.
///
/// In 2D every set has at least two boundary edges per occupied row and per
/// occupied column, so `p(k) ≥ 2 min{w + h : wh ≥ k}`, and filling a `w × h`
/// box row by row attains it. In 3D the values come from enumerating all
/// polycubes.
fn least_perimeters(dim: usize, n: usize) -> Vec<u64> {
    let mut out = vec![0; n + 1];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = if dim == 2 {
            let mut best = u64::MAX;
            for w in 1..=k {
                let h = k.div_ceil(w);
                best = best.min(2 * (w + h) as u64);
            }
            best
        } else {
            let mut best = u64::MAX;
            fixed_animals(3, k, |cells| {
                let mut sorted = cells.to_vec();
                sorted.sort_unstable();
                best = best.min(perimeter(&sorted, 3));
            });
            best
        };
    }
    out
}

/// A `k`-cell set of least perimeter.
fn least_perimeter_shape(dim: usize, k: usize) -> Vec<Cell> {
    if dim == 2 {
        let w = (1..=k).min_by_key(|&w| (w + k.div_ceil(w), w)).unwrap_or(1);
        (0..k).map(|i| [(i % w) as i32, (i / w) as i32, 0]).collect()
    } else {
        let mut best: Option<(u64, Vec<Cell>)> = None;
        fixed_animals(3, k, |cells| {
            let mut sorted = cells.to_vec();
            normalize(&mut sorted);
            let p = perimeter(&sorted, 3);
            if best.as_ref().is_none_or(|(q, s)| p < *q || (p == *q && sorted < *s)) {
                best = Some((p, sorted));
            }
        });
        best.map(|(_, s)| s).unwrap_or_default()
    }
}

/// Sorted difference `u ∖ a` of sorted slices.
fn difference(u: &[Cell], a: &[Cell]) -> Vec<Cell> {
    u.iter().filter(|c| a.binary_search(c).is_err()).copied().collect()
}

/// Unions of a given size, bucketed by perimeter, produced on demand.
struct Unions<'a> {
    spec: &'a SearchSpec,
    isometries: Vec<Isometry>,
    n: usize,
    by_perimeter: BTreeMap<u64, Vec<Vec<Cell>>>,
    /// Perimeters up to this value are in `by_perimeter` (2D only).
    done_up_to: u64,
}

impl<'a> Unions<'a> {
    /// `cap` bounds the perimeters that will ever be requested.
    fn new(spec: &'a SearchSpec, cap: u64) -> Unions<'a> {
        let n = spec.total() as usize;
        let mut unions =
            Unions { spec, isometries: Isometry::all(spec.dimension), n, by_perimeter: BTreeMap::new(), done_up_to: 0 };
        if spec.dimension == 3 {
            unions.enumerate_polycubes(cap);
            unions.done_up_to = u64::MAX;
        }
        unions
    }

    fn keep(&self, cells: &[Cell]) -> bool {
        self.spec.fits(cells) && (!self.spec.symmetry_reduction || canonical_set(cells, &self.isometries) == cells)
    }

    fn enumerate_polycubes(&mut self, cap: u64) {
        let mut found: Vec<(u64, Vec<Cell>)> = Vec::new();
        fixed_animals(3, self.n, |cells| {
            let mut sorted = cells.to_vec();
            sorted.sort_unstable();
            let p = perimeter(&sorted, 3);
            if p <= cap {
                normalize(&mut sorted);
                found.push((p, sorted));
            }
        });
        for (p, cells) in found {
            if self.keep(&cells) {
                self.by_perimeter.entry(p).or_default().push(cells);
            }
        }
    }

    /// Planar unions with perimeter exactly `p`: their bounding box `w × h`
    /// has `2(w + h) ≤ p`, so they are the connected `n`-subsets of small
    /// boxes that touch all four sides.
    fn enumerate_polyominoes(&mut self, p: u64) {
        let n = self.n;
        let mut found = Vec::new();
        for w in 1..=n {
            for h in 1..=n {
                if 2 * (w + h) as u64 > p || w * h < n {
                    continue;
                }
                let cells: Vec<Cell> = (0..w).flat_map(|x| (0..h).map(move |y| [x as i32, y as i32, 0])).collect();
                for removed in (0..cells.len()).combinations(cells.len() - n) {
                    let kept: Vec<Cell> =
                        cells.iter().enumerate().filter(|(i, _)| removed.binary_search(i).is_err()).map(|(_, c)| *c).collect();
                    if extents(&kept)[..2] == [w as i32, h as i32]
                        && perimeter(&kept, 2) == p
                        && is_connected(&kept, 2)
                        && self.keep(&kept)
                    {
                        found.push(kept);
                    }
                }
            }
        }
        found.sort_unstable();
        self.by_perimeter.insert(p, found);
    }

    /// Every kept union with perimeter at most `p`, in increasing perimeter
    /// and then canonical order.
    fn up_to(&mut self, p: u64) -> Vec<(u64, &Vec<Cell>)> {
        if self.spec.dimension == 2 {
            let mut q = self.done_up_to + 2;
            while q <= p {
                self.enumerate_polyominoes(q);
                q += 2;
            }
            self.done_up_to = self.done_up_to.max(p - p % 2);
        }
        self.by_perimeter.range(..=p).flat_map(|(&q, us)| us.iter().map(move |u| (q, u))).collect()
    }
}

struct UnionOutcome {
    optima: Vec<LabelledCells>,
    partitions: u64,
    pruned: u64,
}

/// Splits of `u` into connected `A`, `B` with `E ≤ target`.
fn split_union(u: &[Cell], pu: u64, spec: &SearchSpec, target: u64, least: &[u64], isos: &[Isometry]) -> UnionOutcome {
    let dim = spec.dimension;
    let (a, b) = (spec.volume_a as usize, spec.volume_b as usize);
    // enumerate the smaller side as the connected subset
    let (k, k_is_a) = if a <= b { (a, true) } else { (b, false) };
    let other_least = if k_is_a { least[b] } else { least[a] };
    let budget = (2 * target).saturating_sub(pu + other_least);
    let mut out = UnionOutcome { optima: Vec::new(), partitions: 0, pruned: 0 };
    let mut seen = BTreeSet::new();
    connected_subsets(u, dim, k, |sub| {
        let mut part = sub.to_vec();
        part.sort_unstable();
        let p_part = perimeter(&part, dim);
        if p_part > budget {
            out.pruned += 1;
            return;
        }
        let rest = difference(u, &part);
        if !is_connected(&rest, dim) {
            out.pruned += 1;
            return;
        }
        out.partitions += 1;
        let energy = pu + adjacencies(&part, &rest, dim);
        if energy <= target {
            let (ca, cb) = if k_is_a { (&part, &rest) } else { (&rest, &part) };
            let canon = canonical_pair(ca, cb, isos);
            if seen.insert(canon.clone()) {
                out.optima.push(canon);
            }
        }
    });
    out
}

fn configuration(dim: usize, a: &[Cell], b: &[Cell]) -> Result<Configuration, SearchError> {
    Ok(Configuration::from_cells(dim, a, b)?)
}

/// Canonical form of a configuration under translations and axis
/// isometries: the lexicographically least image, each cell labelled `false`
/// for A and `true` for B.
pub fn canonical_form(cfg: &Configuration) -> Vec<(Cell, bool)> {
    let mut a: Vec<Cell> = cfg.a().cells().collect();
    let mut b: Vec<Cell> = cfg.b().cells().collect();
    a.sort_unstable();
    b.sort_unstable();
    canonical_pair(&a, &b, &Isometry::all(cfg.dim()))
}

/// Exhaustive minimum for a planar spec.
pub fn brute_force_2d(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    if spec.dimension != 2 {
        return Err(SearchError::InvalidDimension(spec.dimension));
    }
    brute_force(spec)
}

/// Exhaustive minimum for a spatial spec.
pub fn brute_force_3d(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    if spec.dimension != 3 {
        return Err(SearchError::InvalidDimension(spec.dimension));
    }
    brute_force(spec)
}

/// Exhaustive minimum of the lattice double-bubble energy.
pub fn brute_force(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    spec.validate()?;
    if !spec.connected {
        return brute_force_unrestricted(spec);
    }
    let dim = spec.dimension;
    let (a, b, n) = (spec.volume_a as usize, spec.volume_b as usize, spec.total() as usize);
    let least = least_perimeters(dim, n);
    let lower_bound = (least[a] + least[b] + least[n]) / 2;
    let separated = least[a] + least[b];
    let ceiling = if spec.bounding_box.is_some() { (3 * dim * n) as u64 } else { separated };
    let isos = Isometry::all(dim);
    let mut unions = Unions::new(spec, (2 * ceiling).saturating_sub(least[a] + least[b]));
    let mut stats = SearchStats::default();

    for target in lower_bound..=ceiling {
        stats.targets += 1;
        let pu_max = (2 * target).saturating_sub(least[a] + least[b]);
        if pu_max < least[n] {
            continue;
        }
        let candidates = unions.up_to(pu_max);
        stats.unions += candidates.len() as u64;
        let outcomes: Vec<UnionOutcome> =
            candidates.par_iter().map(|(pu, u)| split_union(u, *pu, spec, target, &least, &isos)).collect();
        let mut optima = BTreeSet::new();
        for o in outcomes {
            stats.partitions += o.partitions;
            stats.pruned += o.pruned;
            optima.extend(o.optima);
        }
        if !optima.is_empty() {
            let witnesses = optima
                .iter()
                .map(|l| {
                    let (ca, cb) = split(l);
                    configuration(dim, &ca, &cb)
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(SearchResult {
                dimension: dim,
                volume_a: spec.volume_a,
                volume_b: spec.volume_b,
                min_energy: target,
                lower_bound,
                optimum_classes: witnesses.len(),
                witnesses,
                union_connected: true,
                separated_tie: spec.bounding_box.is_none() && target == separated,
                stats,
            });
        }
    }
    if spec.bounding_box.is_some() {
        return Err(SearchError::NoConfiguration);
    }
    let witness = separated_witness(dim, a, b)?;
    Ok(SearchResult {
        dimension: dim,
        volume_a: spec.volume_a,
        volume_b: spec.volume_b,
        min_energy: separated,
        lower_bound,
        optimum_classes: 1,
        witnesses: vec![witness],
        union_connected: false,
        separated_tie: false,
        stats,
    })
}

/// Least-perimeter shapes for A and B, one cell apart.
fn separated_witness(dim: usize, a: usize, b: usize) -> Result<Configuration, SearchError> {
    let sa = least_perimeter_shape(dim, a);
    let offset = extents(&sa)[0] + 1;
    let sb: Vec<Cell> = least_perimeter_shape(dim, b).into_iter().map(|c| [c[0] + offset, c[1], c[2]]).collect();
    configuration(dim, &sa, &sb)
}

/// Search with A and B allowed to be disconnected. The energy is additive
/// over the components of the union, so the optimum combines optimal
/// connected unions of smaller volumes.
fn brute_force_unrestricted(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    let dim = spec.dimension;
    let (a, b, n) = (spec.volume_a as usize, spec.volume_b as usize, spec.total() as usize);
    let isos = Isometry::all(dim);
    let least = least_perimeters(dim, n);
    let lower_bound = (least[a] + least[b] + least[n]) / 2;
    let mut stats = SearchStats::default();

    // best[i][j]: least energy of a connected union with i A-cells and j B-cells
    let mut best: Vec<Vec<Option<(u64, LabelledCells)>>> = vec![vec![None; b + 1]; a + 1];
    let mut classes: BTreeSet<LabelledCells> = BTreeSet::new();
    for k in 1..=n {
        let mut shapes = Vec::new();
        fixed_animals(dim, k, |cells| {
            let mut sorted = cells.to_vec();
            normalize(&mut sorted);
            if !spec.symmetry_reduction || canonical_set(&sorted, &isos) == sorted {
                shapes.push(sorted);
            }
        });
        stats.unions += shapes.len() as u64;
        for u in &shapes {
            let pu = perimeter(u, dim);
            for mask in 0u64..(1 << k) {
                let i = mask.count_ones() as usize;
                let j = k - i;
                if i > a || j > b {
                    continue;
                }
                stats.partitions += 1;
                let (pa, pb): (Vec<Cell>, Vec<Cell>) = {
                    let mut pa = Vec::new();
                    let mut pb = Vec::new();
                    for (t, &c) in u.iter().enumerate() {
                        if mask >> t & 1 == 1 {
                            pa.push(c)
                        } else {
                            pb.push(c)
                        }
                    }
                    (pa, pb)
                };
                let energy = pu + adjacencies(&pa, &pb, dim);
                let slot = &mut best[i][j];
                let better = match slot {
                    None => true,
                    Some((e, _)) => energy < *e,
                };
                if i == a && j == b {
                    let current = slot.as_ref().map_or(u64::MAX, |s| s.0);
                    if energy < current {
                        classes.clear();
                    }
                    if energy <= current {
                        classes.insert(canonical_pair(&pa, &pb, &isos));
                    }
                }
                if better || matches!(slot, Some((e, _)) if energy == *e) {
                    let canon = canonical_pair(&pa, &pb, &isos);
                    if better || slot.as_ref().is_some_and(|s| canon < s.1) {
                        *slot = Some((energy, canon));
                    }
                }
            }
        }
    }

    // combine components: any[i][j] = min(best, any[i1][j1] + any[i-i1][j-j1])
    let mut any: Vec<Vec<Option<(u64, Vec<LabelledCells>)>>> = vec![vec![None; b + 1]; a + 1];
    for i in 0..=a {
        for j in 0..=b {
            if i + j == 0 {
                continue;
            }
            let mut cur: Option<(u64, Vec<LabelledCells>)> = best[i][j].clone().map(|(e, l)| (e, vec![l]));
            for i1 in 0..=i {
                for j1 in 0..=j {
                    let (i2, j2) = (i - i1, j - j1);
                    if i1 + j1 == 0 || i2 + j2 == 0 || (i1, j1) > (i2, j2) {
                        continue;
                    }
                    if let (Some((e1, p1)), Some((e2, p2))) = (&any[i1][j1], &any[i2][j2]) {
                        if cur.as_ref().is_none_or(|(e, _)| e1 + e2 < *e) {
                            cur = Some((e1 + e2, p1.iter().chain(p2).cloned().collect()));
                        }
                    }
                }
            }
            any[i][j] = cur;
        }
    }
    let (energy, parts) = any[a][b].clone().ok_or(SearchError::NoConfiguration)?;
    let union_connected = parts.len() == 1;
    let witnesses = if union_connected {
        classes
            .iter()
            .map(|l| {
                let (ca, cb) = split(l);
                configuration(dim, &ca, &cb)
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let mut ca = Vec::new();
        let mut cb = Vec::new();
        let mut offset = 0;
        for part in &parts {
            let cells: Vec<Cell> = part.iter().map(|(c, _)| *c).collect();
            let width = extents(&cells)[0];
            for (c, label) in part {
                let shifted = [c[0] + offset, c[1], c[2]];
                if *label {
                    cb.push(shifted)
                } else {
                    ca.push(shifted)
                }
            }
            offset += width + 1;
        }
        vec![configuration(dim, &ca, &cb)?]
    };
    Ok(SearchResult {
        dimension: dim,
        volume_a: spec.volume_a,
        volume_b: spec.volume_b,
        min_energy: energy,
        lower_bound,
        optimum_classes: witnesses.len(),
        witnesses,
        union_connected,
        separated_tie: false,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::double_bubble_energy;

    fn run(dim: usize, a: u64, b: u64) -> SearchResult {
        brute_force(&SearchSpec::new(dim, a, b)).unwrap()
    }

    fn assert_witnesses(r: &SearchResult) {
        assert!(!r.witnesses.is_empty());
        for w in &r.witnesses {
            assert_eq!(double_bubble_energy(w).energy, r.min_energy);
            assert_eq!((w.volume_a(), w.volume_b()), (r.volume_a, r.volume_b));
        }
    }

    #[test]
    fn planar_anchor_cases() {
        let r = run(2, 2, 4);
        assert_eq!(r.min_energy, 12);
        assert_witnesses(&r);
        let r = run(2, 1, 8);
        assert_eq!(r.min_energy, 14);
        assert_witnesses(&r);
        let r = run(2, 1, 1);
        assert_eq!(r.min_energy, 7);
        assert_eq!(r.optimum_classes, 1);
    }

    #[test]
    fn two_by_four_witness_is_side_by_side() {
        let r = run(2, 2, 4);
        let side_by_side = r.witnesses.iter().any(|w| {
            let e = double_bubble_energy(w);
            e.interface == 2 && e.perimeter_a == 6 && e.perimeter_b == 8
        });
        assert!(side_by_side);
    }

    #[test]
    fn spatial_anchor_cases() {
        let r = run(3, 1, 1);
        assert_eq!(r.min_energy, 11);
        assert_eq!(r.optimum_classes, 1);
        assert_witnesses(&r);
        let r = run(3, 2, 2);
        assert_eq!(r.min_energy, 18);
        assert_witnesses(&r);
    }

    #[test]
    fn symmetry_reduction_does_not_change_results() {
        for (dim, a, b) in [(2, 2, 3), (2, 3, 3), (3, 1, 2), (3, 2, 2)] {
            let on = run(dim, a, b);
            let mut spec = SearchSpec::new(dim, a, b);
            spec.symmetry_reduction = false;
            let off = brute_force(&spec).unwrap();
            assert_eq!(on.min_energy, off.min_energy);
            assert_eq!(on.optimum_classes, off.optimum_classes);
            assert_eq!(on.witnesses, off.witnesses);
            assert!(off.stats.unions >= on.stats.unions);
        }
    }

    #[test]
    fn disconnected_sets_do_not_help_at_small_sizes() {
        for (a, b) in [(1, 1), (1, 3), (2, 2), (2, 4), (3, 5)] {
            let mut spec = SearchSpec::new(2, a, b);
            let connected = brute_force(&spec).unwrap();
            spec.connected = false;
            let free = brute_force(&spec).unwrap();
            assert_eq!(connected.min_energy, free.min_energy, "({a},{b})");
            assert!(free.union_connected);
            assert_witnesses(&free);
        }
    }

    #[test]
    fn guardrail_and_validation() {
        let spec = SearchSpec::new(2, 8, 8);
        assert!(matches!(brute_force(&spec), Err(SearchError::GuardrailExceeded { total: 16, limit: 14 })));
        let spec = SearchSpec::new(3, 0, 2);
        assert!(matches!(brute_force(&spec), Err(SearchError::ZeroVolume { .. })));
        let mut spec = SearchSpec::new(2, 2, 2);
        spec.bounding_box = Some([1, 3, 1]);
        assert!(matches!(brute_force(&spec), Err(SearchError::BoxTooSmall { .. })));
        assert!(matches!(brute_force_3d(&SearchSpec::new(2, 1, 1)), Err(SearchError::InvalidDimension(2))));
    }

    #[test]
    fn bounding_box_restricts_shapes() {
        let mut spec = SearchSpec::new(2, 2, 2);
        spec.bounding_box = Some([4, 1, 1]);
        let line = brute_force(&spec).unwrap();
        assert_eq!(line.min_energy, 11);
        spec.bounding_box = Some([1, 4, 1]);
        assert_eq!(brute_force(&spec).unwrap().min_energy, 11);
        assert_eq!(run(2, 2, 2).min_energy, 10);
    }

    #[test]
    fn least_perimeters_known_values() {
        assert_eq!(least_perimeters(2, 9)[1..], [4, 6, 8, 8, 10, 10, 12, 12, 12]);
        assert_eq!(least_perimeters(3, 8)[1..], [6, 10, 14, 16, 20, 22, 24, 24]);
        let square = least_perimeter_shape(2, 9);
        let mut sorted = square.clone();
        sorted.sort_unstable();
        assert_eq!(perimeter(&sorted, 2), 12);
    }
}
