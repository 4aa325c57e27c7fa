//! Lattice-animal enumeration (Redelmeier's algorithm) and small cell-set
//! utilities.

use std::collections::HashSet;

use crate::geometry::Cell;

/// Face neighbours of `c` in dimension `dim`.
pub(crate) fn neighbours(c: Cell, dim: usize) -> impl Iterator<Item = Cell> {
    (0..dim).flat_map(move |axis| {
        [-1, 1].into_iter().map(move |d| {
            let mut n = c;
            n[axis] += d;
            n
        })
    })
}

/// Order in which the root of an animal is its smallest cell.
fn key(c: Cell) -> (i32, i32, i32) {
    (c[2], c[1], c[0])
}

/// Enumerates every connected set of `k` cells whose smallest cell (in
/// `(z, y, x)` order) is `root` and whose other cells satisfy `admissible`.
/// Each set is visited exactly once.
pub(crate) fn for_each_animal<A, V>(dim: usize, k: usize, root: Cell, admissible: A, mut visit: V)
where
    A: Fn(Cell) -> bool,
    V: FnMut(&[Cell]),
{
    if k == 0 {
        return;
    }
    let mut seen = HashSet::new();
    seen.insert(root);
    let mut current = Vec::with_capacity(k);
    grow(dim, k, root, &admissible, &mut visit, vec![root], &mut current, &mut seen);
}

#[allow(clippy::too_many_arguments)]
fn grow<A, V>(
    dim: usize,
    k: usize,
    root: Cell,
    admissible: &A,
    visit: &mut V,
    mut untried: Vec<Cell>,
    current: &mut Vec<Cell>,
    seen: &mut HashSet<Cell>,
) where
    A: Fn(Cell) -> bool,
    V: FnMut(&[Cell]),
{
    while let Some(cell) = untried.pop() {
        current.push(cell);
        if current.len() == k {
            visit(current);
        } else {
            let mut next = untried.clone();
            let mut added = Vec::new();
            for n in neighbours(cell, dim) {
                if key(n) > key(root) && admissible(n) && seen.insert(n) {
                    next.push(n);
                    added.push(n);
                }
            }
            grow(dim, k, root, admissible, visit, next, current, seen);
            for n in added {
                seen.remove(&n);
            }
        }
        current.pop();
    }
}

/// All fixed animals of `k` cells (translation classes), each with its
/// smallest cell at the origin.
pub(crate) fn fixed_animals<V: FnMut(&[Cell])>(dim: usize, k: usize, visit: V) {
    for_each_animal(dim, k, [0; 3], |_| true, visit);
}

/// All connected `k`-subsets of a finite cell set.
pub(crate) fn connected_subsets<V: FnMut(&[Cell])>(cells: &[Cell], dim: usize, k: usize, mut visit: V) {
    let set: HashSet<Cell> = cells.iter().copied().collect();
    for &root in cells {
        for_each_animal(dim, k, root, |c| set.contains(&c), &mut visit);
    }
}

/// `2·dim·|S| − 2·(adjacent pairs in S)`: the number of boundary facets.
pub(crate) fn perimeter(sorted: &[Cell], dim: usize) -> u64 {
    2 * dim as u64 * sorted.len() as u64 - 2 * adjacencies(sorted, sorted, dim) / 2
}

/// Ordered adjacent pairs `(a, b)` with `a ∈ from`, `b ∈ to`; `to` must be
/// sorted.
pub(crate) fn adjacencies(from: &[Cell], to: &[Cell], dim: usize) -> u64 {
    from.iter().map(|&c| neighbours(c, dim).filter(|n| to.binary_search(n).is_ok()).count() as u64).sum()
}

pub(crate) fn is_connected(sorted: &[Cell], dim: usize) -> bool {
    if sorted.is_empty() {
        return true;
    }
    let mut seen = vec![false; sorted.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for n in neighbours(sorted[i], dim) {
            if let Ok(j) = sorted.binary_search(&n) {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
    }
    count == sorted.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_fixed(dim: usize, k: usize) -> usize {
        let mut n = 0;
        fixed_animals(dim, k, |_| n += 1);
        n
    }

    #[test]
    fn fixed_animal_counts_match_known_sequences() {
        // fixed polyominoes and polycubes
        let planar = [1, 2, 6, 19, 63, 216, 760, 2725];
        for (k, &expected) in planar.iter().enumerate() {
            assert_eq!(count_fixed(2, k + 1), expected, "polyominoes of size {}", k + 1);
        }
        let spatial = [1, 3, 15, 86, 534, 3481];
        for (k, &expected) in spatial.iter().enumerate() {
            assert_eq!(count_fixed(3, k + 1), expected, "polycubes of size {}", k + 1);
        }
    }

    #[test]
    fn connected_subsets_of_a_square() {
        let square: Vec<Cell> = (0..2).flat_map(|y| (0..2).map(move |x| [x, y, 0])).collect();
        let mut sizes = [0; 5];
        for k in 1..=4 {
            connected_subsets(&square, 2, k, |_| sizes[k] += 1);
        }
        assert_eq!(sizes, [0, 4, 4, 4, 1]);
    }

    #[test]
    fn perimeter_and_connectivity() {
        let mut l = vec![[0, 0, 0], [1, 0, 0], [0, 1, 0]];
        l.sort();
        assert_eq!(perimeter(&l, 2), 8);
        assert!(is_connected(&l, 2));
        let mut apart = vec![[0, 0, 0], [2, 0, 0]];
        apart.sort();
        assert!(!is_connected(&apart, 2));
        assert_eq!(perimeter(&[[0, 0, 0]], 3), 6);
    }
}
