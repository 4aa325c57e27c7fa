//! Canonical forms under translations and axis isometries.

use crate::geometry::{Cell, Isometry};

/// Translates so that the minimum corner is the origin, then sorts.
pub(crate) fn normalize(cells: &mut [Cell]) {
    if cells.is_empty() {
        return;
    }
    let mut lo = cells[0];
    for c in cells.iter() {
        for i in 0..3 {
            lo[i] = lo[i].min(c[i]);
        }
    }
    for c in cells.iter_mut() {
        for i in 0..3 {
            c[i] -= lo[i];
        }
    }
    cells.sort_unstable();
}

/// Lexicographically smallest normalized image of a cell set.
pub(crate) fn canonical_set(cells: &[Cell], isometries: &[Isometry]) -> Vec<Cell> {
    let mut best: Option<Vec<Cell>> = None;
    let mut image = Vec::with_capacity(cells.len());
    for iso in isometries {
        image.clear();
        image.extend(cells.iter().map(|&c| iso.apply(c)));
        normalize(&mut image);
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image.clone());
        }
    }
    best.unwrap_or_default()
}

/// A labelled configuration: each cell with `false` for A and `true` for B,
/// sorted by cell.
pub(crate) type LabelledCells = Vec<(Cell, bool)>;

/// Lexicographically smallest normalized image of a labelled pair. Labels are
/// never swapped.
pub(crate) fn canonical_pair(a: &[Cell], b: &[Cell], isometries: &[Isometry]) -> LabelledCells {
    let mut best: Option<LabelledCells> = None;
    for iso in isometries {
        let mut image: LabelledCells =
            a.iter().map(|&c| (iso.apply(c), false)).chain(b.iter().map(|&c| (iso.apply(c), true))).collect();
        let mut lo = image[0].0;
        for (c, _) in &image {
            for i in 0..3 {
                lo[i] = lo[i].min(c[i]);
            }
        }
        for (c, _) in image.iter_mut() {
            for i in 0..3 {
                c[i] -= lo[i];
            }
        }
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn split(labelled: &LabelledCells) -> (Vec<Cell>, Vec<Cell>) {
    let a = labelled.iter().filter(|(_, l)| !l).map(|(c, _)| *c).collect();
    let b = labelled.iter().filter(|(_, l)| *l).map(|(c, _)| *c).collect();
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_share_a_canonical_form() {
        let isos = Isometry::all(2);
        let l = [[0, 0, 0], [1, 0, 0], [2, 0, 0], [2, 1, 0]];
        let canon = canonical_set(&l, &isos);
        for iso in &isos {
            let image: Vec<Cell> = l.iter().map(|&c| iso.apply(c)).collect();
            assert_eq!(canonical_set(&image, &isos), canon);
        }
    }

    #[test]
    fn labels_are_kept_apart() {
        let isos = Isometry::all(2);
        let ab = canonical_pair(&[[0, 0, 0]], &[[1, 0, 0]], &isos);
        let ba = canonical_pair(&[[1, 0, 0]], &[[0, 0, 0]], &isos);
        assert_eq!(ab, ba);
        let (a, b) = split(&ab);
        assert_eq!((a.len(), b.len()), (1, 1));
    }
}
