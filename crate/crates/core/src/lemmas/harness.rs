//! Sampling, refinement and finite-difference utilities shared by the checks.

use std::cmp::Ordering;

/// `n ≥ 2` equally spaced points from `lo` to `hi` inclusive.
pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs two points");
    (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
}

/// Sorted, deduplicated union of a grid and extra points.
pub(crate) fn with_points(mut grid: Vec<f64>, extra: &[f64]) -> Vec<f64> {
    grid.extend_from_slice(extra);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Minimizes `f` over the samples `xs` and then zooms in on the worst
/// sample: each round resamples `[x_{i−1}, x_{i+1}]` around the current
/// minimizer with `points` points. Returns `(argmin, min, evaluations)`.
pub(crate) fn refine_min<F: Fn(f64) -> f64>(f: F, xs: &[f64], rounds: usize, points: usize) -> (f64, f64, u64) {
    let values: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut evals = xs.len() as u64;
    let i = argmin(&values);
    let (mut best_x, mut best_v) = (xs[i], values[i]);
    let mut lo = xs[i.saturating_sub(1)];
    let mut hi = xs[(i + 1).min(xs.len() - 1)];
    for _ in 0..rounds {
        if hi <= lo {
            break;
        }
        let local = linspace(lo, hi, points);
        let vals: Vec<f64> = local.iter().map(|&x| f(x)).collect();
        evals += points as u64;
        let j = argmin(&vals);
        if vals[j] < best_v {
            best_x = local[j];
            best_v = vals[j];
        }
        lo = local[j.saturating_sub(1)];
        hi = local[(j + 1).min(points - 1)];
    }
    (best_x, best_v, evals)
}

/// Index of the first minimum; NaN counts as smaller than everything so that
/// it surfaces as a failure.
pub(crate) fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        let b = values[best];
        if v.is_nan() && !b.is_nan() || (!v.is_nan() && v < &b) {
            best = i;
        }
    }
    best
}

pub(crate) fn central_difference<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Central difference at steps `h` and `h/2` and their Richardson
/// extrapolation `(4 D(h/2) − D(h)) / 3`.
pub(crate) fn richardson<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> (f64, f64) {
    let coarse = central_difference(f, x, h);
    let fine = central_difference(f, x, h / 2.0);
    (coarse, (4.0 * fine - coarse) / 3.0)
}

pub(crate) fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Number of sign changes from positive to negative, ignoring values whose
/// magnitude is at most `zero`, plus the total number of sign changes.
pub(crate) fn sign_changes(values: &[f64], zero: f64) -> (usize, usize) {
    let mut last = 0i8;
    let (mut down, mut total) = (0, 0);
    for &v in values {
        let s = if v > zero {
            1
        } else if v < -zero {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            total += 1;
            if s < 0 {
                down += 1;
            }
        }
        last = s;
    }
    (down, total)
}

/// Lexicographic order on parameter tuples, used to break ties between
/// equally bad witnesses.
pub(crate) fn cmp_params(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_function_has_no_sign_change() {
        let xs = linspace(0.0, 1.0, 101);
        let d: Vec<f64> = xs.iter().map(|x| central_difference(&|t: f64| t.exp(), *x, 1e-6)).collect();
        assert_eq!(sign_changes(&d, 1e-12), (0, 0));
        let wave: Vec<f64> = xs.iter().map(|x| (6.0 * x).sin()).collect();
        assert_eq!(sign_changes(&wave, 1e-12), (1, 1));
        let up: Vec<f64> = xs.iter().map(|x| x - 0.5).collect();
        assert_eq!(sign_changes(&up, 1e-12), (0, 1));
    }

    #[test]
    fn refinement_finds_interior_minimum() {
        let xs = linspace(0.0, 1.0, 11);
        let (x, v, evals) = refine_min(|t| (t - 0.3141).powi(2), &xs, 3, 21);
        assert!((x - 0.3141).abs() < 1e-4);
        assert!(v < 1e-8);
        assert_eq!(evals, 11 + 63);
    }

    #[test]
    fn richardson_improves_accuracy() {
        let f = |t: f64| t.sin();
        let (coarse, rich) = richardson(&f, 1.0, 1e-3);
        assert!((rich - 1f64.cos()).abs() < (coarse - 1f64.cos()).abs());
    }

    #[test]
    fn grid_helpers() {
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
        assert_eq!(with_points(vec![0.0, 1.0], &[0.5, 1.0]), vec![0.0, 0.5, 1.0]);
        assert_eq!(argmin(&[3.0, 1.0, 1.0, 2.0]), 1);
        assert_eq!(cmp_params(&[1.0, 2.0], &[1.0, 3.0]), Ordering::Less);
    }
}
