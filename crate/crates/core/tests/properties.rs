use std::collections::BTreeSet;

use dbubble_core::closed_forms::{emin, f, planar_energy, planar_energy_by_cases, planar_minimizer, r_star, theorem_minimizer};
use dbubble_core::geometry::{
    column_crossings, double_bubble_energy, projection_area, Axis, Cell, Configuration, FaceSet, Isometry,
};
use dbubble_core::lemmas::LemmaContext;
use dbubble_core::search::{brute_force, canonical_form, SearchSpec};
use dbubble_core::slicing::corpus::grown_pair;
use dbubble_core::slicing::slice_profile;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pair(seed: u64, dim: usize, va: usize, vb: usize) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    grown_pair(&mut rng, dim, 5, va, vb)
}

fn configurations() -> impl Strategy<Value = Configuration> {
    (any::<u64>(), 2usize..=3, 1usize..=10, 1usize..=10).prop_map(|(seed, dim, va, vb)| pair(seed, dim, va, vb))
}

fn isometry(dim: usize) -> impl Strategy<Value = (Isometry, Cell)> {
    let count = Isometry::all(dim).len();
    (0..count, -7i32..=7, -7i32..=7, -7i32..=7).prop_map(move |(k, x, y, z)| {
        let shift = if dim == 2 { [x, y, 0] } else { [x, y, z] };
        (Isometry::all(dim)[k], shift)
    })
}

fn columns(s: &dbubble_core::GridSet, axis: Axis) -> BTreeSet<[i32; 2]> {
    let others = axis.others(s.dim());
    s.cells()
        .map(|c| {
            let mut key = [0; 2];
            for (j, a) in others.iter().enumerate() {
                key[j] = c[a.index()];
            }
            key
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn energy_is_symmetric_in_the_labels(cfg in configurations()) {
        let e = double_bubble_energy(&cfg);
        let s = double_bubble_energy(&cfg.swapped());
        prop_assert_eq!(e.energy, s.energy);
        prop_assert_eq!(e.interface, s.interface);
        prop_assert_eq!((e.perimeter_a, e.perimeter_b), (s.perimeter_b, s.perimeter_a));
    }

    #[test]
    fn energy_and_projections_are_isometry_invariant(
        (cfg, (iso, shift)) in configurations().prop_flat_map(|c| { let d = c.dim(); (Just(c), isometry(d)) })
    ) {
        let moved = cfg.transform(&iso).translate(shift);
        prop_assert_eq!(double_bubble_energy(&cfg), double_bubble_energy(&moved));
        let union = cfg.a().union(cfg.b()).unwrap();
        let moved_union = moved.a().union(moved.b()).unwrap();
        let mut before: Vec<u64> = Axis::axes(cfg.dim()).iter().map(|&a| projection_area(&union, a).unwrap()).collect();
        let mut after: Vec<u64> = Axis::axes(cfg.dim()).iter().map(|&a| projection_area(&moved_union, a).unwrap()).collect();
        before.sort();
        after.sort();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn slice_areas_sum_to_the_volumes(cfg in configurations()) {
        for &axis in Axis::axes(cfg.dim()) {
            let profile = slice_profile(&cfg, axis).unwrap();
            let a: u64 = profile.levels.iter().map(|l| l.a).sum();
            let b: u64 = profile.levels.iter().map(|l| l.b).sum();
            prop_assert_eq!((a, b), (cfg.volume_a(), cfg.volume_b()));
        }
    }

    #[test]
    fn columns_cross_the_boundary_enough_times(cfg in configurations()) {
        for &axis in Axis::axes(cfg.dim()) {
            let crossings = column_crossings(cfg.a(), cfg.b(), axis).unwrap();
            let pa = columns(cfg.a(), axis);
            let pb = columns(cfg.b(), axis);
            for col in pa.union(&pb) {
                prop_assert!(crossings[col] >= 2);
            }
            for col in pa.intersection(&pb) {
                prop_assert!(crossings[col] >= 3);
            }
        }
    }

    #[test]
    fn facets_split_by_normal_direction(cfg in configurations()) {
        let faces = FaceSet::of_pair(cfg.a(), cfg.b()).unwrap();
        let by_normal: u64 = Axis::axes(cfg.dim()).iter().map(|&a| faces.count_normal(a)).sum();
        prop_assert_eq!(by_normal, faces.len() as u64);
        prop_assert_eq!(by_normal, double_bubble_energy(&cfg).energy);
    }

    #[test]
    fn canonical_form_ignores_placement(
        (cfg, (iso, shift)) in configurations().prop_flat_map(|c| { let d = c.dim(); (Just(c), isometry(d)) })
    ) {
        let moved = cfg.transform(&iso).translate(shift);
        prop_assert_eq!(canonical_form(&cfg), canonical_form(&moved));
    }

    #[test]
    fn f_is_invariant_under_inversion(x in 1e-6f64..1e6) {
        let (a, b) = (f(x).unwrap(), f(1.0 / x).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn planar_energy_is_symmetric_and_matches_the_cases(a in 1e-3f64..1e3, b in 1e-3f64..1e3) {
        let e = planar_energy(a, b).unwrap();
        prop_assert_eq!(e, planar_energy(b, a).unwrap());
        let cases = planar_energy_by_cases(a, b).unwrap();
        prop_assert!((e - cases).abs() <= 1e-12 * e, "{} vs {}", e, cases);
    }

    #[test]
    fn planar_minimizer_reaudits_to_its_energy(a in 1e-2f64..1e2, b in 1e-2f64..1e2) {
        let m = planar_minimizer(a, b).unwrap();
        let audit = m.audit();
        let e = planar_energy(a, b).unwrap();
        prop_assert!((audit.energy - e).abs() <= 1e-12 * e.max(1.0));
        prop_assert!((audit.volume_a - a).abs() <= 1e-12 * a.max(1.0));
        prop_assert!((audit.volume_b - b).abs() <= 1e-12 * b.max(1.0));
    }

    #[test]
    fn planar_energy_scales_with_the_square_root(a in 1e-2f64..1e2, b in 1e-2f64..1e2, t in 1e-2f64..1e2) {
        let scaled = planar_energy(t * a, t * b).unwrap();
        let expected = t.sqrt() * planar_energy(a, b).unwrap();
        prop_assert!((scaled - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn cuboid_family_is_minimized_at_the_square_face(va in 1e-2f64..1e2, vb in 1e-2f64..1e2, m in 1e-3f64..1e3) {
        let e = emin(va, vb).unwrap();
        prop_assert!(3.0 * m + 4.0 * (va + vb) / m.sqrt() >= e.energy - 1e-9);
    }

    #[test]
    fn theorem_cuboids_reaudit_to_emin(va in 1e-2f64..1e2, ratio in 0.5f64..=2.0) {
        let vb = ratio * va;
        let pair = theorem_minimizer(va, vb).unwrap();
        let e = emin(va, vb).unwrap().energy;
        prop_assert!((pair.audit().energy - e).abs() <= 1e-12 * e);
    }

    #[test]
    fn separation_constant_bound(p in 0.0f64..=1.0 / 3.0) {
        let c1 = LemmaContext::unchecked(1.0, p, 1.0, 1.0).c() - 2.0;
        prop_assert!(c1 <= 6f64.sqrt() - 2.0 + 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn brute_force_is_symmetric_in_the_labels(a in 1u64..=6, b in 1u64..=6) {
        let ab = brute_force(&SearchSpec::new(2, a, b)).unwrap();
        let ba = brute_force(&SearchSpec::new(2, b, a)).unwrap();
        prop_assert_eq!(ab.min_energy, ba.min_energy);
    }
}

#[test]
fn f_is_continuous_at_the_regime_boundaries() {
    for x0 in [r_star(), 0.5] {
        let h = 1e-13;
        let (left, right) = (f(x0 - h).unwrap(), f(x0 + h).unwrap());
        assert!((left - right).abs() < 1e-12, "x = {x0}: {left} vs {right}");
    }
}

#[test]
fn f_over_sqrt_changes_monotonicity_once() {
    let turn = 2.0 / 3f64.sqrt() - 1.0;
    let n = 10_000;
    let value = |x: f64| f(x).unwrap() / (1.0 + x).sqrt();
    let grid: Vec<f64> = (0..=n).map(|i| 0.5 * i as f64 / n as f64).collect();
    for w in grid.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let (v0, v1) = (value(x0), value(x1));
        if x1 <= turn {
            assert!(v1 >= v0 - 1e-12, "not increasing at {x0}");
        } else if x0 >= turn {
            assert!(v1 <= v0 + 1e-12, "not decreasing at {x0}");
        }
    }
}
