use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use dubins_cost::geometry::{angle_diff, normalize_angle};
use dubins_cost::paths::{all_paths, path, Word};
use dubins_cost::{
    canonicalize, center_distances, classify, dub, reduce_to_triangle, sample, shortest_length, shortest_path,
    symmetry_images, Configuration, PairSpec,
};

fn angle() -> impl Strategy<Value = f64> {
    0.0..TAU
}

fn close_pose(a: &Configuration, b: &Configuration, tol: f64) -> bool {
    (a.x - b.x).abs() < tol && (a.y - b.y).abs() < tol && angle_diff(a.theta, b.theta).abs() < tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn every_path_ends_at_goal(d in 0.0..8.0f64, a in angle(), b in angle()) {
        let p = PairSpec::new(d, a, b).unwrap();
        let goal = Configuration::new(d, 0.0, b);
        for q in all_paths(&p) {
            let end = sample(&q, q.total_length, &p).unwrap();
            prop_assert!(close_pose(&end, &goal, 1e-9), "{} ends at {end:?}", q.word);
        }
    }

    #[test]
    fn shortest_is_bounded_by_dub(d in 0.0..6.0f64, a in angle(), b in angle()) {
        let l = shortest_length(&PairSpec::new(d, a, b).unwrap());
        prop_assert!(l >= d - 1e-12);
        prop_assert!(l - d <= dub(d).unwrap().dub + 1e-9);
    }

    #[test]
    fn symmetry_preserves_length_and_distances(d in 0.0..5.0f64, a in angle(), b in angle()) {
        let p = PairSpec::new(d, a, b).unwrap();
        let l = shortest_length(&p);
        let cd = center_distances(&p);
        for q in symmetry_images(&p) {
            prop_assert!((shortest_length(&q) - l).abs() < 1e-9);
            let c = center_distances(&q);
            // Mirroring swaps left and right.
            let same = (c.d_l - cd.d_l).abs() < 1e-12 && (c.d_r - cd.d_r).abs() < 1e-12;
            let swapped = (c.d_l - cd.d_r).abs() < 1e-12 && (c.d_r - cd.d_l).abs() < 1e-12;
            prop_assert!(same || swapped);
        }
        let t = reduce_to_triangle(&p);
        prop_assert!((shortest_length(&t) - l).abs() < 1e-9);
        prop_assert!(t.alpha <= PI + 1e-12 && t.beta >= t.alpha - 1e-12 && t.beta <= TAU - t.alpha + 1e-12);
    }

    #[test]
    fn canonical_frame_round_trip(
        x0 in -10.0..10.0f64, y0 in -10.0..10.0f64, t0 in angle(),
        x1 in -10.0..10.0f64, y1 in -10.0..10.0f64, t1 in angle(),
    ) {
        let start = Configuration::new(x0, y0, t0);
        let goal = Configuration::new(x1, y1, t1);
        let (p, m) = canonicalize(&start, &goal);
        prop_assert!((p.d - (x1 - x0).hypot(y1 - y0)).abs() < 1e-9);
        let s = m.apply_inverse(&Configuration::new(0.0, 0.0, p.alpha));
        let g = m.apply_inverse(&Configuration::new(p.d, 0.0, p.beta));
        prop_assert!(close_pose(&s, &start, 1e-9));
        prop_assert!(close_pose(&g, &goal, 1e-9));
    }

    #[test]
    fn case_label_matches_inner_tangents(d in 0.0..5.0f64, a in angle(), b in angle()) {
        let p = PairSpec::new(d, a, b).unwrap();
        let cd = center_distances(&p);
        prop_assume!((cd.d_lr - 2.0).abs() > 1e-9 && (cd.d_rl - 2.0).abs() > 1e-9);
        let label = classify(&p);
        let lsr = path(&p, Word::Lsr).is_some();
        let rsl = path(&p, Word::Rsl).is_some();
        prop_assert_eq!(label.is_c(), lsr);
        if label.is_b() {
            prop_assert!(rsl);
        }
        if label.is_a() {
            prop_assert!(!lsr && !rsl);
        }
    }

    #[test]
    fn sampled_path_moves_at_unit_speed(d in 0.0..5.0f64, a in angle(), b in angle(), u in 0.0..1.0f64) {
        let p = PairSpec::new(d, a, b).unwrap();
        let (q, _) = shortest_path(&p);
        let s = u * q.total_length;
        let h = 1e-4f64.min(q.total_length - s);
        prop_assume!(h > 0.0);
        let c0 = sample(&q, s, &p).unwrap();
        let c1 = sample(&q, s + h, &p).unwrap();
        let step = (c1.x - c0.x).hypot(c1.y - c0.y);
        prop_assert!(step <= h + 1e-12);
        prop_assert!(step >= h * (1.0 - h * h));
    }

    #[test]
    fn dub_is_nonincreasing(d1 in 0.0..4.0f64, dd in 0.0..2.0f64) {
        let a = dub(d1).unwrap().dub;
        let b = dub(d1 + dd).unwrap().dub;
        prop_assert!(b <= a + 1e-9);
    }

    #[test]
    fn gamma_representative_keeps_distances(d in 0.0..5.0f64, a in angle(), b in angle()) {
        let p = PairSpec::new(d, a, b).unwrap();
        if let Some((s, t)) = p.gamma_coords() {
            prop_assert!((0.0..=PI).contains(&s) && (0.0..=PI).contains(&t));
            let q = PairSpec::from_sigma_delta(d, s, t).unwrap();
            let (c, e) = (center_distances(&p), center_distances(&q));
            prop_assert!((c.d_l - e.d_l).abs() < 1e-12 && (c.d_r - e.d_r).abs() < 1e-12);
            prop_assert!((c.d_lr - e.d_lr).abs() < 1e-12 && (c.d_rl - e.d_rl).abs() < 1e-12);
        }
    }

    #[test]
    fn normalized_angles_are_in_range(x in -100.0..100.0f64) {
        let y = normalize_angle(x);
        prop_assert!((0.0..TAU).contains(&y));
        prop_assert!(angle_diff(x, y).abs() < 1e-12);
    }
}
