//! Property tests for the hyperboloid kernel and the extended-triangle solvers.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use hypercone::error::Error;
use hypercone::hkernel::{dist_point_point, translation_length, triangle_area, HVector, Isometry};
use hypercone::triangle::{solve_from_angles, solve_from_lengths, VertexKind, VertexKind::*};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn point(x: f64, y: f64) -> HVector {
    HVector::new(x, y, (1.0 + x * x + y * y).sqrt())
}

fn isometry(a: f64, b: f64, c: f64) -> Isometry {
    Isometry::translate_x(a).compose(&Isometry::rotate(b)).compose(&Isometry::translate_y(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn distance_triangle_inequality(
        p in (-3.0..3.0f64, -3.0..3.0f64),
        q in (-3.0..3.0f64, -3.0..3.0f64),
        r in (-3.0..3.0f64, -3.0..3.0f64),
    ) {
        let (p, q, r) = (point(p.0, p.1), point(q.0, q.1), point(r.0, r.1));
        let pq = dist_point_point(&p, &q).unwrap();
        let qr = dist_point_point(&q, &r).unwrap();
        let pr = dist_point_point(&p, &r).unwrap();
        prop_assert!(pr <= pq + qr + 1e-9);
    }

    #[test]
    fn distance_is_isometry_invariant(
        p in (-3.0..3.0f64, -3.0..3.0f64),
        q in (-3.0..3.0f64, -3.0..3.0f64),
        g in (-2.0..2.0f64, -PI..PI, -2.0..2.0f64),
    ) {
        let (p, q) = (point(p.0, p.1), point(q.0, q.1));
        let g = isometry(g.0, g.1, g.2);
        let before = dist_point_point(&p, &q).unwrap();
        let after = dist_point_point(&g.apply(&p), &g.apply(&q)).unwrap();
        prop_assert!((before - after).abs() < 1e-9 * (1.0 + before));
    }

    #[test]
    fn translation_length_is_conjugation_invariant(
        t in 0.05..3.0f64,
        phi in -PI..PI,
        h in (-2.0..2.0f64, -PI..PI, -2.0..2.0f64),
    ) {
        let g = Isometry::translate_x(t).compose(&Isometry::rotate(phi)).compose(&Isometry::translate_x(t));
        let h = isometry(h.0, h.1, h.2);
        let conj = h.compose(&g).compose(&h.inverse());
        prop_assert!((g.trace() - conj.trace()).abs() < 1e-9 * g.trace().abs().max(1.0));
        if let (Ok(a), Ok(b)) = (translation_length(&g), translation_length(&conj)) {
            prop_assert_eq!(a.kind, b.kind);
            prop_assert!((a.length - b.length).abs() < 1e-7);
        }
    }

    #[test]
    fn usual_triangle_area_below_every_edge(
        a in 0.05..5.0f64,
        b in 0.05..5.0f64,
        gamma in 0.05..(PI - 0.05),
    ) {
        let c = common::law_of_cosines(a, b, gamma);
        let tri = solve_from_lengths([Usual; 3], [a, b, c]).unwrap();
        let area = triangle_area(tri.angle_data).unwrap();
        prop_assert!(area < a.min(b).min(c));
        prop_assert!((area - tri.truncated_area()).abs() < 1e-9);
    }
}

/// Minkowski product between the stored vertices compared to the length table.
fn vertex_products_match(kinds: [VertexKind; 3], v: &[HVector; 3], lengths: [f64; 3]) -> bool {
    (0..3).all(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let expected = match (kinds[j], kinds[k]) {
            (Usual, Hyperideal) | (Hyperideal, Usual) => -lengths[i].sinh(),
            _ => -lengths[i].cosh(),
        };
        (v[j].dot(&v[k]) - expected).abs() < 1e-8 * expected.abs().max(1.0)
    })
}

#[test]
fn angle_round_trips_on_gram_validated_inputs() {
    for (s, kinds) in common::all_signatures().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + s as u64);
        let (mut false_negatives, mut worst) = (0, 0.0f64);
        for _ in 0..1000 {
            let data = common::random_angle_data(&mut rng, kinds);
            assert!(common::lorentzian(&common::dual_gram(kinds, data)), "{kinds:?} {data:?} fails the Gram test");
            let tri = match solve_from_angles(kinds, data) {
                Ok(t) => t,
                Err(Error::NonRealizable(_)) => {
                    false_negatives += 1;
                    continue;
                }
                Err(e) => panic!("{kinds:?} {data:?}: {e}"),
            };
            assert!(vertex_products_match(kinds, &tri.vertices, tri.edge_lengths));
            let back = solve_from_lengths(kinds, tri.edge_lengths).unwrap();
            for i in 0..3 {
                worst = worst.max((back.angle_data[i] - data[i]).abs());
            }
        }
        assert_eq!(false_negatives, 0, "{kinds:?}");
        assert!(worst < 1e-9, "{kinds:?}: angle round trip error {worst:e}");
    }
}

#[test]
fn length_round_trips() {
    for (s, kinds) in common::all_signatures().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(200 + s as u64);
        let mut worst = 0.0f64;
        let mut done = 0;
        while done < 1000 {
            let data = common::random_angle_data(&mut rng, kinds);
            let lengths = solve_from_angles(kinds, data).unwrap().edge_lengths;
            let tri = solve_from_lengths(kinds, lengths).unwrap();
            let again = solve_from_angles(kinds, tri.angle_data).unwrap();
            for i in 0..3 {
                worst = worst.max((again.edge_lengths[i] - lengths[i]).abs() / lengths[i].max(1.0));
            }
            done += 1;
        }
        assert!(worst < 1e-9, "{kinds:?}: length round trip error {worst:e}");
    }
}

#[test]
fn all_hyperideal_accepts_any_lengths() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let l = [0; 3].map(|_| rng.gen_range(0.05..4.0));
        let tri = solve_from_lengths([Hyperideal; 3], l).unwrap();
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let expected = common::hexagon_opposite(l[j], l[k], l[i]);
            assert!((tri.angle_data[i] - expected).abs() < 1e-9);
        }
    }
}

#[test]
fn usual_triangles_match_classical_trigonometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let (a, b, g) = (rng.gen_range(0.05..4.0), rng.gen_range(0.05..4.0), rng.gen_range(0.05..3.0));
        let c = common::law_of_cosines(a, b, g);
        let l = [a, b, c];
        let tri = solve_from_lengths([Usual; 3], l).unwrap();
        let expected = common::angles_from_sides(l);
        for i in 0..3 {
            assert!((tri.angle_data[i] - expected[i]).abs() < 1e-8);
        }
    }
}

#[test]
fn triangle_inequality_violations_are_not_realizable() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let (a, b) = (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0));
        let c = a + b + rng.gen_range(0.01..1.0);
        assert!(matches!(
            solve_from_lengths([Usual; 3], [a, b, c]),
            Err(Error::NonRealizable(_))
        ));
    }
}

#[test]
fn opposite_length_increases_with_hyperideal_arc() {
    // (H,U,U): with l2, l3 fixed, l1 and the arc at v1 determine each other monotonically.
    for (l2, l3) in [(1.0, 1.5), (0.4, 0.4), (2.0, 0.7)] {
        // Both usual vertices sit on perpendiculars to the dual line of v1 with feet
        // δ apart, so cosh l1 = cosh l2 cosh l3 cosh δ − sinh l2 sinh l3. In Fermi
        // coordinates along the dual line, the opposite edge stays ultraparallel to
        // it iff δ > |ln(tanh l2 / tanh l3)|.
        let low = f64::ln(f64::tanh(l2) / f64::tanh(l3)).abs() + 0.01;
        let deltas: Vec<f64> = (0..100).map(|k| low + 3.0 * k as f64 / 99.0).collect();
        let mut arcs = Vec::new();
        for &delta in &deltas {
            let l1 = (l2.cosh() * l3.cosh() * delta.cosh() - l2.sinh() * l3.sinh()).acosh();
            let arc = solve_from_lengths([Hyperideal, Usual, Usual], [l1, l2, l3]).unwrap().angle_data[0];
            assert!((arc - delta).abs() < 1e-9, "δ = {delta}: solver gives {arc}");
            arcs.push(arc);
        }
        assert!(common::strictly_monotone(&arcs, true) > 1e-10, "({l2}, {l3})");
    }
}

#[test]
fn usual_angle_decreases_with_opposite_length() {
    // (U,H,H): with the arcs at v2, v3 fixed, the angle at v1 and l1 move in opposite directions.
    for (a2, a3) in [(0.5, 0.5), (1.0, 0.3), (2.0, 1.5)] {
        let grid: Vec<f64> = (0..100).map(|k| 0.02 + (FRAC_PI_2 - 0.04) * k as f64 / 99.0).collect();
        let l1: Vec<f64> = grid
            .iter()
            .map(|&a| solve_from_angles([Usual, Hyperideal, Hyperideal], [a, a2, a3]).unwrap().edge_lengths[0])
            .collect();
        assert!(common::strictly_monotone(&l1, false) > 1e-10, "({a2}, {a3})");
    }
}
