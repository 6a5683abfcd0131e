//! Singular pants, surface assembly and holonomy lengths against closed forms.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use hypercone::curves::{geodesic_length, holonomy, intersection_number, words, CurveWord, RationalLamination};
use hypercone::pants::{build_pants, Leg};
use hypercone::surface::{admissible_area, families, MarkedSurface};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn b(length: f64) -> Leg {
    Leg::Boundary { length }
}

fn c(angle: f64) -> Leg {
    Leg::Cone { angle }
}

fn grid(lo: f64, hi: f64) -> Vec<f64> {
    (0..100).map(|k| lo + (hi - lo) * k as f64 / 99.0).collect()
}

#[test]
fn boundary_seams_match_hexagon_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let l = [0; 3].map(|_| rng.gen_range(0.1..6.0));
        let p = build_pants(l.map(b)).unwrap();
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let expected = common::hexagon_opposite(l[j] / 2.0, l[k] / 2.0, l[i] / 2.0);
            assert!((p.seams[i] - expected).abs() < 1e-9, "{l:?}");
        }
        assert!((p.area() - 2.0 * PI).abs() < 1e-9);
    }
}

#[test]
fn seam_between_boundaries_opposite_a_cone() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let (l1, l2, theta) = (rng.gen_range(0.1..6.0), rng.gen_range(0.1..6.0), rng.gen_range(0.05..3.1));
        let p = build_pants([b(l1), b(l2), c(theta)]).unwrap();
        assert!((p.seams[2] - common::mixed_seam(l1, l2, theta)).abs() < 1e-9);
        assert!((p.area() - (2.0 * PI - theta)).abs() < 1e-9);
    }
}

#[test]
fn pants_area_is_the_angle_defect() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let t = [0; 3].map(|_| rng.gen_range(0.05..3.1));
        if t.iter().sum::<f64>() >= 2.0 * PI - 0.05 {
            continue;
        }
        let p = build_pants(t.map(c)).unwrap();
        assert!((p.area() - (2.0 * PI - t.iter().sum::<f64>())).abs() < 1e-9);
    }
}

#[test]
fn seams_decrease_in_adjacent_cone_angles() {
    for (a, l) in [(1.0, 2.0), (0.3, 0.5), (2.5, 4.0)] {
        // seam between the cone (slot 0) and the boundary in slot 1
        let s: Vec<f64> = grid(0.05, 3.05).iter().map(|&t| build_pants([c(t), b(a), b(l)]).unwrap().seams[2]).collect();
        assert!(common::strictly_monotone(&s, false) > 1e-10);
        // seam between two cone points
        let s: Vec<f64> = grid(0.05, 3.05).iter().map(|&t| build_pants([c(t), c(1.0), b(l)]).unwrap().seams[2]).collect();
        assert!(common::strictly_monotone(&s, false) > 1e-10);
    }
}

#[test]
fn seams_increase_in_opposite_boundary_length() {
    for legs in [[c(1.0), b(1.0)], [b(2.0), b(0.7)], [c(2.0), c(0.4)]] {
        let s: Vec<f64> = grid(0.1, 6.0)
            .iter()
            .map(|&l| build_pants([legs[0], legs[1], b(l)]).unwrap().seams[2])
            .collect();
        assert!(common::strictly_monotone(&s, true) > 1e-10, "{legs:?}");
    }
}

#[test]
fn gauss_bonnet_values() {
    let cases = [
        (MarkedSurface { genus: 2, cone_angles: vec![] }, 4.0 * PI),
        (MarkedSurface { genus: 1, cone_angles: vec![FRAC_PI_2] }, 1.5 * PI),
        (MarkedSurface { genus: 0, cone_angles: vec![FRAC_PI_2; 4] }, 2.0 * PI),
    ];
    for (s, expected) in &cases {
        let got = admissible_area(s).unwrap();
        assert!((got - expected).abs() < 1e-12);
        assert!((got - common::gauss_bonnet(s.genus, &s.cone_angles)).abs() < 1e-12);
    }
    let files = [
        families::genus_two_theta([1.0, 2.0, 3.0], [0.1, 0.2, 0.3]),
        families::torus_with_cone(2.0, 0.5, FRAC_PI_2),
        families::four_cone_sphere(1.0, 0.0, [FRAC_PI_2; 4]),
    ];
    for (file, (_, expected)) in files.iter().zip(&cases) {
        assert!((file.build().unwrap().total_area() - expected).abs() < 1e-8);
    }
}

#[test]
fn pants_curve_words_have_their_fn_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let file = common::random_surface(&mut rng);
        let g = file.build().unwrap();
        for (name, l) in file.curves.iter().zip(&file.fn_coords.lengths) {
            let got = geodesic_length(&g, &words::pants_curve(name)).unwrap();
            assert!((got - l).abs() < 1e-9, "{name}: {got} vs {l}");
        }
    }
}

#[test]
fn torus_dual_curve_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let (l, d, theta) = (rng.gen_range(0.2..5.0), rng.gen_range(-3.0..3.0), rng.gen_range(0.05..3.1));
        let g = families::torus_with_cone(l, d, theta).build().unwrap();
        let got = geodesic_length(&g, &words::torus_dual(0)).unwrap();
        let expected = common::torus_dual_length(common::mixed_seam(l, l, theta), d);
        assert!((got - expected).abs() < 1e-8 * expected.max(1.0), "{l} {d} {theta}: {got} vs {expected}");
    }
    let l = 2.0 * 2f64.acosh();
    let g = families::torus_with_cone(l, 0.0, FRAC_PI_2).build().unwrap();
    let at_zero = geodesic_length(&g, &words::torus_dual(0)).unwrap();
    assert!((at_zero - ((4.0 + (PI / 4.0).cos()) / 3.0).acosh()).abs() < 1e-8);
}

#[test]
fn torus_dual_curve_shape() {
    let l = 2.0 * 2f64.acosh();
    let len = |l: f64, d: f64| {
        geodesic_length(&families::torus_with_cone(l, d, FRAC_PI_2).build().unwrap(), &words::torus_dual(0)).unwrap()
    };
    let base = len(l, 0.0);
    let ds = grid(0.0, 3.0);
    let plus: Vec<f64> = ds.iter().map(|&d| len(l, d)).collect();
    let minus: Vec<f64> = ds.iter().map(|&d| len(l, -d)).collect();
    for ((d, p), m) in ds.iter().zip(&plus).zip(&minus) {
        assert!((p - m).abs() < 1e-9, "not even at {d}");
        assert!(*p <= base + d + 1e-12, "broken-path bound fails at {d}");
    }
    assert!(common::strictly_monotone(&plus, true) > 1e-10);
    // At zero twist the dual curve is the seam between the two copies of γ₁, and
    // cosh s = (cos(θ/2) + cosh²(l/2)) / sinh²(l/2) decreases in l (collar behaviour).
    let by_length: Vec<f64> = grid(0.2, 5.0).iter().map(|&l| len(l, 0.0)).collect();
    assert!(common::strictly_monotone(&by_length, false) > 1e-10);
}

#[test]
fn dehn_twist_compatibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (l, d, theta) = (rng.gen_range(0.2..3.0), rng.gen_range(-2.0..2.0), rng.gen_range(0.1..3.0));
        let twisted = families::torus_with_cone(l, d + l, theta).build().unwrap();
        let plain = families::torus_with_cone(l, d, theta).build().unwrap();
        for k in -1..=1 {
            let a = geodesic_length(&twisted, &words::torus_dual(k)).unwrap();
            let b = geodesic_length(&plain, &words::torus_dual(k + 1)).unwrap();
            assert!((a - b).abs() < 1e-8 * a.max(1.0));
        }
    }
}

#[test]
fn rotation_and_inversion_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let thetas = [0; 4].map(|_| rng.gen_range(0.1..3.0));
        let g = families::four_cone_sphere(rng.gen_range(0.3..4.0), rng.gen_range(-2.0..2.0), thetas).build().unwrap();
        let w = words::four_cone_delta(rng.gen_range(-1..=1));
        let l = geodesic_length(&g, &w).unwrap();
        let tr = holonomy(&g, &w).unwrap().trace();
        for v in [w.rotated(1), w.inverse(), w.rotated(1).inverse()] {
            assert!((geodesic_length(&g, &v).unwrap() - l).abs() < 1e-9 * l.max(1.0));
            assert!((holonomy(&g, &v).unwrap().trace() - tr).abs() < 1e-9 * tr.abs().max(1.0));
        }
    }
}

#[test]
fn intersection_numbers() {
    let g = families::four_cone_sphere(1.0, 0.0, [1.0; 4]).build().unwrap();
    let lam = RationalLamination::single("g1", 0.4);
    let i = intersection_number(&g.decomposition, &lam, &words::four_cone_delta(0)).unwrap();
    assert!((i - 0.8).abs() < 1e-15);
    assert_eq!(intersection_number(&g.decomposition, &lam, &words::pants_curve("g1")).unwrap(), 0.0);
    assert_eq!(intersection_number(&g.decomposition, &lam, &CurveWord::empty()).unwrap(), 0.0);
}
