//! Independent oracles shared by the integration tests. Nothing here calls the
//! solvers under test; values come from closed-form trigonometry or brute force.

#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use hypercone::hkernel::{dist_point_point, HVector};
use hypercone::surface::{families, SurfaceFile};
use hypercone::triangle::VertexKind::{self, *};
use nalgebra::{Matrix3, SymmetricEigen};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Right-angled hexagon: the side opposite `c` given the two sides adjacent to it
/// and the alternate side `c` (all three alternate sides known).
pub fn hexagon_opposite(a: f64, b: f64, c: f64) -> f64 {
    ((a.cosh() * b.cosh() + c.cosh()) / (a.sinh() * b.sinh())).acosh()
}

/// Seam between two boundary legs of lengths `l1`, `l2` of a pants whose third leg
/// is a cone point of angle `theta`.
pub fn mixed_seam(l1: f64, l2: f64, theta: f64) -> f64 {
    let (a, b) = (l1 / 2.0, l2 / 2.0);
    (((theta / 2.0).cos() + a.cosh() * b.cosh()) / (a.sinh() * b.sinh())).acosh()
}

/// Dual curve on the torus with one cone point, from the seam and the twist.
pub fn torus_dual_length(seam: f64, twist: f64) -> f64 {
    let h = twist / 2.0;
    (seam.cosh() * h.cosh().powi(2) + h.sinh().powi(2)).acosh()
}

/// Length of a path that leaves one boundary geodesic at offset `u` from the seam
/// foot, reaches the other at offset `v`, and closes through a flat strip of width
/// `w` that is sheared by the twist `d`.
pub fn grafted_path(seam: f64, d: f64, w: f64, u: f64, v: f64) -> f64 {
    let c = seam.cosh() * u.cosh() * v.cosh() + u.sinh() * v.sinh();
    c.max(1.0).acosh() + (w * w + (u + v - d).powi(2)).sqrt()
}

/// Brute-force minimum of a convex function of two variables by repeated grid
/// zooming around the best node.
pub fn grid_minimum(f: impl Fn(f64, f64) -> f64, center: (f64, f64), radius: f64) -> f64 {
    let n = 40;
    let (mut cx, mut cy, mut r) = (center.0, center.1, radius);
    let mut best = f(cx, cy);
    while r > 1e-11 {
        let (mut bx, mut by) = (cx, cy);
        for i in 0..=n {
            for j in 0..=n {
                let x = cx - r + 2.0 * r * i as f64 / n as f64;
                let y = cy - r + 2.0 * r * j as f64 / n as f64;
                let v = f(x, y);
                if v < best {
                    best = v;
                    bx = x;
                    by = y;
                }
            }
        }
        cx = bx;
        cy = by;
        r /= 8.0;
    }
    best
}

/// Grafted length of the torus dual curve by dense grid search.
pub fn torus_graft_oracle(l: f64, theta: f64, d: f64, w: f64) -> f64 {
    let seam = mixed_seam(l, l, theta);
    grid_minimum(|u, v| grafted_path(seam, d, w, u, v), (d / 2.0, d / 2.0), d.abs() + 4.0)
}

/// Gauss–Bonnet area of a closed genus-g surface with cone points.
pub fn gauss_bonnet(genus: u32, cones: &[f64]) -> f64 {
    let chi = 2.0 - 2.0 * genus as f64;
    cones.iter().map(|t| 2.0 * PI - t).sum::<f64>() - 2.0 * PI * chi
}

/// Hyperbolic triangle with three usual vertices: side opposite `gamma`.
pub fn law_of_cosines(a: f64, b: f64, gamma: f64) -> f64 {
    (a.cosh() * b.cosh() - a.sinh() * b.sinh() * gamma.cos()).acosh()
}

/// Angles of a usual triangle from its sides.
pub fn angles_from_sides(l: [f64; 3]) -> [f64; 3] {
    let ang = |a: f64, b: f64, c: f64| ((a.cosh() * b.cosh() - c.cosh()) / (a.sinh() * b.sinh())).acos();
    [ang(l[1], l[2], l[0]), ang(l[2], l[0], l[1]), ang(l[0], l[1], l[2])]
}

/// Smallest step of a sequence in the given direction; positive iff strictly monotone.
pub fn strictly_monotone(values: &[f64], increasing: bool) -> f64 {
    values
        .windows(2)
        .map(|w| if increasing { w[1] - w[0] } else { w[0] - w[1] })
        .fold(f64::INFINITY, f64::min)
}

/// Dual Gram matrix built from angle data by hand.
pub fn dual_gram(kinds: [VertexKind; 3], data: [f64; 3]) -> Matrix3<f64> {
    let mut d = Matrix3::identity();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let v = match kinds[i] {
            Usual => -data[i].cos(),
            Hyperideal => -data[i].cosh(),
        };
        d[(j, k)] = v;
        d[(k, j)] = v;
    }
    d
}

pub fn lorentzian(m: &Matrix3<f64>) -> bool {
    let eig = SymmetricEigen::new(*m).eigenvalues;
    eig.iter().filter(|e| **e > 1e-10).count() == 2 && eig.iter().filter(|e| **e < -1e-10).count() == 1
}

pub fn all_signatures() -> Vec<[VertexKind; 3]> {
    let mut out = Vec::new();
    for mask in 0..8u8 {
        out.push([0, 1, 2].map(|i| if mask >> i & 1 == 1 { Hyperideal } else { Usual }));
    }
    out
}

pub fn random_angle_data(rng: &mut ChaCha8Rng, kinds: [VertexKind; 3]) -> [f64; 3] {
    if kinds == [Usual; 3] {
        let w = [0; 3].map(|_| rng.gen_range(0.05..1.0f64));
        let total = rng.gen_range(0.1..PI - 0.02);
        let s: f64 = w.iter().sum();
        w.map(|x| x / s * total)
    } else {
        kinds.map(|k| match k {
            Usual => rng.gen_range(0.03..FRAC_PI_2 - 0.03),
            Hyperideal => rng.gen_range(0.05..4.0),
        })
    }
}

pub fn random_surface(rng: &mut ChaCha8Rng) -> SurfaceFile {
    let mut len = || rng.gen_range(0.2..5.0);
    let l3 = [len(), len(), len()];
    let mut tw = || rng.gen_range(-4.0..4.0);
    let d3 = [tw(), tw(), tw()];
    let mut ang = || rng.gen_range(0.05..3.1);
    let cones = [ang(), ang(), ang(), ang()];
    match rng.gen_range(0..5) {
        0 => families::torus_with_cone(l3[0], d3[0], cones[0]),
        1 => families::four_cone_sphere(l3[0], d3[0], cones),
        2 => families::genus_two_theta(l3, d3),
        3 => families::genus_two_dumbbell(l3, d3),
        _ => families::torus_with_two_cones([l3[0], l3[1]], [d3[0], d3[1]], [cones[0], cones[1]]),
    }
}


/// (length of γ₁, cone angle, twist, strip width)
pub const PINNED: [(f64, f64, f64, f64); 20] = [
    (2.6339157938496336, 1.5707963267948966, 0.0, 0.5),
    (2.6339157938496336, 1.5707963267948966, 0.7, 0.5),
    (1.0, 1.0, 0.0, 0.1),
    (1.0, 1.0, 1.5, 1.0),
    (0.5, 2.5, -0.4, 0.3),
    (0.5, 0.3, 2.0, 2.0),
    (3.0, 0.8, -2.5, 0.05),
    (3.0, 2.9, 0.1, 1.5),
    (1.7, 1.2, 0.9, 0.9),
    (0.8, 1.9, -1.1, 0.6),
    (2.2, 0.5, 2.7, 0.25),
    (4.0, 1.4, -0.3, 3.0),
    (1.3, 3.0, 1.9, 0.01),
    (0.3, 1.0, 0.2, 0.4),
    (2.9, 2.2, -1.8, 1.2),
    (1.1, 0.2, 0.5, 0.75),
    (0.6, 1.6, -2.9, 0.15),
    (3.5, 2.7, 1.2, 2.5),
    (1.9, 0.9, -0.6, 1.8),
    (2.4, 1.8, 2.2, 0.35),
];


/// Distance from the cone point to the geodesic joining the points at distance
/// `eps` on the two sides of a wedge of angle `theta`, by golden-section search
/// along the developed segment.
pub fn wedge_radius(theta: f64, eps: f64) -> f64 {
    let at = |phi: f64| HVector::new(eps.sinh() * phi.cos(), eps.sinh() * phi.sin(), eps.cosh());
    let (p, q) = (at(0.0), at(theta));
    let d = dist_point_point(&p, &q).unwrap();
    // unit-speed geodesic from p to q
    let point = |s: f64| {
        let (a, b) = (((d - s).sinh()) / d.sinh(), s.sinh() / d.sinh());
        HVector::new(a * p.x + b * q.x, a * p.y + b * q.y, a * p.z + b * q.z)
    };
    let o = HVector::new(0.0, 0.0, 1.0);
    let f = |s: f64| dist_point_point(&o, &point(s)).unwrap();
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, d);
    while hi - lo > 1e-12 {
        let (m1, m2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    f((lo + hi) / 2.0)
}
