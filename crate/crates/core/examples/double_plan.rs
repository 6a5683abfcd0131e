//! Doubling bookkeeping: the singular locus of the double, orbifold starting
//! angles, the deformation schedule and the bending-data hypothesis check.
//!
//! Run with `cargo run --example double_plan`.

use hypercone::doubling::{
    deformation_path, double_singular_locus, orbifold_start, validate_bending_data, BendingData,
    Face, FillingCertificate, Particle, Pleating, Side,
};
use std::f64::consts::{FRAC_PI_2, PI};

fn main() -> Result<(), hypercone::error::Error> {
    let b = BendingData {
        particles: vec![Particle { angle: FRAC_PI_2, segment_length: Some(1.3) }],
        pleating: vec![
            Pleating { curve: "a".into(), side: Side::Upper, weight: 1.0 },
            Pleating { curve: "b".into(), side: Side::Lower, weight: 2.0 },
        ],
    };
    let locus = double_singular_locus(&b)?;
    for c in &locus.curves {
        println!("singular curve {:?}: angle {:.6}, length {:?}", c.kind, c.angle, c.length);
    }
    let start = orbifold_start(&b)?;
    println!("start angles: particles {:?}, pleating {:?}", start.particles, start.pleating);
    let from: Vec<f64> = start.pleating.iter().map(|s| s.angle).collect();
    let to: Vec<f64> = b.pleating.iter().map(|p| p.weight).collect();
    let schedule = deformation_path(&from, &to, 5)?;
    for row in &schedule.rows {
        println!("  t = {:.2}: {:?}", row.t, row.angles);
    }
    for w in &schedule.warnings {
        println!("  warning: {w}");
    }

    let cert = FillingCertificate {
        genus: 2,
        crossings: 4,
        faces: vec![Face { disk: true, marked_points: 1 }, Face { disk: true, marked_points: 0 }],
    };
    println!("filling certificate: {:?}", validate_bending_data(&b, &cert)?);
    let mut heavy = b.clone();
    heavy.pleating[1].weight = PI;
    println!("weight π: {}", validate_bending_data(&heavy, &cert).unwrap_err());
    Ok(())
}
