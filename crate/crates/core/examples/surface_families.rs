//! The standard surface families: topology checks, Gauss–Bonnet area and the
//! JSON surface format.
//!
//! Run with `cargo run --example surface_families`.

use hypercone::surface::{admissible_area, families, SurfaceFile};
use std::f64::consts::FRAC_PI_2;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let files: Vec<(&str, SurfaceFile)> = vec![
        ("torus with one cone", families::torus_with_cone(2.0, 0.3, FRAC_PI_2)),
        ("sphere with four cones", families::four_cone_sphere(1.2, 0.0, [1.0, 1.5, 2.0, 0.5])),
        ("genus two (theta)", families::genus_two_theta([1.0, 1.5, 2.0], [0.0, 0.4, -0.7])),
        ("genus two (dumbbell)", families::genus_two_dumbbell([1.0, 1.5, 2.0], [0.2, 0.0, 0.1])),
        ("torus with two cones", families::torus_with_two_cones([1.0, 2.0], [0.0, 0.5], [1.0, 2.5])),
    ];
    for (name, file) in &files {
        let g = file.build()?;
        println!(
            "{name}: admissible area {:.12}, sum of piece areas {:.12}",
            admissible_area(&g.surface)?,
            g.total_area()
        );
    }
    println!("{}", serde_json::to_string_pretty(&files[0].1)?);

    let mut broken = files[2].1.clone();
    broken.pieces[1].legs[2] = "g1".into();
    match broken.build() {
        Ok(_) => println!("unexpected: broken decomposition accepted"),
        Err(e) => println!("broken decomposition rejected: {e}"),
    }
    Ok(())
}
