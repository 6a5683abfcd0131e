//! Geodesic lengths from holonomy: pants curves return their FN length, the
//! dual curve on the torus with a cone point follows its closed form.
//!
//! Run with `cargo run --example geodesic_length`.

use hypercone::curves::{geodesic_length, holonomy, words};
use hypercone::surface::families;
use std::f64::consts::FRAC_PI_2;

fn main() -> Result<(), hypercone::error::Error> {
    let l = 2.0 * 2f64.acosh();
    for d in [0.0, 0.5, 1.0, 2.0] {
        let g = families::torus_with_cone(l, d, FRAC_PI_2).build()?;
        let dual = geodesic_length(&g, &words::torus_dual(0))?;
        let core = geodesic_length(&g, &words::pants_curve("g1"))?;
        println!("twist {d:4.1}: dual curve {dual:.12}, pants curve {core:.12}");
    }
    let g = families::four_cone_sphere(1.2, 0.3, [1.0, 1.5, 2.0, 0.5]).build()?;
    let w = words::four_cone_delta(0);
    println!("four-cone sphere, curve around x1 and x3: {:.12}", geodesic_length(&g, &w)?);
    println!("holonomy trace {:.12}", holonomy(&g, &w)?.trace());
    Ok(())
}
