//! Points, lines and isometries in the hyperboloid model.
//!
//! Run with `cargo run --example hyperboloid_basics`.

use hypercone::hkernel::{
    dist_point_line, dist_point_point, translation_length, triangle_area, HVector, Isometry,
};
use std::f64::consts::FRAC_PI_2;

fn main() -> Result<(), hypercone::error::Error> {
    let o = HVector::new(0.0, 0.0, 1.0);
    let p = Isometry::translate_x(1.5).apply(&o);
    println!("d(o, T_x(1.5) o) = {:.12}", dist_point_point(&o, &p)?);

    // The pole (0, 1, 0) is the geodesic y = 0; T_y(t) moves o off it by t.
    let line = HVector::new(0.0, 1.0, 0.0);
    let q = Isometry::translate_y(0.7).apply(&o);
    println!("d(T_y(0.7) o, x-axis) = {:.12}", dist_point_line(&q, &line)?);

    let g = Isometry::translate_x(1.0).compose(&Isometry::rotate(FRAC_PI_2)).compose(&Isometry::translate_x(1.0));
    let t = translation_length(&g)?;
    println!("T(1) R(π/2) T(1): {} with translation length {:.12}", t.kind, t.length);

    println!("area of the (π/6, π/4, π/5) triangle = {:.12}", triangle_area([
        std::f64::consts::PI / 6.0,
        std::f64::consts::PI / 4.0,
        std::f64::consts::PI / 5.0,
    ])?);
    Ok(())
}
