//! Grafting: the shortest path in the metric with flat annuli inserted along a
//! weighted pants curve, and the sandwich L ≤ L_G ≤ L + i(λ, γ).
//!
//! Run with `cargo run --example grafting`.

use hypercone::curves::{geodesic_length, intersection_number, words, RationalLamination};
use hypercone::deform::graft_length;
use hypercone::surface::families;

fn main() -> Result<(), hypercone::error::Error> {
    let g = families::four_cone_sphere(1.2, 0.3, [1.0, 1.5, 2.0, 0.5]).build()?;
    let w = words::four_cone_delta(0);
    let l = geodesic_length(&g, &w)?;
    for weight in [0.0, 0.1, 0.5, 1.0, 3.0] {
        let lambda = RationalLamination::single("g1", weight);
        let path = graft_length(&g, &lambda, &w)?;
        let i = intersection_number(&g.decomposition, &lambda, &w)?;
        println!(
            "width {weight:3.1}: {l:.9} <= {:.9} <= {:.9}   (residual {:.1e}, {} iterations)",
            path.length,
            l + i,
            path.residual,
            path.iterations
        );
    }
    let path = graft_length(&g, &RationalLamination::single("g1", 0.5), &w)?;
    for seg in &path.segments {
        println!("  {seg:?}");
    }
    Ok(())
}
