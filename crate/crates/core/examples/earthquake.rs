//! Right earthquakes along a weighted pants curve and the length estimate
//! |L − L′| ≤ i(ν, γ) ≤ L + L′.
//!
//! Run with `cargo run --example earthquake`.

use hypercone::curves::{geodesic_length, intersection_number, words, RationalLamination};
use hypercone::deform::earthquake;
use hypercone::surface::families;

fn main() -> Result<(), hypercone::error::Error> {
    let g = families::torus_with_cone(1.5, 0.2, 1.0).build()?;
    let w = words::torus_dual(0);
    let before = geodesic_length(&g, &w)?;
    for weight in [0.0, 0.25, 0.5, 1.0, 2.0] {
        let nu = RationalLamination::single("g1", weight);
        let e = earthquake(&g, &nu)?;
        let after = geodesic_length(&e, &w)?;
        let i = intersection_number(&g.decomposition, &nu, &w)?;
        println!(
            "weight {weight:4.2}: |L - L'| = {:.9} <= i = {i:.9} <= L + L' = {:.9}",
            (before - after).abs(),
            before + after
        );
    }
    Ok(())
}
