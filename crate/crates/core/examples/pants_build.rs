//! Singular pairs of pants from their leg invariants.
//!
//! Run with `cargo run --example pants_build`.

use hypercone::pants::{build_pants, Leg};
use std::f64::consts::FRAC_PI_2;

fn main() -> Result<(), hypercone::error::Error> {
    let l = 2.0 * 2f64.acosh();
    let regular = build_pants([Leg::Boundary { length: l }; 3])?;
    println!("regular pants seams: {:?}", regular.seams);

    let legs = [Leg::Boundary { length: l }, Leg::Boundary { length: l }, Leg::Cone { angle: FRAC_PI_2 }];
    let mixed = build_pants(legs)?;
    println!("two boundaries and a right-angled cone point:");
    println!("  seams {:?}", mixed.seams);
    println!("  area {:.12}", mixed.area());
    println!("  recovered legs {:?}", mixed.recomputed_legs()?);

    match build_pants([Leg::Cone { angle: 4.0 }, Leg::Boundary { length: 1.0 }, Leg::Boundary { length: 1.0 }]) {
        Ok(_) => println!("unexpected: cone angle 4 accepted"),
        Err(e) => println!("cone angle 4 rejected: {e}"),
    }
    Ok(())
}
