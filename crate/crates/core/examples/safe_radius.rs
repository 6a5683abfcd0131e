//! The radius of the disk around a cone point of angle θ that every convex set
//! reaching distance ε from it must meet.
//!
//! Run with `cargo run --example safe_radius`.

use hypercone::estimates::safe_radius;
use std::f64::consts::{FRAC_PI_2, PI};

fn main() -> Result<(), hypercone::error::Error> {
    println!("rho(π/2, 1) = {:.15}", safe_radius(FRAC_PI_2, 1.0)?);
    for theta in [0.5, 1.0, 2.0, 3.0, PI - 1e-6] {
        let row: Vec<String> = [0.1, 0.5, 1.0, 3.0]
            .iter()
            .map(|&eps| format!("{:.6}", safe_radius(theta, eps).unwrap()))
            .collect();
        println!("theta {theta:.6}: {}", row.join("  "));
    }
    Ok(())
}
