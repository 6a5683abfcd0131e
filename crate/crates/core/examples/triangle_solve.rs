//! Extended triangles: solve from edge lengths or from angle data and inspect
//! the truncated boundary.
//!
//! Run with `cargo run --example triangle_solve`.

use hypercone::triangle::{solve_from_angles, solve_from_lengths, VertexKind::*};

fn main() -> Result<(), hypercone::error::Error> {
    // Three hyperideal vertices with all lengths arccosh 2: the regular right-angled hexagon.
    let a = 2f64.acosh();
    let hex = solve_from_lengths([Hyperideal; 3], [a; 3])?;
    println!("hexagon truncation arcs: {:?}", hex.angle_data);
    println!("hexagon area: {:.12} (π = {:.12})", hex.truncated_area(), std::f64::consts::PI);

    let mixed = solve_from_angles([Usual, Hyperideal, Hyperideal], [1.0, 0.8, 1.1])?;
    println!("(U,H,H) from angle data: edges {:?}", mixed.edge_lengths);
    for seg in mixed.truncated_boundary()? {
        println!("  {:?} of length {:.9}", seg.kind, seg.length);
    }
    let back = solve_from_lengths(mixed.kinds, mixed.edge_lengths)?;
    println!("round trip angle data: {:?}", back.angle_data);
    Ok(())
}
