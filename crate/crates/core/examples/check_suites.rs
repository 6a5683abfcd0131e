//! Small runs of the randomized verification suites.
//!
//! Run with `cargo run --release --example check_suites`.

use hypercone::estimates::{check_area, check_graft_bounds, check_quake_bounds, BoundReport, CheckConfig};

fn summary(r: &BoundReport) {
    let a = &r.aggregate;
    println!(
        "{:>6}: {} samples, {} violations, {} near violations, min slack {:.3e}  [{}]",
        r.check, a.samples, a.violations, a.near_violations, a.min_slack, r.inequality
    );
}

fn main() -> Result<(), hypercone::error::Error> {
    let cfg = CheckConfig { samples: 500, seed: 11, ..CheckConfig::default() };
    summary(&check_quake_bounds(&cfg)?);
    summary(&check_graft_bounds(&CheckConfig { samples: 100, ..cfg.clone() })?);
    let area = check_area(300, 11)?;
    summary(&area);
    let mut csv = Vec::new();
    area.write_csv(&mut csv)?;
    println!("first CSV rows:");
    for line in String::from_utf8_lossy(&csv).lines().take(3) {
        println!("  {line}");
    }
    Ok(())
}
