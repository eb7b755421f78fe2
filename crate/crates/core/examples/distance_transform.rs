//! Clearance map of a random-circles map: timing and a few probes.
//!
//! `cargo run --release --example distance_transform`

use std::time::Instant;

use sas_planner::gridmap::{distance_transform, generate_map, GenParams, MapKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = generate_map(MapKind::Circles, 1000, 500, 42, &GenParams::default())?;
    let t = Instant::now();
    let cmap = distance_transform(&map);
    let ms = t.elapsed().as_secs_f64() * 1e3;
    let max = cmap.as_slice().iter().copied().fold(0.0, f64::max);
    println!(
        "1000x500, {} obstacle cells, {ms:.2} ms",
        map.obstacle_count()
    );
    println!("largest clearance {max:.3} cells");
    for (x, y) in [(86.0, 250.0), (500.0, 250.0), (914.5, 250.5), (-1.0, 0.0)] {
        println!(
            "  ({x:>6}, {y:>6}): cell {:.3}, point bound {:.3}",
            cmap.clearance_at(x, y),
            cmap.point_clearance(x, y)
        );
    }
    Ok(())
}
