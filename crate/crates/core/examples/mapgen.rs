//! Generates one map of every kind and writes it as ASCII and PGM.
//!
//! `cargo run --example mapgen [out_dir]`

use std::fs;
use std::path::PathBuf;

use sas_planner::gridmap::{generate_map, write_map_ascii, write_map_pgm, GenParams, MapKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or("out/mapgen".into()));
    fs::create_dir_all(&out)?;
    for kind in [
        MapKind::Empty,
        MapKind::Utrap,
        MapKind::Circles,
        MapKind::Corridor,
    ] {
        let map = generate_map(kind, 350, 200, 7, &GenParams::default())?;
        fs::write(out.join(format!("{kind}.txt")), write_map_ascii(&map))?;
        fs::write(out.join(format!("{kind}.pgm")), write_map_pgm(&map))?;
        println!(
            "{kind:<8} {}x{} obstacles={} components={}",
            map.width(),
            map.height(),
            map.obstacle_count(),
            map.obstacle_components()
        );
    }
    println!("written to {}", out.display());
    Ok(())
}
