//! Explored-state heatmaps of weighted A* and SAS on a small trap map.
//!
//! `cargo run --release --example esd_heatmap [out_dir]`

use std::fs;
use std::path::PathBuf;

use sas_planner::bench::{esd_heatmap, write_ppm};
use sas_planner::gridmap::{
    anchors, distance_transform, generate_map, trap_rect, GenParams, MapKind,
};
use sas_planner::primitives::Pose;
use sas_planner::search::{plan, PlannerConfig, DEFAULT_BUDGET};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or("out/esd_heatmap".into()));
    fs::create_dir_all(&out)?;
    let (w, h, seed) = (175, 100, 7);
    let params = GenParams::default();
    let map = generate_map(MapKind::Utrap, w, h, seed, &params)?;
    let cmap = distance_transform(&map);
    let ((sx, sy), (gx, gy)) = anchors(w, h);
    let (start, goal) = (Pose::new(sx, sy, 0.0), Pose::new(gx, gy, 0.0));
    let trap = trap_rect(w, h, seed, &params)?;

    let model = PlannerConfig::default_model();
    let configs = [
        ("wa", PlannerConfig::baseline(model, 2.0)),
        ("sas", PlannerConfig::sas(model)),
    ];
    for (name, cfg) in configs {
        let res = plan(&map, &cmap, &start, &goal, &cfg, DEFAULT_BUDGET)?;
        let hot = (0..res.esd.len()).max_by_key(|&i| res.esd[i]).unwrap();
        let (hx, hy) = (hot % w, hot / w);
        println!(
            "{name}: {} comparisons, hottest cell ({hx}, {hy}) {} the trap",
            res.esd.iter().sum::<u64>(),
            if trap.contains(hx, hy) {
                "inside"
            } else {
                "outside"
            }
        );
        fs::write(
            out.join(format!("{name}_esd.ppm")),
            write_ppm(&esd_heatmap(&res.esd, w, h)),
        )?;
    }
    println!("images in {}", out.display());
    Ok(())
}
