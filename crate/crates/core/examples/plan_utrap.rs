//! Plans out of a deep U-shaped trap with SAS and renders the result.
//!
//! `cargo run --release --example plan_utrap [out_dir]`

use std::fs;
use std::path::PathBuf;

use sas_planner::bench::{esd_heatmap, render_overlay, write_ppm, Layer};
use sas_planner::gridmap::{anchors, distance_transform, generate_map, GenParams, MapKind};
use sas_planner::primitives::Pose;
use sas_planner::search::{plan, PlannerConfig, DEFAULT_BUDGET};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or("out/plan_utrap".into()));
    fs::create_dir_all(&out)?;
    let (w, h) = (350, 200);
    let map = generate_map(MapKind::Utrap, w, h, 7, &GenParams::default())?;
    let cmap = distance_transform(&map);
    let ((sx, sy), (gx, gy)) = anchors(w, h);
    let (start, goal) = (Pose::new(sx, sy, 0.0), Pose::new(gx, gy, 0.0));

    let cfg = PlannerConfig::sas(PlannerConfig::default_model());
    let res = plan(&map, &cmap, &start, &goal, &cfg, DEFAULT_BUDGET)?;
    println!(
        "{} cost={:.3} nodes={} expansions={} segments={} time={:.1} ms",
        res.status.as_str(),
        res.path_cost,
        res.nodes_stored,
        res.expansions,
        res.path.len(),
        res.wall_time.as_secs_f64() * 1e3
    );

    let images = [
        ("path.ppm", render_overlay(&map, &[Layer::Path(&res.path)])),
        (
            "tree.ppm",
            render_overlay(&map, &[Layer::Tree(&res.tree), Layer::Path(&res.path)]),
        ),
        (
            "zones.ppm",
            render_overlay(&map, &[Layer::Zones(&res.tree)]),
        ),
        ("esd.ppm", esd_heatmap(&res.esd, w, h)),
    ];
    for (name, img) in images {
        fs::write(out.join(name), write_ppm(&img))?;
    }
    println!("images in {}", out.display());
    Ok(())
}
