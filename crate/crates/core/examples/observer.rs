//! Watching a search through `SearchObserver`: zone radii by distance to
//! the goal, on an obstacle-free map.
//!
//! `cargo run --release --example observer`

use sas_planner::gridmap::{distance_transform, GridMap};
use sas_planner::primitives::Pose;
use sas_planner::search::{plan_with_observer, PlannerConfig, SearchNode, SearchObserver};

/// Mean effective radius per 20-cell band of goal distance.
#[derive(Default)]
struct Bands {
    sum: [f64; 12],
    count: [u32; 12],
    expansions: usize,
}

impl SearchObserver for Bands {
    fn on_expand(&mut self, _node: &SearchNode) {
        self.expansions += 1;
    }

    fn on_admit(&mut self, child: &SearchNode) {
        let b = ((child.d_g / 20.0) as usize).min(11);
        self.sum[b] += child.r_e;
        self.count[b] += 1;
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = GridMap::new(300, 120)?;
    let cmap = distance_transform(&map);
    let cfg = PlannerConfig::sas(PlannerConfig::default_model());
    let mut bands = Bands::default();
    let res = plan_with_observer(
        &map,
        &cmap,
        &Pose::new(20.0, 60.0, 0.0),
        &Pose::new(250.0, 60.0, 0.0),
        &cfg,
        1_000_000,
        &mut bands,
    )?;
    println!(
        "{} cost={:.3} expansions={}",
        res.status.as_str(),
        res.path_cost,
        bands.expansions
    );
    for (b, (s, n)) in bands.sum.iter().zip(bands.count).enumerate() {
        if n > 0 {
            println!(
                "d_g {:>3}..{:<3} mean r_e {:6.2} over {n} nodes",
                b * 20,
                b * 20 + 20,
                s / n as f64
            );
        }
    }
    Ok(())
}
