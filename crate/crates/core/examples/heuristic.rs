//! SAS with an inflated goal-distance heuristic, from 0 to 3.
//!
//! `cargo run --release --example heuristic`

use sas_planner::bench::{sweep, write_csv, MapSource, Scenario, SweepParam};
use sas_planner::gridmap::{anchors, GenParams, MapKind};
use sas_planner::primitives::Pose;
use sas_planner::search::PlannerConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ((sx, sy), (gx, gy)) = anchors(1000, 500);
    let map = MapSource::Generated {
        kind: MapKind::Circles,
        width: 1000,
        height: 500,
        seed: 42,
        params: GenParams::default(),
    };
    let mut sc = Scenario::new(map, Pose::new(sx, sy, 0.0), Pose::new(gx, gy, 0.0));
    sc.repeats = 1;
    let cfg = PlannerConfig::sas(PlannerConfig::default_model());
    let mus = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0];
    let run = sweep(&sc, &cfg, SweepParam::Mu, &mus)?;
    print!("{}", write_csv(&run.rows));
    Ok(())
}
