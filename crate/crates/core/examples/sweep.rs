//! Sweeps the goal coefficient on a query whose goal lies in open space,
//! then the obstacle coefficient on a cluttered map.
//!
//! `cargo run --release --example sweep`

use sas_planner::bench::{parse_csv, sweep, write_csv, MapSource, Scenario, SweepParam};
use sas_planner::gridmap::{anchors, GenParams, MapKind};
use sas_planner::primitives::Pose;
use sas_planner::search::PlannerConfig;

fn circles(width: usize, height: usize, seed: u64, count: Option<usize>) -> MapSource {
    MapSource::Generated {
        kind: MapKind::Circles,
        width,
        height,
        seed,
        params: GenParams {
            count,
            ..GenParams::default()
        },
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = PlannerConfig::sas(PlannerConfig::default_model());

    let mut near_goal = Scenario::new(
        circles(500, 300, 5, Some(12)),
        Pose::new(150.0, 150.0, 0.0),
        Pose::new(350.0, 150.0, 0.0),
    );
    near_goal.repeats = 3;
    let kg: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    let run = sweep(&near_goal, &cfg, SweepParam::KappaG, &kg)?;
    print!("{}", write_csv(&run.rows));

    let ((sx, sy), (gx, gy)) = anchors(1000, 500);
    let mut cluttered = Scenario::new(
        circles(1000, 500, 42, None),
        Pose::new(sx, sy, 0.0),
        Pose::new(gx, gy, 0.0),
    );
    cluttered.repeats = 1;
    let ko: Vec<f64> = (3..=10).map(|i| i as f64 / 10.0).collect();
    let run = sweep(&cluttered, &cfg, SweepParam::KappaO, &ko)?;
    let csv = write_csv(&run.rows);
    print!("{csv}");
    assert_eq!(parse_csv(&csv)?, run.rows);
    Ok(())
}
