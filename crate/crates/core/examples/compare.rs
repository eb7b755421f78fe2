//! Weighted A* at three inflations against SAS on the trap map, as a
//! metrics table. The baseline rows take several seconds each.
//!
//! `cargo run --release --example compare`

use sas_planner::bench::{run_scenario, write_csv, MapSource, Scenario};
use sas_planner::gridmap::{anchors, GenParams, MapKind};
use sas_planner::primitives::Pose;
use sas_planner::search::PlannerConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (w, h) = (350, 200);
    let ((sx, sy), (gx, gy)) = anchors(w, h);
    let map = MapSource::Generated {
        kind: MapKind::Utrap,
        width: w,
        height: h,
        seed: 7,
        params: GenParams::default(),
    };
    let model = PlannerConfig::default_model();
    let mut sc = Scenario::new(map, Pose::new(sx, sy, 0.0), Pose::new(gx, gy, 0.0));
    sc.repeats = 1;
    for mu in [1.0, 2.0, 3.0] {
        sc = sc.with_config(format!("wa*(mu={mu})"), PlannerConfig::baseline(model, mu));
    }
    sc = sc.with_config("sas", PlannerConfig::sas(model));

    let run = run_scenario(&sc)?;
    println!("edt {:.2} ms", run.edt_ms);
    print!("{}", write_csv(&run.rows));
    let sas = run.rows.last().unwrap();
    for row in &run.rows[..3] {
        if let (Some(n), Some(t)) = (row.nodes_stored, row.wall_time_ms) {
            println!(
                "{}: {:.1}x the nodes, {:.1}x the time of sas",
                row.label,
                n as f64 / sas.nodes_stored.unwrap() as f64,
                t / sas.wall_time_ms.unwrap()
            );
        }
    }
    Ok(())
}
