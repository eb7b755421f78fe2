//! The base motion primitive set and how scaling shrinks it.
//!
//! `cargo run --example primitives`

use sas_planner::primitives::{
    apply_primitive, base_primitive_set, scale_factor, scale_primitive, Pose,
};
use sas_planner::search::PlannerConfig;

fn main() {
    let model = PlannerConfig::default_model();
    let ds0 = model.straight_length();
    let set = base_primitive_set(&model);
    println!(
        "{} primitives, straight length {ds0:.4}, max curvature {:.5}",
        set.len(),
        model.max_curvature()
    );
    println!(
        "{:>4} {:>9} {:>6} {:>10} {:>10}",
        "h", "alpha", "turns", "radius", "length"
    );
    for p in set.iter().filter(|p| p.steer_index >= 0).step_by(4) {
        println!(
            "{:>4} {:>9.4} {:>6} {:>10.3} {:>10.3}",
            p.steer_index, p.steering_angle, p.turn_steps, p.radius, p.base_length
        );
    }

    let lambda = 3.0;
    let start = Pose::new(0.0, 0.0, 0.0);
    println!("\nzone radius -> scale, feasible primitives, straight endpoint");
    for r_e in [0.0, 5.0, 15.0, 30.0, ds0 - lambda] {
        let eta = scale_factor(r_e, lambda, ds0);
        let feasible: Vec<_> = set
            .iter()
            .filter_map(|p| scale_primitive(p, eta, &model))
            .collect();
        let straight = feasible.iter().find(|s| s.base.is_straight()).unwrap();
        let end = apply_primitive(&start, straight);
        println!(
            "{r_e:>7.3} -> eta {eta:.4}, {:>2} feasible, ({:.3}, {:.3})",
            feasible.len(),
            end.x,
            end.y
        );
    }
}
