mod common;

use std::f64::consts::{FRAC_PI_2, TAU};

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use sas_planner::primitives::{
    apply_primitive, arc_length, base_primitive_set, sample_trajectory, scale_primitive,
    steering_arc_length, Pose, ScaledPrimitive, VehicleModel,
};
use sas_planner::search::PlannerConfig;

use common::{menger_curvature, rk4_endpoint};

fn polyline_length(pts: &[(f64, f64)]) -> f64 {
    pts.windows(2)
        .map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1))
        .sum()
}

#[test]
fn endpoints_match_integrated_bicycle_model() {
    let model = PlannerConfig::default_model();
    let start = Pose::new(12.0, -3.0, 5.0 * TAU / 32.0);
    for prim in base_primitive_set(&model) {
        for eta in [1.0, 0.6, 0.2] {
            let Some(sp) = scale_primitive(&prim, eta, &model) else {
                continue;
            };
            let end = apply_primitive(&start, &sp);
            let (x, y, th) = rk4_endpoint(&start, &sp, 2000);
            assert_abs_diff_eq!(end.x, x, epsilon = 1e-8);
            assert_abs_diff_eq!(end.y, y, epsilon = 1e-8);
            let dth = (end.theta - th).rem_euclid(TAU);
            assert!(dth.min(TAU - dth) < 1e-8);
        }
    }
}

#[test]
fn small_turn_radius_five() {
    let model = PlannerConfig::default_model();
    let base = base_primitive_set(&model)
        .into_iter()
        .find(|p| p.steer_index == 1)
        .unwrap();
    let sp = ScaledPrimitive {
        base,
        eta: 5.0 / base.radius,
        length: 5.0 * base.turn,
        radius: 5.0,
    };
    let start = Pose::new(0.0, 0.0, 0.0);
    let end = apply_primitive(&start, &sp);
    assert_abs_diff_eq!(end.x, 0.9754516100806412, epsilon = 1e-12);
    assert_abs_diff_eq!(end.y, 0.09607359798384785, epsilon = 1e-12);
    assert_abs_diff_eq!(end.theta, TAU / 32.0, epsilon = 1e-12);
    let (x, y, _) = rk4_endpoint(&start, &sp, 1000);
    assert_abs_diff_eq!(end.x, x, epsilon = 1e-10);
    assert_abs_diff_eq!(end.y, y, epsilon = 1e-10);
}

#[test]
fn quarter_turn_lands_on_lattice() {
    let model = VehicleModel::new(1.0, 0.05, 16, 16).unwrap();
    let quarter = base_primitive_set(&model)
        .into_iter()
        .find(|p| p.turn_steps == 4)
        .unwrap();
    let sp = scale_primitive(&quarter, 1.0, &model).unwrap();
    let end = apply_primitive(&Pose::new(0.0, 0.0, 0.0), &sp);
    assert_abs_diff_eq!(end.x, sp.radius, epsilon = 1e-12);
    assert_abs_diff_eq!(end.y, sp.radius, epsilon = 1e-12);
    assert_abs_diff_eq!(end.theta, FRAC_PI_2, epsilon = 1e-12);
}

#[test]
fn sampled_length_converges() {
    let model = PlannerConfig::default_model();
    let start = Pose::new(0.0, 0.0, 1.0 * TAU / 32.0);
    for prim in base_primitive_set(&model).iter().step_by(7) {
        let sp = scale_primitive(prim, 1.0, &model).unwrap();
        let len = polyline_length(&sample_trajectory(&start, &sp, 1e-3));
        assert!((len - sp.length).abs() <= 1e-4 * sp.length);
    }
}

#[test]
fn zero_steer_limit() {
    let model = VehicleModel::new(1.0, 0.01, 64, 32).unwrap();
    // A fractional steering index h = alpha / alpha_min turns by h theta_min.
    let alpha = 1e-8;
    let limit = steering_arc_length(alpha, alpha / model.alpha_min() * model.theta_min(), 1.0);
    let straight = arc_length(0, &model).unwrap();
    assert_abs_diff_eq!(straight, 19.6349540849, epsilon = 1e-9);
    assert_abs_diff_eq!(limit, straight, epsilon = 1e-9);
}

#[test]
fn closed_set_of_headings() {
    // Chaining primitives never leaves the heading lattice.
    let model = PlannerConfig::default_model();
    let prims = base_primitive_set(&model);
    let mut pose = Pose::new(100.0, 100.0, 0.0);
    for i in 0..500 {
        let sp = scale_primitive(&prims[(i * 37) % prims.len()], 1.0, &model).unwrap();
        pose = apply_primitive(&pose, &sp);
        let k = pose.heading_bin(32);
        assert_abs_diff_eq!(pose.theta, k as f64 * TAU / 32.0, epsilon = 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn curvature_stays_bounded(
        h in -32i32..=32,
        eta in 0.05f64..=1.0,
        theta_k in 0i64..32,
        x in -50.0f64..50.0,
        y in -50.0f64..50.0,
    ) {
        let model = PlannerConfig::default_model();
        let prim = base_primitive_set(&model)[(h + 32) as usize];
        if let Some(sp) = scale_primitive(&prim, eta, &model) {
            let bound = model.max_curvature() + 1e-6;
            prop_assert!(sp.curvature() <= bound);
            let pts = sample_trajectory(&Pose::on_lattice(x, y, theta_k, 32), &sp, 0.05);
            for w in pts.windows(3) {
                prop_assert!(menger_curvature(w[0], w[1], w[2]) <= bound);
            }
        }
    }
}
