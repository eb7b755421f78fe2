//! Space adaptive search over the `(x, y, heading)` lattice.
//!
//! The planner grows a tree of continuous poses with scaled motion
//! primitives and records the best known path cost of every lattice state
//! in a [`GCostStore`]. In [`Mode::Sas`] each admitted node also stamps its
//! cost onto all same-heading states inside its *effective zone*, a disc
//! whose radius shrinks near obstacles and near the goal. Primitives are
//! scaled so that each straight step leaves that disc by exactly the
//! minimum step `lambda`. [`Mode::Baseline`] is plain weighted A* with
//! fixed-size primitives and single-cell updates.

mod planner;
mod store;

pub use planner::{
    plan, plan_with_observer, reconstruct_path, NoopObserver, PathSegment, PlanResult, PlanStatus,
    SearchNode, SearchObserver, SearchTree,
};
pub use store::GCostStore;

use thiserror::Error;

use crate::gridmap::{floor_i, ClearanceMap};
use crate::primitives::{sample_count, Pose, PrimitiveError, ScaledPrimitive, VehicleModel};

/// Default number of expansions before a search gives up.
pub const DEFAULT_BUDGET: usize = 5_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("{name} = {value} out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error(transparent)]
    Model(#[from] PrimitiveError),
}

#[derive(Debug, Error, PartialEq)]
pub enum PlanError {
    #[error("invalid planner configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("start pose ({x}, {y}) is in collision or off the map")]
    StartInCollision { x: f64, y: f64 },
    #[error("goal pose ({x}, {y}) is in collision or off the map")]
    GoalInCollision { x: f64, y: f64 },
    #[error("clearance map is {got:?}, expected {expected:?} to match the grid map")]
    MapMismatch {
        got: (usize, usize),
        expected: (usize, usize),
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Effective zones plus clearance-scaled primitives.
    Sas,
    /// Single-cell updates with primitives of one fixed size.
    Baseline,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerConfig {
    pub mode: Mode,
    /// Obstacle coefficient, `0 < kappa_o <= 1`.
    pub kappa_o: f64,
    /// Goal coefficient, `0 < kappa_g <= 1`.
    pub kappa_g: f64,
    /// Minimum physical step, `0 < lambda < straight_length`.
    pub lambda: f64,
    /// Heuristic inflation; 0 orders the frontier by path cost alone.
    pub mu: f64,
    pub model: VehicleModel,
    pub robot_radius: f64,
    /// Arrival radius around the goal position; `None` means `lambda`.
    pub goal_pos_tol: Option<f64>,
    /// Straight-primitive length used in baseline mode; `None` means
    /// `0.3 * straight_length`.
    pub baseline_step: Option<f64>,
    /// Additional fixed scale factors tried at every SAS expansion.
    pub extra_scales: Vec<f64>,
    /// Arc sampling step for collision checks.
    pub sample_step: f64,
}

impl PlannerConfig {
    pub fn default_model() -> VehicleModel {
        VehicleModel::new(2.5, 0.01, 64, 32).expect("default model is valid")
    }

    pub fn sas(model: VehicleModel) -> Self {
        Self {
            mode: Mode::Sas,
            kappa_o: 1.0,
            kappa_g: 0.6,
            lambda: 3.0,
            mu: 0.0,
            model,
            robot_radius: 0.0,
            goal_pos_tol: None,
            baseline_step: None,
            extra_scales: Vec::new(),
            sample_step: 0.5,
        }
    }

    pub fn baseline(model: VehicleModel, mu: f64) -> Self {
        Self {
            mode: Mode::Baseline,
            mu,
            ..Self::sas(model)
        }
    }

    pub fn goal_tolerance(&self) -> f64 {
        self.goal_pos_tol.unwrap_or(self.lambda)
    }

    pub fn baseline_length(&self) -> f64 {
        self.baseline_step
            .unwrap_or(0.3 * self.model.straight_length())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        fn check(
            name: &'static str,
            value: f64,
            ok: bool,
            expected: &'static str,
        ) -> Result<(), ConfigError> {
            if ok && value.is_finite() {
                Ok(())
            } else {
                Err(ConfigError::OutOfRange {
                    name,
                    value,
                    expected,
                })
            }
        }
        let ds0 = self.model.straight_length();
        let (ko, kg) = (self.kappa_o, self.kappa_g);
        check("kappa_o", ko, ko > 0.0 && ko <= 1.0, "0 < kappa_o <= 1")?;
        check("kappa_g", kg, kg > 0.0 && kg <= 1.0, "0 < kappa_g <= 1")?;
        check(
            "lambda",
            self.lambda,
            self.lambda > 0.0 && self.lambda < ds0,
            "0 < lambda < straight primitive length",
        )?;
        check("mu", self.mu, self.mu >= 0.0, "mu >= 0")?;
        check(
            "robot_radius",
            self.robot_radius,
            self.robot_radius >= 0.0,
            "robot_radius >= 0",
        )?;
        let tol = self.goal_tolerance();
        check("goal_pos_tol", tol, tol > 0.0, "goal_pos_tol > 0")?;
        let b = self.baseline_length();
        check(
            "baseline_step",
            b,
            b > 0.0 && b <= ds0,
            "0 < baseline_step <= straight primitive length",
        )?;
        for &s in &self.extra_scales {
            check("extra_scales", s, s > 0.0 && s <= 1.0, "0 < scale <= 1")?;
        }
        check(
            "sample_step",
            self.sample_step,
            self.sample_step > 0.0 && self.sample_step <= 1.0,
            "0 < sample_step <= 1",
        )?;
        Ok(())
    }
}

/// Lattice coordinates of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateIndex {
    pub ix: u32,
    pub iy: u32,
    pub k: u32,
}

/// `None` when the pose lies outside the map.
pub fn state_index(pose: &Pose, width: usize, height: usize, k: u32) -> Option<StateIndex> {
    if !(pose.x.is_finite() && pose.y.is_finite()) {
        return None;
    }
    let (ix, iy) = (floor_i(pose.x), floor_i(pose.y));
    if ix < 0 || iy < 0 || ix >= width as i64 || iy >= height as i64 {
        return None;
    }
    Some(StateIndex {
        ix: ix as u32,
        iy: iy as u32,
        k: pose.heading_bin(k),
    })
}

/// `min(kappa_o d_o, kappa_g d_g, delta_s0 - lambda)`, never negative.
pub fn effective_radius(d_o: f64, d_g: f64, cfg: &PlannerConfig, delta_s0: f64) -> f64 {
    (cfg.kappa_o * d_o)
        .min(cfg.kappa_g * d_g)
        .min(delta_s0 - cfg.lambda)
        .max(0.0)
}

/// In-bounds cells whose centers lie strictly within `r_e` of `(x, y)`,
/// plus the cell containing `(x, y)`.
pub fn zone_cells(x: f64, y: f64, r_e: f64, width: usize, height: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for_each_zone_cell(x, y, r_e, width, height, |ix, iy| out.push((ix, iy)));
    out
}

pub(crate) fn for_each_zone_cell(
    x: f64,
    y: f64,
    r_e: f64,
    width: usize,
    height: usize,
    mut f: impl FnMut(u32, u32),
) {
    for_each_zone_run(x, y, r_e, width, height, |iy, lo, hi| {
        for ix in lo..=hi {
            f(ix, iy)
        }
    });
}

/// The cells of [`zone_cells`] as disjoint row runs `(iy, x_lo, x_hi)`,
/// inclusive.
pub(crate) fn for_each_zone_run(
    x: f64,
    y: f64,
    r_e: f64,
    width: usize,
    height: usize,
    mut f: impl FnMut(u32, u32, u32),
) {
    let (cx, cy) = (floor_i(x), floor_i(y));
    let r2 = r_e * r_e;
    let inside = |ix: i64, iy: i64| {
        let (dx, dy) = (ix as f64 + 0.5 - x, iy as f64 + 0.5 - y);
        dx * dx + dy * dy < r2
    };
    let center_in = cx >= 0 && cy >= 0 && cx < width as i64 && cy < height as i64;
    if center_in && !(r_e > 0.0 && inside(cx, cy)) {
        f(cy as u32, cx as u32, cx as u32);
    }
    if r_e <= 0.0 {
        return;
    }
    let y_lo = (y - r_e - 0.5).floor().max(0.0) as i64;
    let y_hi = ((y + r_e - 0.5).ceil() as i64).min(height as i64 - 1);
    for iy in y_lo..=y_hi {
        let dy = iy as f64 + 0.5 - y;
        let rem = r2 - dy * dy;
        if rem <= 0.0 {
            continue;
        }
        let half = rem.sqrt();
        // The bounds may overshoot by a cell; the disc is convex, so
        // trimming both ends leaves exactly the inside cells.
        let mut lo = (x - half - 0.5).floor().max(0.0) as i64;
        let mut hi = ((x + half - 0.5).ceil() as i64).min(width as i64 - 1);
        while lo <= hi && !inside(lo, iy) {
            lo += 1;
        }
        while hi >= lo && !inside(hi, iy) {
            hi -= 1;
        }
        if lo <= hi {
            f(iy as u32, lo as u32, hi as u32);
        }
    }
}

/// True iff every sample is on the map and its cell's clearance exceeds `rho`.
pub fn collision_free(cmap: &ClearanceMap, samples: &[(f64, f64)], rho: f64) -> bool {
    samples.iter().all(|&(x, y)| {
        x >= 0.0
            && y >= 0.0
            && x < cmap.width() as f64
            && y < cmap.height() as f64
            && cmap.clearance_at(x, y) > rho
    })
}

/// Swept check used during expansion: every cell touched by the bounding
/// box of each sampled chord (grown by the arc's sagitta) must be on the
/// map with clearance above `rho`. Any finer resampling of the same arc can
/// only visit cells this check already accepted.
pub fn trajectory_clear(
    cmap: &ClearanceMap,
    start: &Pose,
    sp: &ScaledPrimitive,
    step: f64,
    rho: f64,
) -> bool {
    let (w, h) = (cmap.width() as i64, cmap.height() as i64);
    let n = sample_count(sp, step);
    let chord_pad = if sp.base.is_straight() {
        0.0
    } else {
        let chord = sp.length / n as f64;
        let r = sp.radius;
        r - (r * r - chord * chord / 4.0).max(0.0).sqrt()
    };
    let pad = chord_pad + 1e-9;

    // Every touched cell center lies within `reach` of the start, and cell
    // clearance is 1-Lipschitz between centers.
    let reach = sp.length + pad + std::f64::consts::FRAC_1_SQRT_2 + 1e-9;
    let inside = start.x - reach >= 0.0
        && start.y - reach >= 0.0
        && start.x + reach < w as f64
        && start.y + reach < h as f64;
    if inside && cmap.point_clearance(start.x, start.y) - reach > rho {
        return true;
    }

    let mut prev = (start.x, start.y);
    if cmap.clearance_at(prev.0, prev.1) <= rho {
        return false;
    }
    // Samples by rotating the heading one chord at a time; the drift over a
    // primitive stays orders of magnitude below `pad`.
    let (sin0, cos0) = start.theta.sin_cos();
    let (turn, r) = if sp.base.is_straight() {
        (0.0, 0.0)
    } else {
        (sp.base.turn, sp.length / sp.base.turn)
    };
    let (sd, cd) = (turn / n as f64).sin_cos();
    let (mut s, mut c) = (sin0, cos0);
    for i in 1..=n {
        let cur = if sp.base.is_straight() {
            let d = sp.length * i as f64 / n as f64;
            (start.x + d * cos0, start.y + d * sin0)
        } else {
            (s, c) = (s * cd + c * sd, c * cd - s * sd);
            (start.x + r * (s - sin0), start.y - r * (c - cos0))
        };
        let x_lo = floor_i(prev.0.min(cur.0) - pad);
        let x_hi = floor_i(prev.0.max(cur.0) + pad);
        let y_lo = floor_i(prev.1.min(cur.1) - pad);
        let y_hi = floor_i(prev.1.max(cur.1) + pad);
        if x_lo < 0 || y_lo < 0 || x_hi >= w || y_hi >= h {
            return false;
        }
        for iy in y_lo..=y_hi {
            for ix in x_lo..=x_hi {
                if cmap.cell(ix, iy) <= rho {
                    return false;
                }
            }
        }
        prev = cur;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridmap::{distance_transform, GridMap};
    use std::f64::consts::{PI, TAU};

    #[test]
    fn indexes() {
        let p = Pose::new(2.7, 3.1, 0.0);
        assert_eq!(
            state_index(&p, 10, 10, 32),
            Some(StateIndex { ix: 2, iy: 3, k: 0 })
        );
        let p = Pose::new(0.0, 0.0, TAU - TAU / 32.0);
        assert_eq!(state_index(&p, 10, 10, 32).unwrap().k, 31);
        let p = Pose::new(5.0, 5.0, PI);
        assert_eq!(state_index(&p, 10, 10, 32).unwrap().k, 16);
        assert_eq!(state_index(&Pose::new(-0.1, 0.0, 0.0), 10, 10, 32), None);
        assert_eq!(state_index(&Pose::new(0.0, 10.0, 0.0), 10, 10, 32), None);
    }

    #[test]
    fn radius_examples() {
        let mut cfg = PlannerConfig::sas(PlannerConfig::default_model());
        cfg.kappa_o = 1.0;
        cfg.kappa_g = 0.6;
        cfg.lambda = 3.0;
        assert_eq!(effective_radius(10.0, 50.0, &cfg, 19.635), 10.0);
        assert_eq!(effective_radius(0.0, 50.0, &cfg, 19.635), 0.0);
        assert!((effective_radius(100.0, 2.0, &cfg, 19.635) - 1.2).abs() < 1e-12);
        assert!((effective_radius(100.0, 100.0, &cfg, 19.635) - 16.635).abs() < 1e-12);
    }

    #[test]
    fn zone_sizes() {
        let n = |r: f64| zone_cells(5.5, 5.5, r, 11, 11).len();
        assert_eq!(n(0.0), 1);
        assert_eq!(n(0.5), 1);
        assert_eq!(n(1.2), 5);
        assert_eq!(n(2.0), 9);
        // Clipped at the map edge.
        assert_eq!(zone_cells(0.5, 0.5, 1.2, 11, 11).len(), 3);
    }

    #[test]
    fn zone_matches_enumeration() {
        for &(x, y, r) in &[
            (3.3, 4.9, 2.7),
            (0.1, 7.7, 3.0),
            (9.9, 9.9, 5.5),
            (5.0, 5.0, 1.0),
        ] {
            let mut got = zone_cells(x, y, r, 10, 10);
            got.sort();
            let mut want: Vec<(u32, u32)> = (0..10u32)
                .flat_map(|iy| (0..10u32).map(move |ix| (ix, iy)))
                .filter(|&(ix, iy)| {
                    let d = (ix as f64 + 0.5 - x).hypot(iy as f64 + 0.5 - y);
                    d < r || (ix == x.floor() as u32 && iy == y.floor() as u32)
                })
                .collect();
            want.sort();
            assert_eq!(got, want, "zone at ({x}, {y}) r={r}");
        }
    }

    #[test]
    fn collision_rules() {
        let mut m = GridMap::new(10, 10).unwrap();
        m.set_obstacle(5, 5, true);
        let c = distance_transform(&m);
        assert!(collision_free(&c, &[(1.5, 1.5), (2.5, 1.5)], 0.0));
        assert!(!collision_free(&c, &[(1.5, 1.5), (5.2, 5.9)], 0.0));
        // (4.5, 5.5) has clearance exactly 1.
        assert!(!collision_free(&c, &[(4.5, 5.5)], 1.0));
        assert!(collision_free(&c, &[(4.5, 5.5)], 0.99));
        assert!(!collision_free(&c, &[(-0.1, 2.0)], 0.0));
    }

    #[test]
    fn config_validation() {
        let model = PlannerConfig::default_model();
        let ok = PlannerConfig::sas(model);
        assert!(ok.validate().is_ok());
        let bad = |f: &dyn Fn(&mut PlannerConfig)| {
            let mut c = ok.clone();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(&|c| c.kappa_o = 0.0));
        assert!(bad(&|c| c.kappa_g = 1.5));
        assert!(bad(&|c| c.lambda = 100.0));
        assert!(bad(&|c| c.mu = -1.0));
        assert!(bad(&|c| c.extra_scales = vec![1.5]));
        assert!(bad(&|c| c.baseline_step = Some(0.0)));
    }
}
