//! Independent reference implementations shared by the integration tests
//! and the acceptance suite.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use sas_planner::gridmap::{ClearanceMap, GridMap};
use sas_planner::primitives::{
    apply_primitive, base_primitive_set, scale_primitive, Pose, ScaledPrimitive, VehicleModel,
};
use sas_planner::search::{
    state_index, trajectory_clear, Mode, PlannerConfig, SearchNode, SearchObserver,
};

/// Nearest-obstacle distance by scanning every obstacle for every cell.
pub fn brute_edt(map: &GridMap) -> Option<Vec<f64>> {
    let (w, h) = (map.width(), map.height());
    let obstacles: Vec<(i64, i64)> = (0..w * h)
        .filter(|&i| map.cells()[i])
        .map(|i| ((i % w) as i64, (i / w) as i64))
        .collect();
    if obstacles.is_empty() {
        return None;
    }
    Some(
        (0..w * h)
            .map(|i| {
                let (x, y) = ((i % w) as i64, (i / w) as i64);
                let best = obstacles
                    .iter()
                    .map(|&(ox, oy)| (x - ox).pow(2) + (y - oy).pow(2))
                    .min()
                    .unwrap();
                (best as f64).sqrt()
            })
            .collect(),
    )
}

/// Every cell independently an obstacle with probability `density`.
pub fn random_map(rng: &mut impl Rng, w: usize, h: usize, density: f64) -> GridMap {
    let cells = (0..w * h).map(|_| rng.gen_bool(density)).collect();
    GridMap::from_cells(w, h, cells).unwrap()
}

/// Integrates the bicycle model `x' = cos t, y' = sin t, t' = tan(a) / L`
/// over the primitive's arc length with classical RK4. The scaled primitive
/// keeps its turn, so its effective wheelbase is `eta * L`.
pub fn rk4_endpoint(start: &Pose, sp: &ScaledPrimitive, steps: usize) -> (f64, f64, f64) {
    let curvature = if sp.base.is_straight() {
        0.0
    } else {
        sp.base.turn.signum() / sp.radius
    };
    let f = |th: f64| (th.cos(), th.sin(), curvature);
    let ds = sp.length / steps as f64;
    let (mut x, mut y, mut th) = (start.x, start.y, start.theta);
    for _ in 0..steps {
        let k1 = f(th);
        let k2 = f(th + 0.5 * ds * k1.2);
        let k3 = f(th + 0.5 * ds * k2.2);
        let k4 = f(th + ds * k3.2);
        x += ds / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        y += ds / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        th += ds / 6.0 * (k1.2 + 2.0 * k2.2 + 2.0 * k3.2 + k4.2);
    }
    (x, y, th)
}

/// Curvature of the circle through three points.
pub fn menger_curvature(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    let cross = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    let d = |p: (f64, f64), q: (f64, f64)| (p.0 - q.0).hypot(p.1 - q.1);
    2.0 * cross.abs() / (d(a, b) * d(b, c) * d(a, c))
}

/// Shortest path cost over the lattice graph the baseline planner induces:
/// each state keeps the pose of its cheapest arrival (first one on ties),
/// edges are the baseline-scaled primitives that pass the planner's swept
/// collision check, and states are settled in cost order with ties broken
/// by when their current cost was set. Returns the cost of the first
/// settled state that satisfies the goal test.
pub fn dijkstra_oracle(
    cmap: &ClearanceMap,
    start: &Pose,
    goal: &Pose,
    cfg: &PlannerConfig,
) -> Option<f64> {
    assert_eq!(cfg.mode, Mode::Baseline);
    let (w, h) = (cmap.width(), cmap.height());
    let model: &VehicleModel = &cfg.model;
    let k = model.heading_divisions();
    let eta = cfg.baseline_length() / model.straight_length();
    let edges: Vec<ScaledPrimitive> = base_primitive_set(model)
        .iter()
        .filter_map(|p| scale_primitive(p, eta, model))
        .collect();
    let goal_bin = goal.heading_bin(k);

    // state -> (cost, pose, stamp)
    let mut best: HashMap<(u32, u32, u32), (f64, Pose, u64)> = HashMap::new();
    let mut open: BTreeMap<(u64, u64), (u32, u32, u32)> = BTreeMap::new();
    let mut settled = std::collections::HashSet::new();
    let mut stamp = 0u64;

    let root = Pose::on_lattice(start.x, start.y, start.heading_bin(k) as i64, k);
    let ri = state_index(&root, w, h, k)?;
    let key = |s: &sas_planner::search::StateIndex| (s.ix, s.iy, s.k);
    best.insert(key(&ri), (0.0, root, stamp));
    open.insert((0f64.to_bits(), stamp), key(&ri));
    stamp += 1;

    while let Some((_, s)) = open.pop_first() {
        if !settled.insert(s) {
            continue;
        }
        let (g, pose, _) = best[&s];
        if pose.distance_to(goal) <= cfg.goal_tolerance() && s.2 == goal_bin {
            return Some(g);
        }
        for e in &edges {
            let child = apply_primitive(&pose, e);
            let Some(ci) = state_index(&child, w, h, k) else {
                continue;
            };
            let cg = g + e.length;
            let ck = key(&ci);
            let current = best.get(&ck).map_or(f64::INFINITY, |b| b.0);
            if cg >= current {
                continue;
            }
            if !trajectory_clear(cmap, &pose, e, cfg.sample_step, cfg.robot_radius) {
                continue;
            }
            if let Some(&(old_g, _, old_stamp)) = best.get(&ck) {
                open.remove(&(old_g.to_bits(), old_stamp));
            }
            best.insert(ck, (cg, child, stamp));
            // Nonnegative floats order like their bit patterns.
            open.insert((cg.to_bits(), stamp), ck);
            stamp += 1;
        }
    }
    None
}

/// Checks the search invariants on every event and records violations.
#[derive(Default)]
pub struct InvariantObserver<'a> {
    pub cmap: Option<&'a ClearanceMap>,
    pub lambda: f64,
    r_e: HashMap<usize, (Pose, f64)>,
    shadow: HashMap<(u32, u32, u32), f64>,
    pub stamps: u64,
    pub straight_children: u64,
    pub unsafe_stamps: Vec<(u32, u32)>,
    pub short_steps: Vec<usize>,
    /// Writes that did not strictly lower the previously written value.
    pub increases: u64,
    pub popped_g: Vec<f64>,
}

impl<'a> InvariantObserver<'a> {
    pub fn new(cmap: &'a ClearanceMap, lambda: f64) -> Self {
        Self {
            cmap: Some(cmap),
            lambda,
            ..Default::default()
        }
    }

    pub fn clean(&self) -> bool {
        self.unsafe_stamps.is_empty() && self.short_steps.is_empty() && self.increases == 0
    }
}

impl SearchObserver for InvariantObserver<'_> {
    fn on_expand(&mut self, node: &SearchNode) {
        self.popped_g.push(node.g);
    }

    fn on_admit(&mut self, child: &SearchNode) {
        if let (Some(p), Some(sp)) = (child.parent, child.via) {
            if sp.base.is_straight() {
                self.straight_children += 1;
                let (ppose, pr) = self.r_e[&p];
                if ppose.distance_to(&child.pose) <= pr {
                    self.short_steps.push(child.id);
                }
            }
        }
        self.r_e.insert(child.id, (child.pose, child.r_e));
    }

    fn on_stamp(&mut self, ix: u32, iy: u32, k: u32, old: f64, new: f64) {
        self.stamps += 1;
        let seen = self
            .shadow
            .insert((ix, iy, k), new)
            .unwrap_or(f64::INFINITY);
        if new >= old || old != seen {
            self.increases += 1;
        }
        if self.cmap.unwrap().cell(ix as i64, iy as i64) <= 0.0 {
            self.unsafe_stamps.push((ix, iy));
        }
    }
}
