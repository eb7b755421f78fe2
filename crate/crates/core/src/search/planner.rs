use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use super::{
    effective_radius, state_index, trajectory_clear, GCostStore, Mode, PlanError, PlannerConfig,
    StateIndex,
};
use crate::gridmap::{floor_i, ClearanceMap, GridMap};
use crate::primitives::{
    apply_primitive, apply_primitive_from, base_primitive_set, scale_factor, scale_primitive,
    MotionPrimitive, Pose, ScaledPrimitive,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanStatus {
    Found,
    NoPath,
    BudgetExhausted,
}

impl PlanStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            PlanStatus::Found => "found",
            PlanStatus::NoPath => "no_path",
            PlanStatus::BudgetExhausted => "budget_exhausted",
        }
    }
}

/// One primitive of a path, applied at `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSegment {
    pub start: Pose,
    pub primitive: ScaledPrimitive,
}

impl PathSegment {
    pub fn end(&self) -> Pose {
        apply_primitive(&self.start, &self.primitive)
    }
}

/// A tree node as seen by callers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchNode {
    pub id: usize,
    pub pose: Pose,
    pub index: StateIndex,
    pub g: f64,
    pub parent: Option<usize>,
    pub via: Option<ScaledPrimitive>,
    /// Effective-zone radius (0 in baseline mode).
    pub r_e: f64,
    pub d_o: f64,
    pub d_g: f64,
}

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    pose: Pose,
    g: f64,
    r_e: f64,
    d_o: f64,
    d_g: f64,
    eta: f64,
    parent: u32,
    prim: u16,
    k: u16,
}

/// Every node the search ever admitted, in admission order (node 0 is the
/// root).
#[derive(Debug, Clone)]
pub struct SearchTree {
    nodes: Vec<Node>,
    primitives: Vec<MotionPrimitive>,
}

impl SearchTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> SearchNode {
        let n = &self.nodes[id];
        let index = StateIndex {
            ix: n.pose.x.floor() as u32,
            iy: n.pose.y.floor() as u32,
            k: n.k as u32,
        };
        SearchNode {
            id,
            pose: n.pose,
            index,
            g: n.g,
            parent: (n.parent != NO_PARENT).then_some(n.parent as usize),
            via: self.via(n),
            r_e: n.r_e,
            d_o: n.d_o,
            d_g: n.d_g,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = SearchNode> + '_ {
        (0..self.nodes.len()).map(|i| self.node(i))
    }

    fn via(&self, n: &Node) -> Option<ScaledPrimitive> {
        (n.parent != NO_PARENT).then(|| {
            let base = self.primitives[n.prim as usize];
            ScaledPrimitive {
                base,
                eta: n.eta,
                length: n.eta * base.base_length,
                radius: n.eta * base.radius,
            }
        })
    }
}

/// Root-first segments leading to `goal`.
pub fn reconstruct_path(tree: &SearchTree, goal: usize) -> Vec<PathSegment> {
    let mut segs = Vec::new();
    let mut id = goal;
    loop {
        let n = &tree.nodes[id];
        if n.parent == NO_PARENT {
            break;
        }
        let parent = &tree.nodes[n.parent as usize];
        segs.push(PathSegment {
            start: parent.pose,
            primitive: tree.via(n).expect("non-root node has a primitive"),
        });
        id = n.parent as usize;
    }
    segs.reverse();
    segs
}

#[derive(Debug, Clone)]
pub struct PlanResult {
    pub status: PlanStatus,
    pub path: Vec<PathSegment>,
    /// Sum of segment lengths; 0 unless found.
    pub path_cost: f64,
    /// Nodes ever enqueued, root included.
    pub nodes_stored: usize,
    pub expansions: usize,
    pub gcost_writes: u64,
    pub wall_time: Duration,
    /// Per-cell comparison counts, row-major `width x height`.
    pub esd: Vec<u64>,
    pub tree: SearchTree,
    pub goal_node: Option<usize>,
}

/// Hooks into a running search. All methods default to no-ops.
pub trait SearchObserver {
    /// Observers that ignore every event set this to skip building nodes.
    const ACTIVE: bool = true;

    fn on_expand(&mut self, _node: &SearchNode) {}
    /// `child` passed the admission test and has been stamped.
    fn on_admit(&mut self, _child: &SearchNode) {}
    /// A zone stamp overwrote `old` with `new` at `(ix, iy, k)`.
    fn on_stamp(&mut self, _ix: u32, _iy: u32, _k: u32, _old: f64, _new: f64) {}
}

pub struct NoopObserver;

impl SearchObserver for NoopObserver {
    const ACTIVE: bool = false;
}

#[derive(PartialEq)]
struct Entry {
    f: f64,
    seq: u64,
    id: u32,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on f, FIFO among equal f.
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn plan(
    map: &GridMap,
    cmap: &ClearanceMap,
    start: &Pose,
    goal: &Pose,
    cfg: &PlannerConfig,
    budget: usize,
) -> Result<PlanResult, PlanError> {
    plan_with_observer(map, cmap, start, goal, cfg, budget, &mut NoopObserver)
}

pub fn plan_with_observer<O: SearchObserver>(
    map: &GridMap,
    cmap: &ClearanceMap,
    start: &Pose,
    goal: &Pose,
    cfg: &PlannerConfig,
    budget: usize,
    observer: &mut O,
) -> Result<PlanResult, PlanError> {
    cfg.validate()?;
    let (w, h) = (map.width(), map.height());
    if (cmap.width(), cmap.height()) != (w, h) {
        return Err(PlanError::MapMismatch {
            got: (cmap.width(), cmap.height()),
            expected: (w, h),
        });
    }
    let clear = |p: &Pose| {
        state_index(p, w, h, 4).is_some() && cmap.clearance_at(p.x, p.y) > cfg.robot_radius
    };
    if !clear(start) {
        return Err(PlanError::StartInCollision {
            x: start.x,
            y: start.y,
        });
    }
    if !clear(goal) {
        return Err(PlanError::GoalInCollision {
            x: goal.x,
            y: goal.y,
        });
    }

    let timer = Instant::now();
    let model = &cfg.model;
    let headings = model.heading_divisions();
    let ds0 = model.straight_length();
    let sas = cfg.mode == Mode::Sas;
    let goal_k = goal.heading_bin(headings);
    let goal_tol = cfg.goal_tolerance();
    let primitives = base_primitive_set(model);

    let radius_at = |p: &Pose| -> (f64, f64, f64) {
        let d_o = cmap.point_clearance(p.x, p.y);
        let d_g = p.distance_to(goal);
        let r_e = if sas {
            effective_radius(d_o, d_g, cfg, ds0)
        } else {
            0.0
        };
        (d_o, d_g, r_e)
    };

    let mut store = GCostStore::new(w, h, headings);
    let mut tree = SearchTree {
        nodes: Vec::new(),
        primitives: primitives.clone(),
    };
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;

    let root_pose = Pose::on_lattice(
        start.x,
        start.y,
        start.heading_bin(headings) as i64,
        headings,
    );
    let (d_o, d_g, r_e) = radius_at(&root_pose);
    tree.nodes.push(Node {
        pose: root_pose,
        g: 0.0,
        r_e,
        d_o,
        d_g,
        eta: 1.0,
        parent: NO_PARENT,
        prim: 0,
        k: root_pose.heading_bin(headings) as u16,
    });
    stamp(&mut store, &tree, 0, observer);
    if O::ACTIVE {
        observer.on_admit(&tree.node(0));
    }
    heap.push(Entry {
        f: cfg.mu * d_g,
        seq,
        id: 0,
    });
    seq += 1;

    // Fixed scale for baseline; extra sets for SAS.
    let baseline_eta = cfg.baseline_length() / ds0;
    let mut scales: Vec<f64> = Vec::with_capacity(1 + cfg.extra_scales.len());
    let mut expansions = 0usize;
    let mut status = PlanStatus::NoPath;
    let mut goal_node = None;

    while let Some(Entry { id, .. }) = heap.pop() {
        let node = tree.nodes[id as usize];
        let (ix, iy) = (floor_i(node.pose.x) as u32, floor_i(node.pose.y) as u32);
        if store.get(ix, iy, node.k as u32) < node.g {
            continue;
        }
        if node.pose.distance_to(goal) <= goal_tol && node.k as u32 == goal_k {
            status = PlanStatus::Found;
            goal_node = Some(id as usize);
            break;
        }
        if expansions >= budget {
            status = PlanStatus::BudgetExhausted;
            break;
        }
        expansions += 1;
        if O::ACTIVE {
            observer.on_expand(&tree.node(id as usize));
        }

        scales.clear();
        if sas {
            scales.push(scale_factor(node.r_e, cfg.lambda, ds0));
            scales.extend(cfg.extra_scales.iter().copied());
        } else {
            scales.push(baseline_eta);
        }

        let node_sc = node.pose.theta.sin_cos();
        for &eta in &scales {
            for (pi, prim) in primitives.iter().enumerate() {
                let Some(sp) = scale_primitive(prim, eta, model) else {
                    continue;
                };
                let child_pose = apply_primitive_from(&node.pose, node_sc, &sp);
                let Some(idx) = state_index(&child_pose, w, h, headings) else {
                    continue;
                };
                let g = node.g + sp.length;
                if g >= store.probe(idx.ix, idx.iy, idx.k) {
                    continue;
                }
                if !trajectory_clear(cmap, &node.pose, &sp, cfg.sample_step, cfg.robot_radius) {
                    continue;
                }
                let (d_o, d_g, r_e) = radius_at(&child_pose);
                let child_id = tree.nodes.len();
                tree.nodes.push(Node {
                    pose: child_pose,
                    g,
                    r_e,
                    d_o,
                    d_g,
                    eta,
                    parent: id,
                    prim: pi as u16,
                    k: idx.k as u16,
                });
                stamp(&mut store, &tree, child_id, observer);
                if O::ACTIVE {
                    observer.on_admit(&tree.node(child_id));
                }
                heap.push(Entry {
                    f: g + cfg.mu * d_g,
                    seq,
                    id: child_id as u32,
                });
                seq += 1;
            }
        }
    }

    let path = goal_node
        .map(|g| reconstruct_path(&tree, g))
        .unwrap_or_default();
    let path_cost = goal_node.map(|g| tree.nodes[g].g).unwrap_or(0.0);
    let nodes_stored = tree.nodes.len();
    let gcost_writes = store.writes();
    let wall_time = timer.elapsed();
    Ok(PlanResult {
        status,
        path,
        path_cost,
        nodes_stored,
        expansions,
        gcost_writes,
        wall_time,
        esd: store.into_esd(),
        tree,
        goal_node,
    })
}

fn stamp<O: SearchObserver>(
    store: &mut GCostStore,
    tree: &SearchTree,
    id: usize,
    observer: &mut O,
) {
    let n = &tree.nodes[id];
    let k = n.k as u32;
    store.zone_update(n.pose.x, n.pose.y, k, n.r_e, n.g, |ix, iy, old, new| {
        observer.on_stamp(ix, iy, k, old, new)
    });
}
