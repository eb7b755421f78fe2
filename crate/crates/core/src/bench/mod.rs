//! Experiment harness: scenarios, parameter sweeps, CSV metrics and PPM
//! renderings.
//!
//! Timing covers `plan` only. Loading the map and computing its clearance
//! map are timed separately ([`ScenarioRun::edt_ms`]).

mod render;
mod table;

pub use render::{esd_heatmap, render_overlay, write_ppm, Layer};
pub use table::{parse_csv, write_csv, CSV_HEADER};

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use crate::gridmap::{
    distance_transform, generate_map, read_map_file, ClearanceMap, GenParams, GridMap, MapError,
    MapKind,
};
use crate::primitives::Pose;
use crate::search::{plan, PlanResult, PlanStatus, PlannerConfig, DEFAULT_BUDGET};

/// Where a scenario's map comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum MapSource {
    File(PathBuf),
    Generated {
        kind: MapKind,
        width: usize,
        height: usize,
        seed: u64,
        params: GenParams,
    },
}

impl MapSource {
    pub fn load(&self) -> Result<GridMap, MapError> {
        match self {
            MapSource::File(path) => read_map_file(path),
            MapSource::Generated {
                kind,
                width,
                height,
                seed,
                params,
            } => generate_map(*kind, *width, *height, *seed, params),
        }
    }
}

/// A set of planner configurations run against one map and one query.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub map: MapSource,
    pub start: Pose,
    pub goal: Pose,
    pub configs: Vec<(String, PlannerConfig)>,
    /// Runs per config; the reported wall time is their median.
    pub repeats: usize,
    pub budget: usize,
    /// Keep each row's [`PlanResult`] (search tree included) in the run.
    pub keep_results: bool,
}

impl Scenario {
    pub fn new(map: MapSource, start: Pose, goal: Pose) -> Self {
        Self {
            map,
            start,
            goal,
            configs: Vec::new(),
            repeats: 5,
            budget: DEFAULT_BUDGET,
            keep_results: false,
        }
    }

    pub fn with_config(mut self, label: impl Into<String>, cfg: PlannerConfig) -> Self {
        self.configs.push((label.into(), cfg));
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Plan(PlanStatus),
    /// The planner refused the input; the message says why.
    Error(String),
}

impl RowStatus {
    pub fn is_found(&self) -> bool {
        *self == RowStatus::Plan(PlanStatus::Found)
    }
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowStatus::Plan(s) => f.write_str(s.as_str()),
            RowStatus::Error(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl FromStr for RowStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "found" => Ok(RowStatus::Plan(PlanStatus::Found)),
            "no_path" => Ok(RowStatus::Plan(PlanStatus::NoPath)),
            "budget_exhausted" => Ok(RowStatus::Plan(PlanStatus::BudgetExhausted)),
            _ => s
                .strip_prefix("error: ")
                .map(|m| RowStatus::Error(m.to_string()))
                .ok_or_else(|| format!("unknown status '{s}'")),
        }
    }
}

/// One line of the metrics table. Numeric fields are `None` for error rows;
/// `path_cost` is `None` unless a path was found.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub label: String,
    pub status: RowStatus,
    pub path_cost: Option<f64>,
    pub wall_time_ms: Option<f64>,
    pub nodes_stored: Option<u64>,
    pub expansions: Option<u64>,
    pub gcost_writes: Option<u64>,
}

impl MetricsRow {
    pub fn from_result(label: impl Into<String>, res: &PlanResult, wall_time_ms: f64) -> Self {
        let found = res.status == PlanStatus::Found;
        Self {
            label: label.into(),
            status: RowStatus::Plan(res.status),
            path_cost: found.then_some(res.path_cost),
            wall_time_ms: Some(wall_time_ms),
            nodes_stored: Some(res.nodes_stored as u64),
            expansions: Some(res.expansions as u64),
            gcost_writes: Some(res.gcost_writes),
        }
    }

    pub fn error(label: impl Into<String>, msg: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            status: RowStatus::Error(msg.into()),
            path_cost: None,
            wall_time_ms: None,
            nodes_stored: None,
            expansions: None,
            gcost_writes: None,
        }
    }
}

/// Rows of a scenario plus the search results behind them.
#[derive(Debug)]
pub struct ScenarioRun {
    pub rows: Vec<MetricsRow>,
    /// Result of the last repeat per row when the scenario keeps results;
    /// otherwise (and for error rows) `None`.
    pub results: Vec<Option<PlanResult>>,
    /// Wall time of the distance transform.
    pub edt_ms: f64,
    pub map: GridMap,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Plans `repeats` times (at least once) and reports the median wall time.
#[allow(clippy::too_many_arguments)]
pub fn run_config(
    map: &GridMap,
    cmap: &ClearanceMap,
    start: &Pose,
    goal: &Pose,
    label: &str,
    cfg: &PlannerConfig,
    repeats: usize,
    budget: usize,
) -> (MetricsRow, Option<PlanResult>) {
    let mut times = Vec::with_capacity(repeats.max(1));
    let mut last = None;
    for _ in 0..repeats.max(1) {
        match plan(map, cmap, start, goal, cfg, budget) {
            Ok(res) => {
                times.push(res.wall_time.as_secs_f64() * 1e3);
                last = Some(res);
            }
            Err(e) => return (MetricsRow::error(label, e.to_string()), None),
        }
    }
    let res = last.expect("at least one run");
    (
        MetricsRow::from_result(label, &res, median(times)),
        Some(res),
    )
}

/// Runs every config of `sc` in order. Planner errors land in the row's
/// status; only a map that cannot be loaded fails the whole call.
pub fn run_scenario(sc: &Scenario) -> Result<ScenarioRun, MapError> {
    let map = sc.map.load()?;
    let t = Instant::now();
    let cmap = distance_transform(&map);
    let edt_ms = t.elapsed().as_secs_f64() * 1e3;
    let mut rows = Vec::with_capacity(sc.configs.len());
    let mut results = Vec::with_capacity(sc.configs.len());
    for (label, cfg) in &sc.configs {
        let (row, res) = run_config(
            &map, &cmap, &sc.start, &sc.goal, label, cfg, sc.repeats, sc.budget,
        );
        rows.push(row);
        results.push(res.filter(|_| sc.keep_results));
    }
    Ok(ScenarioRun {
        rows,
        results,
        edt_ms,
        map,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    KappaG,
    KappaO,
    Mu,
}

impl SweepParam {
    /// Short name used in labels and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::KappaG => "kg",
            SweepParam::KappaO => "ko",
            SweepParam::Mu => "mu",
        }
    }

    pub fn apply(&self, cfg: &mut PlannerConfig, value: f64) {
        match self {
            SweepParam::KappaG => cfg.kappa_g = value,
            SweepParam::KappaO => cfg.kappa_o = value,
            SweepParam::Mu => cfg.mu = value,
        }
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kg" | "kappa_g" => Ok(SweepParam::KappaG),
            "ko" | "kappa_o" => Ok(SweepParam::KappaO),
            "mu" => Ok(SweepParam::Mu),
            _ => Err(format!(
                "unknown sweep parameter '{s}' (expected kg, ko or mu)"
            )),
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Builds a scenario with one config per value, labelled `<param>=<value>`.
pub fn sweep_scenario(
    base: &Scenario,
    cfg: &PlannerConfig,
    param: SweepParam,
    values: &[f64],
) -> Scenario {
    let mut sc = base.clone();
    sc.configs = values
        .iter()
        .map(|&v| {
            let mut c = cfg.clone();
            param.apply(&mut c, v);
            (format!("{param}={v}"), c)
        })
        .collect();
    sc
}

/// One row per value of `param`, run sequentially in input order.
pub fn sweep(
    base: &Scenario,
    cfg: &PlannerConfig,
    param: SweepParam,
    values: &[f64],
) -> Result<ScenarioRun, MapError> {
    run_scenario(&sweep_scenario(base, cfg, param, values))
}
