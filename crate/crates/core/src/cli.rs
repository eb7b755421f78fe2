//! The `sas` command line: `mapgen`, `plan`, `compare` and `sweep`.
//!
//! Exit codes: 0 success, 1 when a search ends without a path, 2 for usage,
//! input or configuration errors. Standard output carries a one-line
//! summary; diagnostics go to standard error.
//!
//! `--config FILE` reads `key = value` lines (`#` starts a comment) and
//! treats each as `--key value` placed before the command-line flags, so
//! flags given on the command line win.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{
    esd_heatmap, render_overlay, run_config, run_scenario, sweep_scenario, write_csv, write_ppm,
    Layer, MapSource, MetricsRow, RowStatus, Scenario, SweepParam,
};
use crate::gridmap::{
    distance_transform, generate_map, read_map_file, write_map_ascii, write_map_pgm, ClearanceMap,
    GenParams, GridMap, MapKind,
};
use crate::primitives::{Pose, VehicleModel};
use crate::search::{ConfigError, Mode, PlanStatus, PlannerConfig, DEFAULT_BUDGET};

const SUBCOMMANDS: [&str; 4] = ["mapgen", "plan", "compare", "sweep"];

#[derive(Debug, Parser)]
#[command(name = "sas", about = "Space adaptive search path planner", version)]
#[command(args_override_self = true)]
struct Cli {
    /// File of `key = value` lines used as default flags
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic map
    Mapgen(MapgenArgs),
    /// Plan one path and render it
    Plan(PlanArgs),
    /// Weighted A* at several inflations against SAS on one query
    Compare(CompareArgs),
    /// Vary one planner parameter over a list of values
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct MapgenArgs {
    /// Map family
    #[arg(long, value_parser = parse_kind, default_value = "utrap")]
    kind: MapKind,
    #[arg(long, default_value_t = 350)]
    width: usize,
    #[arg(long, default_value_t = 200)]
    height: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; a `.pgm` extension writes binary PGM, anything else ASCII
    #[arg(long, default_value = "map.txt")]
    out: PathBuf,
    /// circles: number of discs [default: 40]
    #[arg(long)]
    count: Option<usize>,
    /// circles: smallest disc radius [default: shorter side / 50]
    #[arg(long)]
    radius_min: Option<f64>,
    /// circles: largest disc radius [default: shorter side / 20]
    #[arg(long)]
    radius_max: Option<f64>,
    /// utrap: wall thickness [default: 4]
    #[arg(long)]
    wall: Option<f64>,
    /// corridor: channel width [default: height / 10]
    #[arg(long)]
    channel: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlannerKind {
    Sas,
    Baseline,
}

/// Query and planner flags shared by `plan`, `compare` and `sweep`.
#[derive(Debug, Args)]
struct QueryArgs {
    /// Map file (ASCII or binary PGM)
    #[arg(long)]
    map: PathBuf,
    /// Start pose `x,y,theta`, theta in radians
    #[arg(long, allow_hyphen_values = true)]
    start: String,
    /// Goal pose `x,y,theta`, theta in radians
    #[arg(long, allow_hyphen_values = true)]
    goal: String,
    /// Obstacle coefficient kappa_o, in (0, 1]
    #[arg(long, default_value_t = 1.0)]
    ko: f64,
    /// Goal coefficient kappa_g, in (0, 1]
    #[arg(long, default_value_t = 0.6)]
    kg: f64,
    /// Minimum step
    #[arg(long, default_value_t = 3.0)]
    lambda: f64,
    /// Heading divisions
    #[arg(long = "K", default_value_t = 32)]
    k: u32,
    /// Steering divisions
    #[arg(long = "H", default_value_t = 64)]
    h: u32,
    /// Wheelbase
    #[arg(long = "L", default_value_t = 2.5)]
    l: f64,
    /// Steering resolution in radians
    #[arg(long, default_value_t = 0.01)]
    alpha_min: f64,
    /// Robot radius
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    /// Goal position tolerance [default: lambda]
    #[arg(long)]
    goal_tol: Option<f64>,
    /// Baseline straight-primitive length [default: 0.3 x straight primitive length]
    #[arg(long)]
    baseline_step: Option<f64>,
    /// Extra SAS scale factors, comma separated, each in (0, 1] [default: none]
    #[arg(long, value_delimiter = ',')]
    extra_scales: Vec<f64>,
    /// Collision sampling step along primitives
    #[arg(long, default_value_t = 0.5)]
    sample_step: f64,
    /// Expansion budget
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Output directory
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct PlanArgs {
    #[command(flatten)]
    query: QueryArgs,
    /// Space adaptive search, or weighted A* with fixed-size primitives
    #[arg(long, value_enum, default_value_t = PlannerKind::Sas)]
    planner: PlannerKind,
    /// Heuristic inflation [default: 0 for sas, 2 for baseline]
    #[arg(long)]
    mu: Option<f64>,
    /// Timed runs; the median is reported
    #[arg(long, default_value_t = 1)]
    repeats: usize,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    query: QueryArgs,
    /// Weighted A* inflations, comma separated
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    mus: Vec<f64>,
    /// Heuristic inflation of the SAS row
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    /// Timed runs per row; the median is reported
    #[arg(long, default_value_t = 5)]
    repeats: usize,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    query: QueryArgs,
    /// Space adaptive search, or weighted A* with fixed-size primitives
    #[arg(long, value_enum, default_value_t = PlannerKind::Sas)]
    planner: PlannerKind,
    /// Parameter to vary: kg, ko or mu
    #[arg(long, value_parser = parse_param)]
    param: SweepParam,
    /// `start:stop:step` (inclusive) or a comma separated list
    #[arg(long)]
    values: String,
    /// Heuristic inflation when not swept [default: 0 for sas, 2 for baseline]
    #[arg(long)]
    mu: Option<f64>,
    /// Timed runs per row; the median is reported
    #[arg(long, default_value_t = 5)]
    repeats: usize,
}

fn parse_kind(s: &str) -> Result<MapKind, String> {
    s.parse()
}

fn parse_param(s: &str) -> Result<SweepParam, String> {
    s.parse()
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl UsageError {
    fn flag(flag: &str, msg: impl std::fmt::Display) -> Self {
        UsageError(format!("{flag}: {msg}"))
    }
}

/// Parses `x,y,theta` and snaps theta to the nearest lattice heading.
pub fn parse_pose(s: &str, heading_divisions: u32) -> Result<Pose, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x, y, t] = parts[..] else {
        return Err(format!("expected x,y,theta, got '{s}'"));
    };
    let num = |v: &str| {
        v.parse::<f64>()
            .ok()
            .filter(|f| f.is_finite())
            .ok_or_else(|| format!("'{v}' is not a finite number"))
    };
    let (x, y, theta) = (num(x)?, num(y)?, num(t)?);
    let step = std::f64::consts::TAU / heading_divisions as f64;
    let k = (theta / step).round();
    if (theta - k * step).abs() > step / 2.0 + 1e-12 {
        return Err(format!(
            "heading {theta} is not within half a step of the lattice"
        ));
    }
    Ok(Pose::on_lattice(x, y, k as i64, heading_divisions))
}

/// `a:b:step` (inclusive of `b` up to rounding) or `v1,v2,...`.
pub fn parse_values(s: &str) -> Result<Vec<f64>, String> {
    let num = |v: &str| {
        v.trim()
            .parse::<f64>()
            .ok()
            .filter(|f| f.is_finite())
            .ok_or_else(|| format!("'{v}' is not a finite number"))
    };
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, step] = parts[..] else {
            return Err(format!("expected start:stop:step, got '{s}'"));
        };
        let (a, b, step) = (num(a)?, num(b)?, num(step)?);
        if step <= 0.0 || b < a {
            return Err(format!("range '{s}' needs start <= stop and step > 0"));
        }
        let n = ((b - a) / step + 1e-9).floor() as usize;
        // Rounding keeps labels like 0.3 instead of 0.30000000000000004.
        Ok((0..=n)
            .map(|i| ((a + i as f64 * step) * 1e9).round() / 1e9)
            .collect())
    } else {
        s.split(',').map(num).collect()
    }
}

/// Expands `--config` into flags inserted right after the subcommand name.
fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>, UsageError> {
    let mut path = None;
    let mut it = args.iter().enumerate().skip(1);
    while let Some((_, a)) = it.next() {
        let a = a.to_string_lossy();
        if a == "--config" {
            path = it.next().map(|(_, p)| PathBuf::from(p));
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| UsageError::flag("--config", format!("{}: {e}", path.display())))?;
    let mut extra = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            UsageError::flag(
                "--config",
                format!("{}:{}: expected key = value", path.display(), i + 1),
            )
        })?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        extra.push(OsString::from(format!("--{key}")));
        extra.push(OsString::from(value.trim()));
    }
    let pos = args
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .map_or(args.len(), |p| p + 1);
    let mut out = args[..pos].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[pos..]);
    Ok(out)
}

fn flag_for(err: &ConfigError) -> &'static str {
    match err {
        ConfigError::OutOfRange { name, .. } => match *name {
            "kappa_o" => "--ko",
            "kappa_g" => "--kg",
            "lambda" => "--lambda",
            "mu" => "--mu",
            "robot_radius" => "--rho",
            "goal_pos_tol" => "--goal-tol",
            "baseline_step" => "--baseline-step",
            "extra_scales" => "--extra-scales",
            "sample_step" => "--sample-step",
            _ => "--config",
        },
        ConfigError::Model(_) => "--K/--H/--L/--alpha-min",
    }
}

struct Query {
    map: GridMap,
    cmap: ClearanceMap,
    edt_ms: f64,
    start: Pose,
    goal: Pose,
    base: PlannerConfig,
}

impl QueryArgs {
    fn model(&self) -> Result<VehicleModel, UsageError> {
        VehicleModel::new(self.l, self.alpha_min, self.h, self.k)
            .map_err(|e| UsageError::flag("--K/--H/--L/--alpha-min", e))
    }

    fn config(&self, planner: PlannerKind, mu: Option<f64>) -> Result<PlannerConfig, UsageError> {
        let model = self.model()?;
        let cfg = PlannerConfig {
            kappa_o: self.ko,
            kappa_g: self.kg,
            lambda: self.lambda,
            robot_radius: self.rho,
            goal_pos_tol: self.goal_tol,
            baseline_step: self.baseline_step,
            extra_scales: self.extra_scales.clone(),
            sample_step: self.sample_step,
            ..match planner {
                PlannerKind::Sas => PlannerConfig::sas(model),
                PlannerKind::Baseline => PlannerConfig::baseline(model, 2.0),
            }
        };
        let cfg = PlannerConfig {
            mu: mu.unwrap_or(cfg.mu),
            ..cfg
        };
        cfg.validate()
            .map_err(|e| UsageError::flag(flag_for(&e), e))?;
        Ok(cfg)
    }

    fn load(&self, planner: PlannerKind, mu: Option<f64>) -> Result<Query, UsageError> {
        let base = self.config(planner, mu)?;
        let map = read_map_file(&self.map)
            .map_err(|e| UsageError::flag("--map", format!("{}: {e}", self.map.display())))?;
        let start = parse_pose(&self.start, self.k).map_err(|e| UsageError::flag("--start", e))?;
        let goal = parse_pose(&self.goal, self.k).map_err(|e| UsageError::flag("--goal", e))?;
        let t = Instant::now();
        let cmap = distance_transform(&map);
        let edt_ms = t.elapsed().as_secs_f64() * 1e3;
        for (flag, p) in [("--start", &start), ("--goal", &goal)] {
            let inside =
                p.x >= 0.0 && p.y >= 0.0 && p.x < map.width() as f64 && p.y < map.height() as f64;
            if !inside || cmap.clearance_at(p.x, p.y) <= base.robot_radius {
                return Err(UsageError::flag(
                    flag,
                    format!("({}, {}) is off the map or in collision", p.x, p.y),
                ));
            }
        }
        Ok(Query {
            map,
            cmap,
            edt_ms,
            start,
            goal,
            base,
        })
    }

    fn prepare_out_dir(&self) -> Result<(), UsageError> {
        fs::create_dir_all(&self.out_dir)
            .map_err(|e| UsageError::flag("--out-dir", format!("{}: {e}", self.out_dir.display())))
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), UsageError> {
    fs::write(path, bytes).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn run_mapgen(a: &MapgenArgs) -> Result<i32, UsageError> {
    let params = GenParams {
        count: a.count,
        radius_min: a.radius_min,
        radius_max: a.radius_max,
        wall: a.wall,
        channel: a.channel,
        anchor_clearance: None,
    };
    let map = generate_map(a.kind, a.width, a.height, a.seed, &params)
        .map_err(|e| UsageError::flag("--kind", e))?;
    let is_pgm = a
        .out
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("pgm"));
    let bytes = if is_pgm {
        write_map_pgm(&map)
    } else {
        write_map_ascii(&map).into_bytes()
    };
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| UsageError::flag("--out", e))?;
    }
    write_file(&a.out, &bytes)?;
    println!(
        "mapgen kind={} size={}x{} seed={} obstacles={} out={}",
        a.kind,
        a.width,
        a.height,
        a.seed,
        map.obstacle_count(),
        a.out.display()
    );
    Ok(0)
}

fn summary(row: &MetricsRow) -> String {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    format!(
        "{} {} cost={} time_ms={} nodes={} expansions={} writes={}",
        row.label,
        row.status,
        opt(row.path_cost.map(|c| format!("{c:.3}"))),
        opt(row.wall_time_ms.map(|t| format!("{t:.3}"))),
        opt(row.nodes_stored.map(|n| n.to_string())),
        opt(row.expansions.map(|n| n.to_string())),
        opt(row.gcost_writes.map(|n| n.to_string())),
    )
}

fn run_plan(a: &PlanArgs) -> Result<i32, UsageError> {
    let q = a.query.load(a.planner, a.mu)?;
    a.query.prepare_out_dir()?;
    let label = match q.base.mode {
        Mode::Sas => "sas",
        Mode::Baseline => "baseline",
    };
    let (row, res) = run_config(
        &q.map,
        &q.cmap,
        &q.start,
        &q.goal,
        label,
        &q.base,
        a.repeats,
        a.query.budget,
    );
    let Some(res) = res else {
        let RowStatus::Error(msg) = &row.status else {
            unreachable!("rows without results are errors")
        };
        return Err(UsageError(msg.clone()));
    };
    let dir = &a.query.out_dir;
    write_file(
        &dir.join("metrics.csv"),
        write_csv(std::slice::from_ref(&row)).as_bytes(),
    )?;
    let images = [
        (
            "path.ppm",
            render_overlay(&q.map, &[Layer::Path(&res.path)]),
        ),
        (
            "tree.ppm",
            render_overlay(&q.map, &[Layer::Tree(&res.tree)]),
        ),
        (
            "zones.ppm",
            render_overlay(&q.map, &[Layer::Zones(&res.tree)]),
        ),
        (
            "esd.ppm",
            esd_heatmap(&res.esd, q.map.width(), q.map.height()),
        ),
    ];
    for (name, img) in &images {
        write_file(&dir.join(name), &write_ppm(img))?;
    }
    println!("{} edt_ms={:.3}", summary(&row), q.edt_ms);
    Ok(if res.status == PlanStatus::Found {
        0
    } else {
        1
    })
}

fn finish_batch(sc: &Scenario, out_dir: &Path) -> Result<i32, UsageError> {
    let run = run_scenario(sc).map_err(|e| UsageError::flag("--map", e))?;
    write_file(
        &out_dir.join("metrics.csv"),
        write_csv(&run.rows).as_bytes(),
    )?;
    let found = run.rows.iter().filter(|r| r.status.is_found()).count();
    println!(
        "{} rows, {} found, edt_ms={:.3}, metrics={}",
        run.rows.len(),
        found,
        run.edt_ms,
        out_dir.join("metrics.csv").display()
    );
    Ok(if found == run.rows.len() { 0 } else { 1 })
}

fn scenario(q: &QueryArgs, query: &Query, repeats: usize) -> Scenario {
    Scenario {
        repeats,
        budget: q.budget,
        ..Scenario::new(MapSource::File(q.map.clone()), query.start, query.goal)
    }
}

fn run_compare(a: &CompareArgs) -> Result<i32, UsageError> {
    let q = a.query.load(PlannerKind::Sas, Some(a.mu))?;
    a.query.prepare_out_dir()?;
    let mut sc = scenario(&a.query, &q, a.repeats);
    for &mu in &a.mus {
        let cfg = PlannerConfig {
            mode: Mode::Baseline,
            mu,
            ..q.base.clone()
        };
        cfg.validate().map_err(|e| UsageError::flag("--mus", e))?;
        sc.configs.push((format!("wa*(mu={mu})"), cfg));
    }
    sc.configs.push(("sas".into(), q.base.clone()));
    finish_batch(&sc, &a.query.out_dir)
}

fn run_sweep(a: &SweepArgs) -> Result<i32, UsageError> {
    let values = parse_values(&a.values).map_err(|e| UsageError::flag("--values", e))?;
    let q = a.query.load(a.planner, a.mu)?;
    a.query.prepare_out_dir()?;
    let sc = sweep_scenario(
        &scenario(&a.query, &q, a.repeats),
        &q.base,
        a.param,
        &values,
    );
    finish_batch(&sc, &a.query.out_dir)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Mapgen(a) => run_mapgen(a),
        Command::Plan(a) => run_plan(a),
        Command::Compare(a) => run_compare(a),
        Command::Sweep(a) => run_sweep(a),
    };
    match outcome {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
