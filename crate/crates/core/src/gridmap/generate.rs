//! Deterministic synthetic maps for benchmarking.
//!
//! Every generator shares the same canonical start/goal anchors (see
//! [`anchors`]) so scenarios can be set up without hand-picking poses.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GridMap, MapError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// One concave box, open toward the start anchor, sitting across the
    /// straight line from start to goal.
    Utrap,
    /// Randomly scattered, pairwise disjoint discs.
    Circles,
    /// Solid map with a single carved channel joining the anchors.
    Corridor,
    Empty,
}

impl FromStr for MapKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "utrap" => Ok(MapKind::Utrap),
            "circles" => Ok(MapKind::Circles),
            "corridor" => Ok(MapKind::Corridor),
            "empty" => Ok(MapKind::Empty),
            _ => Err(format!(
                "unknown map kind '{s}' (expected utrap, circles, corridor or empty)"
            )),
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Utrap => "utrap",
            MapKind::Circles => "circles",
            MapKind::Corridor => "corridor",
            MapKind::Empty => "empty",
        })
    }
}

/// Kind-specific knobs. `None` picks a size-relative default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GenParams {
    /// circles: number of discs (default 40).
    pub count: Option<usize>,
    /// circles: smallest disc radius.
    pub radius_min: Option<f64>,
    /// circles: largest disc radius.
    pub radius_max: Option<f64>,
    /// utrap: wall thickness in cells (default 4).
    pub wall: Option<f64>,
    /// corridor: channel width in cells.
    pub channel: Option<f64>,
    /// circles: free radius kept around both anchors (default 12).
    pub anchor_clearance: Option<f64>,
}

/// Axis-aligned cell rectangle, inclusive bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl Rect {
    pub fn contains(&self, x: usize, y: usize) -> bool {
        (self.x0..=self.x1).contains(&x) && (self.y0..=self.y1).contains(&y)
    }
}

/// Canonical `(start, goal)` positions for a `width x height` map: both on
/// the horizontal midline, at 30/350 and 320/350 of the width.
pub fn anchors(width: usize, height: usize) -> ((f64, f64), (f64, f64)) {
    let y = (height / 2) as f64;
    let sx = (width as f64 * 30.0 / 350.0).round();
    let gx = (width as f64 * 320.0 / 350.0).round();
    ((sx, y), (gx, y))
}

pub fn generate_map(
    kind: MapKind,
    width: usize,
    height: usize,
    seed: u64,
    params: &GenParams,
) -> Result<GridMap, MapError> {
    if width == 0 || height == 0 {
        return Err(MapError::Generation(format!(
            "dimensions must be positive, got {width}x{height}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        MapKind::Empty => GridMap::new(width, height),
        MapKind::Utrap => utrap(width, height, &mut rng, params),
        MapKind::Circles => circles(width, height, &mut rng, params),
        MapKind::Corridor => corridor(width, height, &mut rng, params),
    }
}

/// Outer bounding box of the trap produced by `generate_map(Utrap, ..)` for
/// the same arguments.
pub fn trap_rect(
    width: usize,
    height: usize,
    seed: u64,
    params: &GenParams,
) -> Result<Rect, MapError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    trap_layout(width, height, &mut rng, params).map(|(r, _)| r)
}

fn trap_layout(
    width: usize,
    height: usize,
    rng: &mut ChaCha8Rng,
    params: &GenParams,
) -> Result<(Rect, usize), MapError> {
    let wall = params.wall.unwrap_or(4.0);
    if wall.is_nan() || wall < 1.0 {
        return Err(MapError::Generation(format!("wall thickness {wall} < 1")));
    }
    let wall = wall.round() as usize;
    let jx = (width / 50) as i64;
    let jy = (height / 50) as i64;
    let dx = if jx > 0 { rng.gen_range(-jx..=jx) } else { 0 };
    let dy = if jy > 0 { rng.gen_range(-jy..=jy) } else { 0 };
    let x0 = (width as f64 * 0.34).round() as i64 + dx;
    let x1 = (width as f64 * 0.66).round() as i64 + dx;
    let y0 = (height as f64 * 0.25).round() as i64 + dy;
    let y1 = (height as f64 * 0.75).round() as i64 + dy;
    let (sx, _) = anchors(width, height).0;
    let (gx, _) = anchors(width, height).1;
    if x0 <= sx as i64 + 1
        || x1 >= gx as i64 - 1
        || y0 < 1
        || y1 >= height as i64 - 1
        || (x1 - x0) as usize <= 2 * wall
        || (y1 - y0) as usize <= 2 * wall
    {
        return Err(MapError::Generation(format!(
            "map {width}x{height} too small for a trap with wall {wall}"
        )));
    }
    Ok((
        Rect {
            x0: x0 as usize,
            y0: y0 as usize,
            x1: x1 as usize,
            y1: y1 as usize,
        },
        wall,
    ))
}

fn utrap(
    width: usize,
    height: usize,
    rng: &mut ChaCha8Rng,
    params: &GenParams,
) -> Result<GridMap, MapError> {
    let (r, wall) = trap_layout(width, height, rng, params)?;
    let mut map = GridMap::new(width, height)?;
    for y in r.y0..=r.y1 {
        for x in r.x0..=r.x1 {
            let top = y < r.y0 + wall;
            let bottom = y > r.y1 - wall;
            let back = x > r.x1 - wall;
            if top || bottom || back {
                map.set_obstacle(x, y, true);
            }
        }
    }
    Ok(map)
}

fn circles(
    width: usize,
    height: usize,
    rng: &mut ChaCha8Rng,
    params: &GenParams,
) -> Result<GridMap, MapError> {
    let short = width.min(height) as f64;
    let count = params.count.unwrap_or(40);
    let r_min = params.radius_min.unwrap_or((short / 50.0).max(2.0));
    let r_max = params.radius_max.unwrap_or((short / 20.0).max(r_min));
    let keep_free = params.anchor_clearance.unwrap_or(12.0);
    if !(r_min > 0.0 && r_max >= r_min) {
        return Err(MapError::Generation(format!(
            "invalid radius range [{r_min}, {r_max}]"
        )));
    }
    if 2.0 * r_max + 2.0 >= short {
        return Err(MapError::Generation(format!(
            "circle radius {r_max} too large for a {width}x{height} map"
        )));
    }
    let (start, goal) = anchors(width, height);
    let mut discs: Vec<(f64, f64, f64)> = Vec::with_capacity(count);
    let max_attempts = 10_000 * count.max(1);
    let mut attempts = 0;
    while discs.len() < count {
        attempts += 1;
        if attempts > max_attempts {
            return Err(MapError::Generation(format!(
                "could only place {} of {count} disjoint circles",
                discs.len()
            )));
        }
        let r = if r_max > r_min {
            rng.gen_range(r_min..=r_max)
        } else {
            r_min
        };
        // Keep one free cell between each disc and the border.
        let cx = rng.gen_range(r + 1.0..=width as f64 - r - 1.0);
        let cy = rng.gen_range(r + 1.0..=height as f64 - r - 1.0);
        let near_anchor = [start, goal]
            .iter()
            .any(|&(ax, ay)| (cx - ax).hypot(cy - ay) < r + keep_free);
        // A gap of more than two cells keeps rasterized discs 4-disconnected.
        let overlaps = discs
            .iter()
            .any(|&(ox, oy, or)| (cx - ox).hypot(cy - oy) < r + or + 3.0);
        if !near_anchor && !overlaps {
            discs.push((cx, cy, r));
        }
    }
    let mut map = GridMap::new(width, height)?;
    for &(cx, cy, r) in &discs {
        stamp_disc(&mut map, cx, cy, r, true);
    }
    Ok(map)
}

fn corridor(
    width: usize,
    height: usize,
    rng: &mut ChaCha8Rng,
    params: &GenParams,
) -> Result<GridMap, MapError> {
    let channel = params.channel.unwrap_or((height as f64 / 10.0).max(3.0));
    let half = channel / 2.0;
    let (start, goal) = anchors(width, height);
    let mid = start.1;
    let w = width as f64;
    let h = height as f64;
    if channel.is_nan() || channel < 1.0 || channel >= h / 2.0 || start.0 - half < 0.0 {
        return Err(MapError::Generation(format!(
            "channel width {channel} infeasible for a {width}x{height} map"
        )));
    }
    let xa = (w * rng.gen_range(0.3..0.4)).round();
    let xc = (w * rng.gen_range(0.6..0.7)).round();
    let max_off = (h / 2.0 - half - 1.0).max(0.0);
    let off = (rng.gen_range(-0.5..0.5) * max_off).round();
    let yb = mid + off;
    let waypoints = [
        (start.0 - half, mid),
        (xa, mid),
        (xa, yb),
        (xc, yb),
        (xc, mid),
        (goal.0 + half, mid),
    ];
    let mut map = GridMap::from_cells(width, height, vec![true; width * height])?;
    for pair in waypoints.windows(2) {
        let ((x0, y0), (x1, y1)) = (pair[0], pair[1]);
        let steps = ((x1 - x0).hypot(y1 - y0) * 2.0).ceil().max(1.0) as usize;
        for i in 0..=steps {
            let t = i as f64 / steps as f64;
            stamp_disc(
                &mut map,
                x0 + t * (x1 - x0),
                y0 + t * (y1 - y0),
                half,
                false,
            );
        }
    }
    Ok(map)
}

/// Sets every cell whose center lies within `r` of `(cx, cy)`.
fn stamp_disc(map: &mut GridMap, cx: f64, cy: f64, r: f64, obstacle: bool) {
    let x_lo = (cx - r - 1.0).floor().max(0.0) as usize;
    let y_lo = (cy - r - 1.0).floor().max(0.0) as usize;
    let x_hi = ((cx + r + 1.0).ceil() as usize).min(map.width() - 1);
    let y_hi = ((cy + r + 1.0).ceil() as usize).min(map.height() - 1);
    for y in y_lo..=y_hi {
        for x in x_lo..=x_hi {
            let (px, py) = (x as f64 + 0.5, y as f64 + 0.5);
            if (px - cx).hypot(py - cy) <= r {
                map.set_obstacle(x, y, obstacle);
            }
        }
    }
}
