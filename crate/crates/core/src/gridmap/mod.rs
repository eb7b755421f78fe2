//! Occupancy grids and their clearance (Euclidean distance) fields.
//!
//! All lengths are expressed in cell units. A cell `(ix, iy)` covers the
//! square `[ix, ix + 1) x [iy, iy + 1)`; its center sits at `(ix + 0.5, iy + 0.5)`.
//! Anything outside `[0, width) x [0, height)` is treated as obstacle.

mod edt;
mod generate;
mod io;

pub use edt::{distance_transform, squared_distance_transform};
pub use generate::{anchors, generate_map, trap_rect, GenParams, MapKind, Rect};
pub use io::{parse_map, parse_pgm, read_map_file, write_map_ascii, write_map_pgm};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MapError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("map generation failed: {0}")]
    Generation(String),
    #[error("invalid map: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for MapError {
    fn from(e: std::io::Error) -> Self {
        MapError::Io(e.to_string())
    }
}

/// Binary occupancy grid, row-major (`index = iy * width + ix`).
#[derive(Debug, Clone, PartialEq)]
pub struct GridMap {
    width: usize,
    height: usize,
    /// `true` marks an obstacle cell.
    cells: Vec<bool>,
    resolution: f64,
}

impl GridMap {
    /// All-free map.
    pub fn new(width: usize, height: usize) -> Result<Self, MapError> {
        Self::from_cells(width, height, vec![false; width * height])
    }

    pub fn from_cells(width: usize, height: usize, cells: Vec<bool>) -> Result<Self, MapError> {
        if width == 0 || height == 0 {
            return Err(MapError::Invalid(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        if cells.len() != width * height {
            return Err(MapError::Invalid(format!(
                "expected {} cells, got {}",
                width * height,
                cells.len()
            )));
        }
        Ok(Self {
            width,
            height,
            cells,
            resolution: 1.0,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Meters per cell. Planning itself always works in cell units.
    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn with_resolution(mut self, meters_per_cell: f64) -> Self {
        assert!(meters_per_cell > 0.0, "resolution must be positive");
        self.resolution = meters_per_cell;
        self
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn in_bounds(&self, ix: i64, iy: i64) -> bool {
        ix >= 0 && iy >= 0 && (ix as usize) < self.width && (iy as usize) < self.height
    }

    /// Out-of-map coordinates count as obstacle.
    pub fn is_obstacle(&self, ix: i64, iy: i64) -> bool {
        if !self.in_bounds(ix, iy) {
            return true;
        }
        self.cells[iy as usize * self.width + ix as usize]
    }

    pub fn set_obstacle(&mut self, ix: usize, iy: usize, obstacle: bool) {
        assert!(ix < self.width && iy < self.height);
        self.cells[iy * self.width + ix] = obstacle;
    }

    pub fn obstacle_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Number of 4-connected obstacle components.
    pub fn obstacle_components(&self) -> usize {
        let mut seen = vec![false; self.cells.len()];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.cells.len() {
            if !self.cells[start] || seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(i) = stack.pop() {
                let (x, y) = ((i % self.width) as i64, (i / self.width) as i64);
                for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    let (nx, ny) = (x + dx, y + dy);
                    if self.in_bounds(nx, ny) {
                        let j = ny as usize * self.width + nx as usize;
                        if self.cells[j] && !seen[j] {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        count
    }
}

/// Per-cell distance (cell units) from each cell center to the nearest
/// obstacle cell center. Obstacle cells hold 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ClearanceMap {
    width: usize,
    height: usize,
    dist: Vec<f64>,
}

impl ClearanceMap {
    pub(crate) fn from_raw(width: usize, height: usize, dist: Vec<f64>) -> Self {
        debug_assert_eq!(dist.len(), width * height);
        Self {
            width,
            height,
            dist,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.dist
    }

    /// Value used on maps without any obstacle. Always `>= width + height`,
    /// so it exceeds every distance attainable inside the map.
    pub fn sentinel(&self) -> f64 {
        (self.width + self.height) as f64
    }

    /// Clearance of a cell; 0 outside the map.
    pub fn cell(&self, ix: i64, iy: i64) -> f64 {
        if ix < 0 || iy < 0 || ix as usize >= self.width || iy as usize >= self.height {
            return 0.0;
        }
        self.dist[iy as usize * self.width + ix as usize]
    }

    /// Clearance of the cell containing the continuous position `(x, y)`.
    pub fn clearance_at(&self, x: f64, y: f64) -> f64 {
        if !(x.is_finite() && y.is_finite()) {
            return 0.0;
        }
        self.cell(floor_i(x), floor_i(y))
    }

    /// Conservative lower bound on the distance from the continuous point
    /// `(x, y)` to any obstacle cell center.
    pub fn point_clearance(&self, x: f64, y: f64) -> f64 {
        let (ix, iy) = (floor_i(x), floor_i(y));
        let (fx, fy) = (ix as f64, iy as f64);
        let d = self.cell(ix, iy);
        let (dx, dy) = (x - fx - 0.5, y - fy - 0.5);
        let offset = (dx * dx + dy * dy).sqrt();
        (d - offset).max(0.0)
    }
}

/// `x.floor() as i64` without the libm call (saturating, NaN maps to 0).
#[inline]
pub(crate) fn floor_i(x: f64) -> i64 {
    let t = x as i64;
    t - ((t as f64) > x) as i64
}
