//! Bicycle-model motion primitives.
//!
//! A primitive applies a constant steering angle `h * alpha_min` until the
//! heading has turned by `h` orientation steps (capped at a half turn). The
//! straight primitive (`h = 0`) uses the zero-steer limit of the arc length,
//! `L * theta_min / alpha_min`, which also serves as the scaling reference.
//!
//! Scaling shrinks length and radius by the same factor and keeps the turn,
//! so scaled endpoints stay on the heading lattice. Scaling raises curvature,
//! and primitives that exceed the vehicle's maximum curvature are dropped.

use std::f64::consts::{PI, TAU};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PrimitiveError {
    #[error("invalid vehicle model: {0}")]
    InvalidModel(String),
    #[error("steering index {h} outside [-{max}, {max}]")]
    SteeringOutOfRange { h: i32, max: i32 },
}

/// Kinematic bicycle model plus the discretization of steering and heading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleModel {
    wheelbase: f64,
    alpha_min: f64,
    steer_divisions: u32,
    heading_divisions: u32,
    max_steer_tan: f64,
}

impl VehicleModel {
    /// `steer_divisions` (H) must be even and >= 2, `heading_divisions` (K)
    /// even and >= 4, and the largest steering angle `(H/2) * alpha_min`
    /// below a right angle.
    pub fn new(
        wheelbase: f64,
        alpha_min: f64,
        steer_divisions: u32,
        heading_divisions: u32,
    ) -> Result<Self, PrimitiveError> {
        let bad = |m: String| Err(PrimitiveError::InvalidModel(m));
        if !(wheelbase > 0.0 && wheelbase.is_finite()) {
            return bad(format!("wheelbase must be positive, got {wheelbase}"));
        }
        if !(alpha_min > 0.0 && alpha_min.is_finite()) {
            return bad(format!("alpha_min must be positive, got {alpha_min}"));
        }
        if steer_divisions < 2 || !steer_divisions.is_multiple_of(2) {
            return bad(format!(
                "steering divisions H must be even and >= 2, got {steer_divisions}"
            ));
        }
        if heading_divisions < 4 || !heading_divisions.is_multiple_of(2) {
            return bad(format!(
                "heading divisions K must be even and >= 4, got {heading_divisions}"
            ));
        }
        let alpha_max = (steer_divisions / 2) as f64 * alpha_min;
        if alpha_max >= PI / 2.0 {
            return bad(format!(
                "maximum steering angle {alpha_max} must stay below pi/2"
            ));
        }
        Ok(Self {
            wheelbase,
            alpha_min,
            steer_divisions,
            heading_divisions,
            max_steer_tan: alpha_max.tan(),
        })
    }

    pub fn wheelbase(&self) -> f64 {
        self.wheelbase
    }

    pub fn alpha_min(&self) -> f64 {
        self.alpha_min
    }

    pub fn steer_divisions(&self) -> u32 {
        self.steer_divisions
    }

    pub fn heading_divisions(&self) -> u32 {
        self.heading_divisions
    }

    pub fn max_steer_index(&self) -> i32 {
        (self.steer_divisions / 2) as i32
    }

    pub fn alpha_max(&self) -> f64 {
        self.max_steer_index() as f64 * self.alpha_min
    }

    /// Heading step `2 pi / K`.
    pub fn theta_min(&self) -> f64 {
        TAU / self.heading_divisions as f64
    }

    /// Largest admissible curvature, `tan(alpha_max) / L`.
    pub fn max_curvature(&self) -> f64 {
        self.max_steer_tan / self.wheelbase
    }

    /// Length of the straight primitive, `L * theta_min / alpha_min`.
    pub fn straight_length(&self) -> f64 {
        self.wheelbase * self.theta_min() / self.alpha_min
    }
}

/// Planar pose; `theta` lies in `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: theta.rem_euclid(TAU),
        }
    }

    /// Pose whose heading is exactly `k * 2 pi / K`.
    pub fn on_lattice(x: f64, y: f64, k: i64, heading_divisions: u32) -> Self {
        let k = k.rem_euclid(heading_divisions as i64);
        Self {
            x,
            y,
            theta: k as f64 * TAU / heading_divisions as f64,
        }
    }

    pub fn distance_to(&self, other: &Pose) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Nearest heading bin.
    pub fn heading_bin(&self, heading_divisions: u32) -> u32 {
        let k = heading_divisions as i64;
        ((self.theta / (TAU / heading_divisions as f64)).round() as i64).rem_euclid(k) as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionPrimitive {
    /// Signed steering index `h`.
    pub steer_index: i32,
    /// `h * alpha_min`.
    pub steering_angle: f64,
    /// Signed heading change in lattice steps, `sign(h) * min(|h|, K/2)`.
    pub turn_steps: i32,
    /// Signed heading change in radians.
    pub turn: f64,
    /// Turning radius, `L / tan(|alpha|)`; infinite for `h = 0`.
    pub radius: f64,
    pub base_length: f64,
    steer_tan: f64,
    heading_divisions: u32,
}

impl MotionPrimitive {
    pub fn is_straight(&self) -> bool {
        self.steer_index == 0
    }
}

/// A base primitive shrunk by `eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledPrimitive {
    pub base: MotionPrimitive,
    pub eta: f64,
    /// `eta * base_length`.
    pub length: f64,
    /// `eta * radius` (infinite when straight).
    pub radius: f64,
}

impl ScaledPrimitive {
    pub fn turn(&self) -> f64 {
        self.base.turn
    }

    pub fn curvature(&self) -> f64 {
        if self.base.is_straight() {
            0.0
        } else {
            1.0 / self.radius
        }
    }
}

/// Arc length of a constant-steering trajectory that turns by `turn`
/// radians with steering angle `alpha`: `L / tan(alpha) * turn`.
pub fn steering_arc_length(alpha: f64, turn: f64, wheelbase: f64) -> f64 {
    wheelbase / alpha.tan() * turn
}

/// Base length of the primitive with steering index `h`.
pub fn arc_length(h: i32, model: &VehicleModel) -> Result<f64, PrimitiveError> {
    let max = model.max_steer_index();
    if h.abs() > max {
        return Err(PrimitiveError::SteeringOutOfRange { h, max });
    }
    if h == 0 {
        return Ok(model.straight_length());
    }
    let steps = h.unsigned_abs().min(model.heading_divisions() / 2);
    let turn = steps as f64 * model.theta_min();
    Ok(steering_arc_length(
        h.unsigned_abs() as f64 * model.alpha_min(),
        turn,
        model.wheelbase(),
    ))
}

fn primitive(h: i32, model: &VehicleModel) -> MotionPrimitive {
    let k = model.heading_divisions();
    let steps = h.unsigned_abs().min(k / 2) as i32 * h.signum();
    let alpha = h as f64 * model.alpha_min();
    MotionPrimitive {
        steer_index: h,
        steering_angle: alpha,
        turn_steps: steps,
        turn: steps as f64 * model.theta_min(),
        radius: if h == 0 {
            f64::INFINITY
        } else {
            model.wheelbase() / alpha.abs().tan()
        },
        base_length: arc_length(h, model).expect("index within range"),
        steer_tan: alpha.abs().tan(),
        heading_divisions: k,
    }
}

/// One primitive per steering index, ordered from hardest right (`-H/2`)
/// to hardest left (`H/2`).
pub fn base_primitive_set(model: &VehicleModel) -> Vec<MotionPrimitive> {
    let max = model.max_steer_index();
    (-max..=max).map(|h| primitive(h, model)).collect()
}

/// `eta = (r_e + lambda) / delta_s0`.
///
/// Callers guarantee `0 <= r_e <= delta_s0 - lambda`, which keeps `eta` in
/// `[lambda / delta_s0, 1]`.
pub fn scale_factor(r_e: f64, lambda: f64, delta_s0: f64) -> f64 {
    debug_assert!(lambda > 0.0, "minimum step must be positive");
    debug_assert!(
        r_e >= 0.0 && r_e <= delta_s0 - lambda + 1e-9,
        "effective radius {r_e} outside [0, {}]",
        delta_s0 - lambda
    );
    (r_e + lambda) / delta_s0
}

/// Shrinks `prim` by `eta`, or returns `None` when the scaled arc is
/// tighter than the vehicle can steer: `tan(|h| alpha_min) > eta tan(alpha_max)`.
pub fn scale_primitive(
    prim: &MotionPrimitive,
    eta: f64,
    model: &VehicleModel,
) -> Option<ScaledPrimitive> {
    debug_assert!(eta > 0.0 && eta <= 1.0 + 1e-12, "scale factor {eta}");
    if !prim.is_straight() && prim.steer_tan > eta * model.max_steer_tan {
        return None;
    }
    Some(ScaledPrimitive {
        base: *prim,
        eta,
        length: eta * prim.base_length,
        radius: eta * prim.radius,
    })
}

/// Position after traveling the fraction `t` of `sp` from `start`.
pub(crate) fn point_along(start: &Pose, sp: &ScaledPrimitive, t: f64) -> (f64, f64) {
    point_along_from(start, start.theta.sin_cos(), sp, t)
}

/// [`point_along`] with the start heading's `(sin, cos)` supplied.
#[inline]
fn point_along_from(
    start: &Pose,
    (sin0, cos0): (f64, f64),
    sp: &ScaledPrimitive,
    t: f64,
) -> (f64, f64) {
    if sp.base.is_straight() {
        let s = t * sp.length;
        (start.x + s * cos0, start.y + s * sin0)
    } else {
        // Signed radius: positive turning left.
        let r = sp.length / sp.base.turn;
        let (sin1, cos1) = (start.theta + t * sp.base.turn).sin_cos();
        (start.x + r * (sin1 - sin0), start.y - r * (cos1 - cos0))
    }
}

pub fn apply_primitive(start: &Pose, sp: &ScaledPrimitive) -> Pose {
    apply_primitive_from(start, start.theta.sin_cos(), sp)
}

/// [`apply_primitive`] with the start heading's `(sin, cos)` supplied, for
/// callers applying many primitives at one pose.
#[inline]
pub(crate) fn apply_primitive_from(start: &Pose, sc: (f64, f64), sp: &ScaledPrimitive) -> Pose {
    let (x, y) = point_along_from(start, sc, sp, 1.0);
    let k = sp.base.heading_divisions;
    let bin = start.heading_bin(k) as i64 + sp.base.turn_steps as i64;
    Pose::on_lattice(x, y, bin, k)
}

/// Number of chords `sample_trajectory` splits `sp` into.
pub(crate) fn sample_count(sp: &ScaledPrimitive, step: f64) -> usize {
    assert!(step > 0.0, "sample step must be positive");
    ((sp.length / step).ceil() as usize).max(1)
}

/// Positions along `sp`, evenly spaced in arc length, at most `step` apart.
/// The first sample is `start`, the last the endpoint of [`apply_primitive`].
pub fn sample_trajectory(start: &Pose, sp: &ScaledPrimitive, step: f64) -> Vec<(f64, f64)> {
    let n = sample_count(sp, step);
    (0..=n)
        .map(|i| {
            if i == 0 {
                (start.x, start.y)
            } else {
                point_along(start, sp, i as f64 / n as f64)
            }
        })
        .collect()
}
