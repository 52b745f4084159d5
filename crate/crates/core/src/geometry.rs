//! Planar points and the power law relating coverage radius to transmit power.

use serde::{Deserialize, Serialize};

/// A position in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.x * factor, self.y * factor)
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Self::new(x, y)
    }
}

/// Squared Euclidean distance.
pub fn distance_sq(p: Point, q: Point) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    dx * dx + dy * dy
}

/// Power needed to reach squared radius `radius_sq`: `c * r^alpha`.
///
/// Evaluated as `c * radius_sq^(alpha / 2)` so no square root is taken first.
pub fn power_of(radius_sq: f64, c: f64, alpha: f64) -> f64 {
    debug_assert!(radius_sq >= 0.0);
    if radius_sq == 0.0 {
        return 0.0;
    }
    c * radius_sq.powf(alpha / 2.0)
}
