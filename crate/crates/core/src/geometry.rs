//! Plane primitives, tolerance policy and circular angle arithmetic.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Unit vector at angle `theta`.
    pub fn unit(theta: f64) -> Point2 {
        let (s, c) = theta.sin_cos();
        Point2::new(c, s)
    }

    /// Counterclockwise rotation about the origin.
    pub fn rotated(self, phi: f64) -> Point2 {
        let (s, c) = phi.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Point2::new(x, y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Reduce `radians` into `[0, 2π)`.
///
/// `rem_euclid` can round a tiny negative input up to exactly `2π`; that
/// case folds back to zero.
fn canonical(radians: f64) -> f64 {
    let r = radians.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A direction angle, always canonical in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(into = "f64", from = "f64")]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(radians: f64) -> Self {
        Angle(canonical(radians))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn offset(self, by: f64) -> Angle {
        Angle::new(self.0 + by)
    }

    /// Unit direction vector.
    pub fn direction(self) -> Point2 {
        Point2::unit(self.0)
    }

    /// Shortest angular distance to `other`, in `[0, π]`.
    pub fn distance(self, other: Angle) -> f64 {
        let g = ccw_gap(self, other);
        g.min(TAU - g)
    }
}

impl From<f64> for Angle {
    fn from(r: f64) -> Self {
        Angle::new(r)
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Closed real interval `[lo, hi]`; `lo == hi` is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Builds `[min(a, b), max(a, b)]`.
    pub fn new(a: f64, b: f64) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64, tol: f64) -> bool {
        v >= self.lo - tol && v <= self.hi + tol
    }

    /// Strictly inside, with a margin of `tol` on both ends.
    pub fn contains_strictly(&self, v: f64, tol: f64) -> bool {
        v > self.lo + tol && v < self.hi - tol
    }

    pub fn is_degenerate(&self, tol: f64) -> bool {
        self.width() <= tol
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// The set difference `{i - j | i ∈ I, j ∈ J}`.
pub fn interval_sub(i: Interval, j: Interval) -> Interval {
    Interval {
        lo: i.lo - j.hi,
        hi: i.hi - j.lo,
    }
}

/// Counterclockwise distance from `a` to `b`, in `[0, 2π)`.
pub fn ccw_gap(a: Angle, b: Angle) -> f64 {
    canonical(b.0 - a.0)
}

/// Canonical direction of a nonzero vector.
pub fn angle_of(v: Point2) -> Result<Angle> {
    if v.x == 0.0 && v.y == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(Angle::new(v.y.atan2(v.x)))
}

/// Scale-relative tolerances.
///
/// `eps_orient` multiplies the squared bounding-box diagonal of the points
/// under test, `eps_touch` multiplies the bounding-box diagonal of the arc,
/// and `eps_angle` is absolute (radians).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eps_orient: f64,
    pub eps_angle: f64,
    pub eps_touch: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_orient: 1e-12,
            eps_angle: 1e-9,
            eps_touch: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn is_valid(&self) -> bool {
        [self.eps_orient, self.eps_angle, self.eps_touch]
            .iter()
            .all(|e| e.is_finite() && *e > 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

/// Squared bounding-box diagonal of a handful of points.
pub(crate) fn bbox_diagonal_sq(points: &[Point2]) -> f64 {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    if points.is_empty() {
        return 0.0;
    }
    (x1 - x0).powi(2) + (y1 - y0).powi(2)
}

/// Side of `r` relative to the directed line `p → q`.
///
/// The cross product is compared against `eps_orient` times the squared
/// bounding-box diagonal of the three points.
pub fn orient(p: Point2, q: Point2, r: Point2, tol: &Tolerances) -> Orientation {
    let det = (q - p).cross(r - p);
    let scale = bbox_diagonal_sq(&[p, q, r]);
    if det.abs() <= tol.eps_orient * scale {
        Orientation::Collinear
    } else if det > 0.0 {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}
