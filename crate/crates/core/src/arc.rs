//! Validated simple polygonal arcs with arc-length parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{bbox_diagonal_sq, orient, Orientation, Point2, Tolerances};

/// On-disk arc description: `{"vertices": [[x, y], ...]}` in traversal order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcFile {
    pub vertices: Vec<[f64; 2]>,
}

impl ArcFile {
    pub fn points(&self) -> Vec<Point2> {
        self.vertices.iter().copied().map(Point2::from).collect()
    }
}

impl From<&PolygonalArc> for ArcFile {
    fn from(arc: &PolygonalArc) -> Self {
        ArcFile {
            vertices: arc.vertices.iter().map(|p| [p.x, p.y]).collect(),
        }
    }
}

/// A simple polygonal arc. `params[i]` is the arc length from the first
/// vertex to vertex `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonalArc {
    vertices: Vec<Point2>,
    params: Vec<f64>,
    diagonal: f64,
    tol: Tolerances,
}

impl PolygonalArc {
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn length(&self) -> f64 {
        *self.params.last().expect("validated arcs have vertices")
    }

    /// Bounding-box diagonal; the length scale for `eps_touch`.
    pub fn diagonal(&self) -> f64 {
        self.diagonal
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Absolute distance tolerance: `eps_touch · diagonal`.
    pub fn touch_tolerance(&self) -> f64 {
        self.tol.eps_touch * self.diagonal
    }

    /// The point at arc-length parameter `s`.
    pub fn point_at(&self, s: f64) -> Result<Point2> {
        let length = self.length();
        let slack = self.tol.eps_touch * length;
        if !s.is_finite() || s < -slack || s > length + slack {
            return Err(Error::ParamOutOfRange { param: s, length });
        }
        let s = s.clamp(0.0, length);
        // index of the first vertex with param > s
        let k = self.params.partition_point(|&t| t <= s);
        if k == 0 {
            return Ok(self.vertices[0]);
        }
        if k == self.params.len() {
            return Ok(*self.vertices.last().unwrap());
        }
        let (t0, t1) = (self.params[k - 1], self.params[k]);
        let (a, b) = (self.vertices[k - 1], self.vertices[k]);
        let u = (s - t0) / (t1 - t0);
        Ok(a + (b - a) * u)
    }

    /// Similarity-scaled copy of length 1 (scaling about the origin).
    pub fn scale_to_unit(&self) -> PolygonalArc {
        let k = 1.0 / self.length();
        PolygonalArc {
            vertices: self.vertices.iter().map(|&p| p * k).collect(),
            params: self.params.iter().map(|&t| t * k).collect(),
            diagonal: self.diagonal * k,
            tol: self.tol,
        }
    }

    /// Copy rotated counterclockwise by `phi` about the origin.
    pub fn rotated(&self, phi: f64) -> Result<PolygonalArc> {
        let pts: Vec<Point2> = self.vertices.iter().map(|p| p.rotated(phi)).collect();
        build_arc(&pts, &self.tol)
    }
}

fn on_segment_bbox(a: Point2, b: Point2, p: Point2, slack: f64) -> bool {
    p.x >= a.x.min(b.x) - slack
        && p.x <= a.x.max(b.x) + slack
        && p.y >= a.y.min(b.y) - slack
        && p.y <= a.y.max(b.y) + slack
}

/// Whether closed segments `ab` and `cd` share any point (touching counts).
pub(crate) fn segments_touch(
    a: Point2,
    b: Point2,
    c: Point2,
    d: Point2,
    tol: &Tolerances,
    slack: f64,
) -> bool {
    let o1 = orient(a, b, c, tol);
    let o2 = orient(a, b, d, tol);
    let o3 = orient(c, d, a, tol);
    let o4 = orient(c, d, b, tol);
    if o1.sign() * o2.sign() < 0 && o3.sign() * o4.sign() < 0 {
        return true;
    }
    (o1 == Orientation::Collinear && on_segment_bbox(a, b, c, slack))
        || (o2 == Orientation::Collinear && on_segment_bbox(a, b, d, slack))
        || (o3 == Orientation::Collinear && on_segment_bbox(c, d, a, slack))
        || (o4 == Orientation::Collinear && on_segment_bbox(c, d, b, slack))
}

/// Adjacent segments `ab`, `bc` overlap iff the chain reverses along a line.
pub(crate) fn backtracks(a: Point2, b: Point2, c: Point2, tol: &Tolerances) -> bool {
    orient(a, b, c, tol) == Orientation::Collinear && (b - a).dot(c - b) < 0.0
}

/// Validates a vertex chain and attaches cumulative arc-length parameters.
pub fn build_arc(vertices: &[Point2], tol: &Tolerances) -> Result<PolygonalArc> {
    if let Some(index) = vertices.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFiniteCoordinate { index });
    }
    if vertices.len() < 2 {
        return Err(Error::TooFewVertices {
            count: vertices.len(),
        });
    }
    let diagonal = bbox_diagonal_sq(vertices).sqrt();
    let min_edge = tol.eps_touch * diagonal;
    for (i, w) in vertices.windows(2).enumerate() {
        if w[0].distance(w[1]) <= min_edge {
            return Err(Error::DuplicateVertex { index: i });
        }
    }

    let segments = vertices.len() - 1;
    for i in 0..segments.saturating_sub(1) {
        if backtracks(vertices[i], vertices[i + 1], vertices[i + 2], tol) {
            return Err(Error::SelfIntersecting {
                first: i,
                second: i + 1,
            });
        }
    }
    for i in 0..segments {
        for j in (i + 2)..segments {
            let (a, b) = (vertices[i], vertices[i + 1]);
            let (c, d) = (vertices[j], vertices[j + 1]);
            if segments_touch(a, b, c, d, tol, min_edge) {
                return Err(Error::SelfIntersecting {
                    first: i,
                    second: j,
                });
            }
        }
    }

    let mut params = Vec::with_capacity(vertices.len());
    let mut acc = 0.0;
    params.push(0.0);
    for w in vertices.windows(2) {
        acc += w[0].distance(w[1]);
        params.push(acc);
    }
    Ok(PolygonalArc {
        vertices: vertices.to_vec(),
        params,
        diagonal,
        tol: *tol,
    })
}
