//! Brute-force oracles. None of these touch the hull or the profile: they
//! work from the arc vertices directly and are meant to check the symbolic
//! machinery from the outside.

use std::f64::consts::TAU;

use crate::arc::PolygonalArc;
use crate::error::{Error, Result};
use crate::geometry::{orient, Angle, Interval, Orientation, Point2, Tolerances};
use crate::profile::TouchSet;

/// `T(θ)` by projection: the vertices extreme along the outward normal
/// `θ - π/2`, within `touch` (absolute distance).
fn touch_set_within(arc: &PolygonalArc, theta: Angle, touch: f64) -> TouchSet {
    let (s, c) = theta.radians().sin_cos();
    let normal = Point2::new(s, -c);
    let proj: Vec<f64> = arc.vertices().iter().map(|p| p.dot(normal)).collect();
    let top = proj.iter().copied().fold(f64::MIN, f64::max);
    let mut hits = proj
        .iter()
        .zip(arc.params())
        .filter(|(h, _)| top - **h <= touch)
        .map(|(_, &t)| t);
    let first = hits
        .next()
        .expect("the extreme vertex itself is always a hit");
    let last = hits.next_back().unwrap_or(first);
    TouchSet {
        min: first,
        max: last,
    }
}

/// `{min s, max s}` over the vertices on the support line of direction
/// `theta`, within `eps_touch · diagonal`.
pub fn oracle_touch_set(arc: &PolygonalArc, theta: Angle, tol: &Tolerances) -> TouchSet {
    touch_set_within(arc, theta, tol.eps_touch * arc.diagonal())
}

/// Whether the two touch sets carry a strict triple: one of them spans a
/// proper interval and a member of the other lies strictly inside it.
fn strict_between(a: TouchSet, b: TouchSet, tol: f64) -> bool {
    let inside = |outer: TouchSet, inner: TouchSet| {
        let span = Interval {
            lo: outer.min,
            hi: outer.max,
        };
        inner
            .params()
            .into_iter()
            .any(|s| span.contains_strictly(s, tol))
    };
    inside(a, b) || inside(b, a)
}

/// A run of consecutive grid angles that all carry a strict triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCluster {
    /// First and last hit, unwrapped so that `last >= first` (may exceed 2π).
    pub first: f64,
    pub last: f64,
}

impl GridCluster {
    /// Whether `theta` is within `slack` of the cluster, on the circle.
    pub fn covers(&self, theta: Angle, slack: f64) -> bool {
        let from_first = (theta.radians() - self.first).rem_euclid(TAU);
        from_first <= self.last - self.first + slack || TAU - from_first <= slack
    }

    pub fn center(&self) -> Angle {
        Angle::new(0.5 * (self.first + self.last))
    }
}

/// Sweeps `θ` over `[0, 2π)` in steps of `resolution` and reports the
/// angles where the support lines at `θ` and `θ + gap` carry a strict
/// triple, clustered into consecutive runs. Each cluster stands for one
/// unordered angle pair.
///
/// The touch tolerance is `max(10 · eps_touch, resolution) · diagonal`: a
/// grid point is up to half a step away from a hull edge direction, and the
/// far end of that edge drifts off the line by up to `diagonal · resolution / 2`.
/// The oracle over-approximates on purpose.
pub fn grid_scan_pairs(arc: &PolygonalArc, gap: f64, resolution: f64) -> Vec<GridCluster> {
    assert!(resolution > 0.0, "grid resolution must be positive");
    let tol = arc.tolerances();
    let touch = (10.0 * tol.eps_touch).max(resolution) * arc.diagonal();
    let param_tol = tol.eps_touch * arc.diagonal();
    let steps = (TAU / resolution).ceil() as usize;

    let hits: Vec<bool> = (0..steps)
        .map(|k| {
            let theta = k as f64 * resolution;
            let a = touch_set_within(arc, Angle::new(theta), touch);
            let b = touch_set_within(arc, Angle::new(theta + gap), touch);
            strict_between(a, b, param_tol)
        })
        .collect();

    let mut clusters: Vec<(usize, usize)> = Vec::new();
    for (k, &hit) in hits.iter().enumerate() {
        if !hit {
            continue;
        }
        match clusters.last_mut() {
            Some((_, last)) if *last + 1 == k => *last = k,
            _ => clusters.push((k, k)),
        }
    }
    // a run through θ = 0 shows up at both ends
    if clusters.len() > 1 && clusters[0].0 == 0 && clusters.last().unwrap().1 == steps - 1 {
        let (tail_first, _) = clusters.pop().unwrap();
        clusters[0].0 = tail_first;
        clusters[0].1 += steps;
    }
    let clusters: Vec<GridCluster> = clusters
        .into_iter()
        .map(|(a, b)| GridCluster {
            first: a as f64 * resolution,
            last: b as f64 * resolution,
        })
        .collect();

    // At gap π the sweep meets each unordered pair twice, once from each line.
    let slack = 2.0 * resolution;
    let mut kept: Vec<GridCluster> = Vec::new();
    for c in clusters {
        let mirrored = kept.iter().any(|k| {
            k.covers(c.center().offset(gap), slack) && c.covers(k.center().offset(gap), slack)
        });
        if !mirrored {
            kept.push(c);
        }
    }
    kept
}

/// Andrew's monotone chain, counterclockwise, collinear points dropped.
pub fn monotone_chain_hull(points: &[Point2], tol: &Tolerances) -> Result<Vec<Point2>> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::StraightArc);
    }
    let turn = |h: &[Point2], p: Point2| {
        orient(h[h.len() - 2], h[h.len() - 1], p, tol) == Orientation::CounterClockwise
    };

    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && !turn(&lower, p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper, p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::StraightArc);
    }
    Ok(lower)
}

/// Whether two polygons list the same cycle up to rotation.
pub fn same_cycle(a: &[Point2], b: &[Point2]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|shift| {
        a.iter()
            .enumerate()
            .all(|(i, p)| *p == b[(i + shift) % b.len()])
    })
}
