//! Convex hull of an arc, with the arc parameter and support-angle step of
//! every hull corner.
//!
//! Orientation convention: the support line of direction `θ` keeps the arc
//! on its left, so its outward normal points at `θ - π/2`. Walking the hull
//! counterclockwise, the edge `A → B` has direction `angle_of(B - A)` and is
//! exactly the support line at that angle. Corner `B` is therefore touched
//! alone for every `θ` strictly between the directions of its incoming and
//! outgoing edges.

use std::collections::VecDeque;

use crate::arc::PolygonalArc;
use crate::error::{Error, Result};
use crate::geometry::{
    angle_of, ccw_gap, orient, Angle, Interval, Orientation, Point2, Tolerances,
};

#[derive(Debug, Clone, PartialEq)]
pub struct HullCorner {
    /// Index of the arc vertex at this corner.
    pub index: usize,
    pub point: Point2,
    /// Arc-length parameter of the corner.
    pub param: f64,
    /// Support angles touching only this corner: `[start, start + width]`,
    /// with `start` canonical and the upper end possibly past `2π`.
    pub step: Interval,
    /// `π` minus the interior angle; equals the step width.
    pub exterior_angle: f64,
}

impl HullCorner {
    pub fn step_start(&self) -> Angle {
        Angle::new(self.step.lo)
    }

    pub fn step_end(&self) -> Angle {
        Angle::new(self.step.hi)
    }
}

/// Strictly convex hull corners in counterclockwise order, starting at the
/// corner with the smallest arc parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Hull {
    pub corners: Vec<HullCorner>,
    pub tol: Tolerances,
    /// Absolute parameter resolution inherited from the arc.
    pub param_tol: f64,
}

impl Hull {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    pub fn points(&self) -> Vec<Point2> {
        self.corners.iter().map(|c| c.point).collect()
    }

    /// Arc parameters of the corners, in hull order.
    pub fn levels(&self) -> Vec<f64> {
        self.corners.iter().map(|c| c.param).collect()
    }

    pub fn exterior_angle_sum(&self) -> f64 {
        self.corners.iter().map(|c| c.exterior_angle).sum()
    }
}

/// Fills the step interval of every corner of a counterclockwise cycle of
/// `(vertex index, point, param)`.
pub fn corner_steps(cycle: &[(usize, Point2, f64)]) -> Result<Vec<HullCorner>> {
    let n = cycle.len();
    if n < 3 {
        return Err(Error::StraightArc);
    }
    (0..n)
        .map(|i| {
            let (_, a, _) = cycle[(i + n - 1) % n];
            let (index, b, param) = cycle[i];
            let (_, c, _) = cycle[(i + 1) % n];
            let start = angle_of(b - a)?;
            let end = angle_of(c - b)?;
            let width = ccw_gap(start, end);
            Ok(HullCorner {
                index,
                point: b,
                param,
                step: Interval {
                    lo: start.radians(),
                    hi: start.radians() + width,
                },
                exterior_angle: width,
            })
        })
        .collect()
}

fn exterior_angle(a: Point2, b: Point2, c: Point2) -> f64 {
    match (angle_of(b - a), angle_of(c - b)) {
        (Ok(u), Ok(v)) => ccw_gap(u, v),
        _ => 0.0,
    }
}

/// Drops corners that are not strict left turns, or whose exterior angle is
/// at most `eps_angle`, until the cycle is stable.
pub(crate) fn strict_corners(
    points: &[Point2],
    mut cycle: Vec<usize>,
    tol: &Tolerances,
) -> Vec<usize> {
    loop {
        let n = cycle.len();
        if n < 3 {
            return cycle;
        }
        let flat = (0..n).find(|&i| {
            let a = points[cycle[(i + n - 1) % n]];
            let b = points[cycle[i]];
            let c = points[cycle[(i + 1) % n]];
            orient(a, b, c, tol) != Orientation::CounterClockwise
                || exterior_angle(a, b, c) <= tol.eps_angle
        });
        match flat {
            Some(i) => {
                cycle.remove(i);
            }
            None => return cycle,
        }
    }
}

/// Rotates a cycle of vertex indices to start at the smallest one, which is
/// also the corner with the smallest arc parameter.
pub(crate) fn rotate_to_min(cycle: &mut [usize]) {
    if let Some(k) = (0..cycle.len()).min_by_key(|&i| cycle[i]) {
        cycle.rotate_left(k);
    }
}

fn assemble(arc: &PolygonalArc, cycle: &[usize], tol: &Tolerances) -> Result<Hull> {
    let triples: Vec<_> = cycle
        .iter()
        .map(|&i| (i, arc.vertices()[i], arc.params()[i]))
        .collect();
    Ok(Hull {
        corners: corner_steps(&triples)?,
        tol: *tol,
        param_tol: tol.eps_touch * arc.diagonal(),
    })
}

/// Melkman's online hull of a simple polyline, in linear time.
///
/// The deque holds vertex indices with the most recent hull vertex at both
/// ends; bottom to top is counterclockwise.
pub fn melkman_hull(arc: &PolygonalArc, tol: &Tolerances) -> Result<Hull> {
    let v = arc.vertices();
    let n = v.len();
    if n < 3 {
        return Err(Error::StraightArc);
    }
    // A leading collinear run of a simple chain is monotone along its line,
    // so only its last vertex can be a hull corner besides the first.
    let first_turn = (2..n)
        .find(|&k| orient(v[0], v[k - 1], v[k], tol) != Orientation::Collinear)
        .ok_or(Error::StraightArc)?;
    let (i0, i1, i2) = (0, first_turn - 1, first_turn);

    let mut d: VecDeque<usize> = match orient(v[i0], v[i1], v[i2], tol) {
        Orientation::CounterClockwise => VecDeque::from([i2, i0, i1, i2]),
        _ => VecDeque::from([i2, i1, i0, i2]),
    };

    let left = |a: usize, b: usize, c: usize| {
        orient(v[a], v[b], v[c], tol) == Orientation::CounterClockwise
    };

    for i in (i2 + 1)..n {
        let len = d.len();
        let inside_bottom = left(d[0], d[1], i);
        let inside_top = left(d[len - 2], d[len - 1], i);
        if inside_bottom && inside_top {
            continue;
        }
        while d.len() > 2 && !left(d[d.len() - 2], d[d.len() - 1], i) {
            d.pop_back();
        }
        d.push_back(i);
        while d.len() > 2 && !left(i, d[0], d[1]) {
            d.pop_front();
        }
        d.push_front(i);
    }

    d.pop_back();
    let mut cycle = strict_corners(v, d.into_iter().collect(), tol);
    if cycle.len() < 3 {
        return Err(Error::StraightArc);
    }
    rotate_to_min(&mut cycle);
    assemble(arc, &cycle, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::build_arc;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn arc(raw: &[(f64, f64)]) -> PolygonalArc {
        let pts: Vec<Point2> = raw.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        build_arc(&pts, &Tolerances::default()).unwrap()
    }

    fn hull_of(raw: &[(f64, f64)]) -> Hull {
        let a = arc(raw);
        melkman_hull(&a, a.tolerances()).unwrap()
    }

    #[test]
    fn e1_corners_and_steps() {
        let h = hull_of(&[(0., 0.), (1., 0.), (1., 1.)]);
        assert_eq!(
            h.points(),
            vec![
                Point2::new(0., 0.),
                Point2::new(1., 0.),
                Point2::new(1., 1.)
            ]
        );
        assert_eq!(h.levels(), vec![0., 1., 2.]);
        let c = &h.corners;
        // corner (1,0): [0, π/2]
        assert!((c[1].step.lo - 0.0).abs() < 1e-15 && (c[1].step.hi - FRAC_PI_2).abs() < 1e-15);
        // corner (1,1): [π/2, 5π/4]
        assert!(
            (c[2].step.lo - FRAC_PI_2).abs() < 1e-15 && (c[2].step.hi - 1.25 * PI).abs() < 1e-15
        );
        assert!((c[2].exterior_angle - 0.75 * PI).abs() < 1e-15);
        // corner (0,0): [5π/4, 2π]
        assert!((c[0].step.lo - 1.25 * PI).abs() < 1e-15 && (c[0].step.hi - TAU).abs() < 1e-15);
        assert!((h.exterior_angle_sum() - TAU).abs() < 3e-9);
    }

    #[test]
    fn interior_vertex_is_excluded() {
        let h = hull_of(&[(0., 0.), (1., 0.4), (2., 0.), (2., 2.)]);
        assert_eq!(h.len(), 3);
        let want = [0.0, 2.154_065_922_853_802, 4.154_065_922_853_802];
        for (c, w) in h.corners.iter().zip(want) {
            assert!((c.param - w).abs() < 1e-12, "{} vs {}", c.param, w);
        }
    }

    #[test]
    fn collinear_arc_is_straight() {
        let a = arc(&[(0., 0.), (1., 0.), (2., 0.)]);
        assert_eq!(melkman_hull(&a, a.tolerances()), Err(Error::StraightArc));
        let two = arc(&[(0., 0.), (1., 0.)]);
        assert_eq!(
            melkman_hull(&two, two.tolerances()),
            Err(Error::StraightArc)
        );
    }

    #[test]
    fn collinear_vertices_on_hull_edges_are_merged() {
        let h = hull_of(&[(0., 0.), (1., 0.), (2., 0.), (2., 1.), (1., 1.)]);
        assert_eq!(
            h.points(),
            vec![
                Point2::new(0., 0.),
                Point2::new(2., 0.),
                Point2::new(2., 1.),
                Point2::new(1., 1.)
            ]
        );
    }

    #[test]
    fn next_vertex_on_current_hull_edge() {
        // (1,0) lands on the hull edge (0,0)-(2,0) right after (2,0) was added
        let h = hull_of(&[(0., 0.), (1., 1.), (2., 0.), (1., 0.)]);
        assert_eq!(
            h.points(),
            vec![
                Point2::new(0., 0.),
                Point2::new(2., 0.),
                Point2::new(1., 1.)
            ]
        );
    }

    #[test]
    fn clockwise_start_and_pocket() {
        // spiral entering its own pocket: later vertices hide inside the hull
        let h = hull_of(&[
            (0., 0.),
            (0., 4.),
            (4., 4.),
            (4., 0.),
            (1., 0.5),
            (1., 3.),
            (3., 3.),
            (3., 1.5),
        ]);
        assert_eq!(h.len(), 4);
        assert_eq!(
            h.corners.iter().map(|c| c.index).collect::<Vec<_>>(),
            vec![0, 3, 2, 1]
        );
    }
}
