//! The support-angle step function `T` of an arc.
//!
//! `T(θ)` is the pair `{min s, max s}` over the arc parameters `s` whose
//! points lie on the support line of direction `θ`. It is a step function:
//! constant on the step of each hull corner, two-valued at the direction of
//! each hull edge (a jump). The filled variant replaces every value by the
//! closed interval between its two members.
//!
//! The profile is symbolic. Nothing here samples `θ`.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::arc::PolygonalArc;
use crate::error::{Error, Result};
use crate::geometry::{ccw_gap, Angle, Interval, Point2, Tolerances};
use crate::hull::Hull;

/// The maximal angular range on which a single hull corner is touched.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Step {
    /// Canonical start angle; the step is `[start, start + width]`.
    pub start: f64,
    pub width: f64,
    /// Arc parameter of the corner.
    pub level: f64,
    pub point: Point2,
    pub vertex: usize,
}

impl Step {
    pub fn interval(&self) -> Interval {
        Interval {
            lo: self.start,
            hi: self.start + self.width,
        }
    }

    pub fn end(&self) -> f64 {
        self.start + self.width
    }
}

/// A hull edge direction, where `T` takes two values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jump {
    pub angle: Angle,
    pub span: Interval,
    pub low_param: f64,
    pub high_param: f64,
}

/// The value set of `T` at one angle: `{min, max}`, a singleton when equal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TouchSet {
    pub min: f64,
    pub max: f64,
}

impl TouchSet {
    pub fn single(s: f64) -> Self {
        TouchSet { min: s, max: s }
    }

    pub fn is_single(&self) -> bool {
        self.min == self.max
    }

    pub fn params(&self) -> Vec<f64> {
        if self.is_single() {
            vec![self.min]
        } else {
            vec![self.min, self.max]
        }
    }

    pub fn filled(&self) -> Interval {
        Interval {
            lo: self.min,
            hi: self.max,
        }
    }
}

/// Where an angle falls in the profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Step(usize),
    Jump(usize),
}

/// Step representation of `T` over one period.
///
/// `steps` run counterclockwise starting at the step of the smallest level
/// (`min_step == 0`); `jumps[k]` sits at the start of `steps[k]`, between
/// `steps[k - 1]` and `steps[k]` (cyclically).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportProfile {
    pub steps: Vec<Step>,
    pub jumps: Vec<Jump>,
    pub min_step: usize,
    pub apex_step: usize,
    pub delta_1: f64,
    pub delta_n: f64,
    #[serde(skip)]
    pub tol: Tolerances,
    #[serde(skip)]
    pub param_tol: f64,
}

/// Builds the step representation from a hull whose first corner carries
/// the smallest arc parameter.
pub fn build_profile(hull: &Hull) -> Result<SupportProfile> {
    let n = hull.corners.len();
    if n < 3 {
        return Err(Error::StraightArc);
    }
    let steps: Vec<Step> = hull
        .corners
        .iter()
        .map(|c| Step {
            start: c.step.lo,
            width: c.exterior_angle,
            level: c.param,
            point: c.point,
            vertex: c.index,
        })
        .collect();
    let min_step = (0..n)
        .min_by(|&a, &b| steps[a].level.total_cmp(&steps[b].level))
        .unwrap();
    let apex_step = (0..n)
        .max_by(|&a, &b| steps[a].level.total_cmp(&steps[b].level))
        .unwrap();
    let mut steps = steps;
    steps.rotate_left(min_step);
    let apex_step = (apex_step + n - min_step) % n;

    let jumps = (0..n)
        .map(|k| {
            let prev = steps[(k + n - 1) % n].level;
            let cur = steps[k].level;
            let span = Interval::new(prev, cur);
            Jump {
                angle: Angle::new(steps[k].start),
                span,
                low_param: span.lo,
                high_param: span.hi,
            }
        })
        .collect();

    Ok(SupportProfile {
        delta_1: steps[0].width,
        delta_n: steps[apex_step].width,
        steps,
        jumps,
        min_step: 0,
        apex_step,
        tol: hull.tol,
        param_tol: hull.param_tol,
    })
}

impl SupportProfile {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Levels read counterclockwise from the minimum step.
    pub fn levels(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.level).collect()
    }

    pub fn min_level(&self) -> f64 {
        self.steps[self.min_step].level
    }

    pub fn max_level(&self) -> f64 {
        self.steps[self.apex_step].level
    }

    pub fn width_sum(&self) -> f64 {
        self.steps.iter().map(|s| s.width).sum()
    }

    /// Rising and falling step indices, counterclockwise from the minimum
    /// step. The apex belongs to both.
    pub fn branches(&self) -> (Vec<usize>, Vec<usize>) {
        (
            (0..=self.apex_step).collect(),
            (self.apex_step..self.steps.len()).collect(),
        )
    }

    /// Whether the levels rise strictly up to the apex and then fall
    /// strictly, read counterclockwise from the minimum step.
    pub fn is_unimodal(&self) -> bool {
        let lv = self.levels();
        let (up, down) = lv.split_at(self.apex_step + 1);
        up.windows(2).all(|w| w[0] < w[1])
            && down.windows(2).all(|w| w[0] > w[1])
            && down.first().is_none_or(|&d| d < lv[self.apex_step])
    }

    /// Jump if `theta` is within `eps_angle` of one (nearest wins),
    /// otherwise the step containing it.
    pub fn locate(&self, theta: Angle) -> Location {
        let eps = self.tol.eps_angle;
        let nearest_jump = self
            .jumps
            .iter()
            .enumerate()
            .map(|(k, j)| (k, j.angle.distance(theta)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("profile has jumps");
        if nearest_jump.1 <= eps {
            return Location::Jump(nearest_jump.0);
        }
        for (k, s) in self.steps.iter().enumerate() {
            if ccw_gap(Angle::new(s.start), theta) < s.width {
                return Location::Step(k);
            }
        }
        // only reachable through rounding at a step boundary
        Location::Jump(nearest_jump.0)
    }

    /// Replaces `theta` by the jump angle when it lies within `eps_angle`.
    pub fn snap(&self, theta: Angle) -> Angle {
        match self.locate(theta) {
            Location::Jump(k) => self.jumps[k].angle,
            Location::Step(_) => theta,
        }
    }

    /// `T(θ)`.
    pub fn eval_t(&self, theta: Angle) -> TouchSet {
        match self.locate(theta) {
            Location::Step(k) => TouchSet::single(self.steps[k].level),
            Location::Jump(k) => TouchSet {
                min: self.jumps[k].low_param,
                max: self.jumps[k].high_param,
            },
        }
    }

    /// The filled value `[min T(θ), max T(θ)]`.
    pub fn eval_filled(&self, theta: Angle) -> Interval {
        self.eval_t(theta).filled()
    }

    /// Angles whose support line touches parameter `s`: the step of the
    /// corner at `s`, or `None` when `s` is not a corner parameter.
    pub fn cross_section(&self, s: f64) -> Option<Interval> {
        self.steps
            .iter()
            .find(|st| (st.level - s).abs() <= self.param_tol)
            .map(Step::interval)
    }

    /// The support line of direction `theta`, anchored at `γ(min T(θ))`.
    pub fn support_line(&self, arc: &PolygonalArc, theta: Angle) -> Result<DirectedLine> {
        let s = self.eval_t(theta).min;
        Ok(DirectedLine {
            theta,
            anchor: arc.point_at(s)?,
        })
    }
}

/// A directed line; a support line when the arc lies on its closed left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirectedLine {
    pub theta: Angle,
    pub anchor: Point2,
}

impl DirectedLine {
    pub fn direction(&self) -> Point2 {
        self.theta.direction()
    }

    /// Positive on the left, negative on the right.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.direction().cross(p - self.anchor)
    }

    pub fn passes_through(&self, p: Point2, tol: f64) -> bool {
        self.signed_distance(p).abs() <= tol
    }

    /// Whether every point is on the closed left side, up to `tol`.
    pub fn keeps_left(&self, points: &[Point2], tol: f64) -> bool {
        points.iter().all(|&p| self.signed_distance(p) >= -tol)
    }
}

fn validate_unimodal(f: &[(f64, f64)]) -> Result<usize> {
    const TOL: f64 = 1e-12;
    let bad = |m: &str| Err(Error::MalformedFunction(m.to_string()));
    if f.len() < 3 {
        return bad("need at least three breakpoints");
    }
    if f.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return bad("non-finite breakpoint");
    }
    let (x0, y0) = f[0];
    let (xn, yn) = f[f.len() - 1];
    if x0.abs() > TOL || y0.abs() > TOL || (xn - TAU).abs() > TOL || yn.abs() > TOL {
        return bad("f must run from (0, 0) to (2π, 0)");
    }
    if f.windows(2).any(|w| w[1].0 <= w[0].0) {
        return bad("breakpoint abscissae must increase strictly");
    }
    let peak = (0..f.len())
        .max_by(|&a, &b| f[a].1.total_cmp(&f[b].1))
        .unwrap();
    if peak == 0 || peak == f.len() - 1 || (f[peak].1 - 1.0).abs() > TOL {
        return bad("peak value 1 must be attained strictly inside (0, 2π)");
    }
    if f[..=peak].windows(2).any(|w| w[1].1 <= w[0].1)
        || f[peak..].windows(2).any(|w| w[1].1 >= w[0].1)
    {
        return bad("f must increase strictly to its peak and then decrease strictly");
    }
    Ok(peak)
}

/// Piecewise-linear interpolation of `f` at `x`; `x` is clamped to the domain.
pub fn eval_piecewise(f: &[(f64, f64)], x: f64) -> f64 {
    let x = x.clamp(f[0].0, f[f.len() - 1].0);
    let k = f.partition_point(|p| p.0 < x).clamp(1, f.len() - 1);
    let ((xa, ya), (xb, yb)) = (f[k - 1], f[k]);
    ya + (yb - ya) * (x - xa) / (xb - xa)
}

/// Inverse of a strictly monotone piecewise-linear run at level `y`.
fn inverse_on(run: &[(f64, f64)], y: f64) -> f64 {
    for w in run.windows(2) {
        let ((xa, ya), (xb, yb)) = (w[0], w[1]);
        if (y - ya) * (y - yb) <= 0.0 {
            if ya == yb {
                return xa;
            }
            return xa + (xb - xa) * (y - ya) / (yb - ya);
        }
    }
    // y outside the run's range; monotone runs only miss by rounding
    let first = run[0];
    let last = run[run.len() - 1];
    if (y - first.1).abs() < (y - last.1).abs() {
        first.0
    } else {
        last.0
    }
}

/// The unique `x` with `f(x) = f(x + δ)` for a strictly unimodal
/// piecewise-linear `f: [0, 2π] → [0, 1]` vanishing at both ends.
///
/// Bisects the level `y` on `D(y) = falling⁻¹(y) − rising⁻¹(y)`, which
/// decreases strictly from `2π` at `y = 0` to `0` at the peak.
pub fn unique_crossing_continuous(f: &[(f64, f64)], delta: f64) -> Result<f64> {
    let peak = validate_unimodal(f)?;
    if !(delta > 0.0 && delta < TAU) {
        return Err(Error::InvalidDelta(delta));
    }
    let rising = &f[..=peak];
    let falling = &f[peak..];
    let gap = |y: f64| inverse_on(falling, y) - inverse_on(rising, y);
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) > delta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(inverse_on(rising, 0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::build_arc;
    use crate::hull::melkman_hull;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn profile(raw: &[(f64, f64)]) -> (PolygonalArc, SupportProfile) {
        let pts: Vec<Point2> = raw.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        let arc = build_arc(&pts, &Tolerances::default()).unwrap();
        let hull = melkman_hull(&arc, arc.tolerances()).unwrap();
        let p = build_profile(&hull).unwrap();
        (arc, p)
    }

    fn e1() -> (PolygonalArc, SupportProfile) {
        profile(&[(0., 0.), (1., 0.), (1., 1.)])
    }

    fn e2() -> (PolygonalArc, SupportProfile) {
        profile(&[(0., 0.), (3., 0.), (3., 1.), (2., 1.)])
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn e1_profile() {
        let (_, p) = e1();
        assert_eq!(p.levels(), vec![0., 1., 2.]);
        let jumps: Vec<(f64, Interval)> = p
            .jumps
            .iter()
            .map(|j| (j.angle.radians(), j.span))
            .collect();
        assert!(close(jumps[0].0, 1.25 * PI) && jumps[0].1 == Interval::new(0., 2.));
        assert!(close(jumps[1].0, 0.0) && jumps[1].1 == Interval::new(0., 1.));
        assert!(close(jumps[2].0, FRAC_PI_2) && jumps[2].1 == Interval::new(1., 2.));
        assert!(close(p.delta_1, 0.75 * PI));
        assert!(close(p.delta_n, 0.75 * PI));
        assert_eq!(p.apex_step, 2);
    }

    #[test]
    fn e2_profile() {
        let (_, p) = e2();
        let half = 0.5_f64.atan();
        assert_eq!(p.levels(), vec![0., 3., 4., 5.]);
        let mut jumps: Vec<(f64, Interval)> = p
            .jumps
            .iter()
            .map(|j| (j.angle.radians(), j.span))
            .collect();
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let want = [
            (0.0, (0., 3.)),
            (FRAC_PI_2, (3., 4.)),
            (PI, (4., 5.)),
            (PI + half, (0., 5.)),
        ];
        for ((got, span), (angle, (lo, hi))) in jumps.iter().zip(want) {
            assert!(close(*got, angle), "{got} vs {angle}");
            assert_eq!(*span, Interval::new(lo, hi));
        }
        assert!((PI + half - 3.605_240_3).abs() < 1e-7);
        assert!(close(p.delta_1, PI - half));
        assert!((p.delta_1 - 2.677_945_0).abs() < 1e-7);
        assert!(close(p.delta_n, half));
        assert!((p.delta_n - 0.463_647_6).abs() < 1e-7);
    }

    #[test]
    fn eval_t_examples() {
        let (_, p) = e1();
        assert_eq!(p.eval_t(Angle::new(FRAC_PI_4)).params(), vec![1.0]);
        assert_eq!(p.eval_t(Angle::new(FRAC_PI_2)).params(), vec![1.0, 2.0]);
        assert_eq!(p.eval_t(Angle::new(1.25 * PI)).params(), vec![0.0, 2.0]);
        // jump ownership extends eps_angle around the jump
        assert_eq!(
            p.eval_t(Angle::new(FRAC_PI_2 + 5e-10)).params(),
            vec![1.0, 2.0]
        );
        assert_eq!(p.eval_t(Angle::new(FRAC_PI_2 + 5e-9)).params(), vec![2.0]);
        assert_eq!(p.eval_t(Angle::new(-1e-12)).params(), vec![0.0, 1.0]);
    }

    #[test]
    fn eval_filled_examples() {
        let (_, p) = e1();
        assert_eq!(p.eval_filled(Angle::new(FRAC_PI_4)), Interval::point(1.));
        assert_eq!(p.eval_filled(Angle::new(1.25 * PI)), Interval::new(0., 2.));
        let (_, q) = e2();
        assert_eq!(q.eval_filled(Angle::new(PI)), Interval::new(4., 5.));
    }

    #[test]
    fn cross_section_examples() {
        let (_, p) = e1();
        let c = p.cross_section(1.0).unwrap();
        assert!(close(c.lo, 0.0) && close(c.hi, FRAC_PI_2));
        let c = p.cross_section(0.0).unwrap();
        assert!(close(c.lo, 1.25 * PI) && close(c.hi, TAU));
        assert_eq!(p.cross_section(1.5), None);
    }

    #[test]
    fn support_line_examples() {
        let (a, p) = e1();
        let l = p.support_line(&a, Angle::new(0.0)).unwrap();
        assert_eq!(l.anchor, Point2::new(0., 0.));
        assert_eq!(l.theta.radians(), 0.0);
        let l = p.support_line(&a, Angle::new(1.25 * PI)).unwrap();
        assert_eq!(l.anchor, Point2::new(0., 0.));
        assert!(l.passes_through(Point2::new(1., 1.), 1e-12));
        assert!(l.keeps_left(a.vertices(), 1e-12));

        let (b, q) = e2();
        let l = q.support_line(&b, Angle::new(PI)).unwrap();
        assert_eq!(l.anchor, Point2::new(3., 1.));
        assert!(l.passes_through(Point2::new(2., 1.), 1e-12));
        assert!(l.keeps_left(b.vertices(), 1e-12));
    }

    #[test]
    fn branches_and_unimodality() {
        let (_, p) = e2();
        assert!(p.is_unimodal());
        let (up, down) = p.branches();
        assert_eq!(up, vec![0, 1, 2, 3]);
        assert_eq!(down, vec![3]);
        let mut broken = p.clone();
        broken.steps.swap(1, 2);
        assert!(!broken.is_unimodal());
    }

    fn tent(peak: f64) -> Vec<(f64, f64)> {
        vec![(0.0, 0.0), (peak, 1.0), (TAU, 0.0)]
    }

    #[test]
    fn continuous_prototype_examples() {
        let x = unique_crossing_continuous(&tent(PI), PI).unwrap();
        assert!((x - FRAC_PI_2).abs() < 1e-10);
        for delta in [0.3, 1.0, 2.5, 4.0, 6.0] {
            let x = unique_crossing_continuous(&tent(PI), delta).unwrap();
            assert!((x - (TAU - delta) / 2.0).abs() < 1e-10, "delta {delta}");
        }
        let x = unique_crossing_continuous(&tent(FRAC_PI_2), PI).unwrap();
        assert!((x - FRAC_PI_4).abs() < 1e-10);
    }

    #[test]
    fn continuous_prototype_rejects_bad_input() {
        let plateau = vec![(0.0, 0.0), (1.0, 1.0), (2.0, 1.0), (TAU, 0.0)];
        assert!(matches!(
            unique_crossing_continuous(&plateau, 1.0),
            Err(Error::MalformedFunction(_))
        ));
        let low_peak = vec![(0.0, 0.0), (1.0, 0.5), (TAU, 0.0)];
        assert!(matches!(
            unique_crossing_continuous(&low_peak, 1.0),
            Err(Error::MalformedFunction(_))
        ));
        let zigzag = vec![(0.0, 0.0), (1.0, 0.6), (2.0, 0.4), (3.0, 1.0), (TAU, 0.0)];
        assert!(matches!(
            unique_crossing_continuous(&zigzag, 1.0),
            Err(Error::MalformedFunction(_))
        ));
        assert_eq!(
            unique_crossing_continuous(&tent(PI), 0.0),
            Err(Error::InvalidDelta(0.0))
        );
        assert_eq!(
            unique_crossing_continuous(&tent(PI), TAU),
            Err(Error::InvalidDelta(TAU))
        );
    }
}
