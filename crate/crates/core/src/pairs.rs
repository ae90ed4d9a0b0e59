//! Pairs of support lines with a prescribed angle difference that touch
//! the arc at three parameters `s1 < s2 < s3`: `γ(s1)` and `γ(s3)` on one
//! line (the double line), `γ(s2)` on the other (the single line).
//!
//! Both scans unroll the circle into a window of length `2π` and read the
//! filled graph of `T` as two monotone branches sharing an extreme step.
//!
//! * Mountain: window anchored at the start of the minimum step. The graph
//!   rises to the apex and falls back. For a level `s`, the difference
//!   between the falling and rising branch inverses is an interval `D(s)`
//!   that grows as `s` goes down, from `[-δ_n, δ_n]` at the apex to
//!   `[2π - δ_1, 2π]` at the bottom. Scanning down finds the first level with
//!   `δ ∈ D(s)`.
//! * Valley: window anchored at the start of the apex step. The graph falls
//!   to the minimum and rises back; scanning up from the bottom finds the
//!   level where the valley is `δ` wide. The pair found this way has
//!   difference `2π - δ` when measured over the apex.
//!
//! The jump at the anchor belongs to the right end of the window only.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::arc::PolygonalArc;
use crate::error::{Error, Result};
use crate::geometry::{ccw_gap, interval_sub, Angle, Interval, Tolerances};
use crate::profile::{DirectedLine, Location, SupportProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Mountain,
    Valley,
}

impl ScanMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanMode::Mountain => "mountain",
            ScanMode::Valley => "valley",
        }
    }
}

impl std::fmt::Display for ScanMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One entry of the level scan: a single level, or the open range between
/// two consecutive levels, with the interval of angular widths there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanStep {
    pub level_interval: Interval,
    /// `true` for the open range strictly between two levels.
    pub open: bool,
    pub gap_interval: Interval,
    /// Branch inverses in window coordinates.
    pub left: Interval,
    pub right: Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriplePair {
    pub mode: ScanMode,
    /// Line through `γ(s1)` and `γ(s3)`.
    pub theta_double: Angle,
    /// Line through `γ(s2)`.
    pub theta_single: Angle,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub strict: bool,
    pub requested_delta: f64,
    /// Mountain: counterclockwise gap over the apex (equals the request).
    /// Valley: counterclockwise gap over the apex, `2π - δ`.
    pub realized_gap: f64,
    /// The request sat within `eps_angle` of a boundary of the scan entry,
    /// where several angle pairs may qualify at once.
    pub near_tie: bool,
    /// `δ` meets the existence threshold for this mode.
    pub guaranteed: bool,
    pub line_double: DirectedLine,
    pub line_single: DirectedLine,
}

impl TriplePair {
    pub fn triple(&self) -> [f64; 3] {
        [self.s1, self.s2, self.s3]
    }

    /// Whether two results name the same unordered angle pair and triple.
    pub fn same_configuration(&self, other: &TriplePair, eps_angle: f64, param_tol: f64) -> bool {
        let (a1, a2) = (self.theta_double, self.theta_single);
        let (b1, b2) = (other.theta_double, other.theta_single);
        let angles = (a1.distance(b1) <= eps_angle && a2.distance(b2) <= eps_angle)
            || (a1.distance(b2) <= eps_angle && a2.distance(b1) <= eps_angle);
        let params = self
            .triple()
            .iter()
            .zip(other.triple())
            .all(|(x, y)| (x - y).abs() <= param_tol);
        angles && params
    }
}

struct WindowStep {
    start: f64,
    end: f64,
    level: f64,
}

/// The graph of `T^|` unrolled over `[anchor, anchor + 2π]`.
struct Window {
    steps: Vec<WindowStep>,
    /// Index of the extreme step shared by both branches.
    pivot: usize,
}

enum Element {
    Step { lo: f64, hi: f64, level: f64 },
    Jump { at: f64, span: Interval },
}

impl Window {
    fn new(profile: &SupportProfile, mode: ScanMode) -> Window {
        let n = profile.len();
        let (first, extreme) = match mode {
            ScanMode::Mountain => (profile.min_step, profile.apex_step),
            ScanMode::Valley => (profile.apex_step, profile.min_step),
        };
        let mut at = profile.steps[first].start;
        let steps = (0..n)
            .map(|k| {
                let s = &profile.steps[(first + k) % n];
                let w = WindowStep {
                    start: at,
                    end: at + s.width,
                    level: s.level,
                };
                at += s.width;
                w
            })
            .collect();
        Window {
            steps,
            pivot: (extreme + n - first) % n,
        }
    }

    fn left(&self) -> Vec<Element> {
        self.elements(0, self.pivot, false)
    }

    fn right(&self) -> Vec<Element> {
        self.elements(self.pivot, self.steps.len() - 1, true)
    }

    fn elements(&self, from: usize, to: usize, wrap: bool) -> Vec<Element> {
        let mut out = Vec::new();
        for k in from..=to {
            let s = &self.steps[k];
            out.push(Element::Step {
                lo: s.start,
                hi: s.end,
                level: s.level,
            });
            if k < to {
                out.push(Element::Jump {
                    at: s.end,
                    span: Interval::new(s.level, self.steps[k + 1].level),
                });
            }
        }
        if wrap {
            let last = self.steps.last().unwrap();
            out.push(Element::Jump {
                at: last.end,
                span: Interval::new(last.level, self.steps[0].level),
            });
        }
        out
    }
}

/// Angles (window coordinates) on a branch whose filled value contains `s`.
fn branch_inverse(elements: &[Element], s: f64) -> Option<Interval> {
    let mut acc: Option<Interval> = None;
    for e in elements {
        let hit = match *e {
            Element::Step { lo, hi, level } if level == s => Some(Interval { lo, hi }),
            Element::Jump { at, span } if span.lo <= s && s <= span.hi => Some(Interval::point(at)),
            _ => None,
        };
        if let Some(h) = hit {
            acc = Some(acc.map_or(h, |a| a.hull(&h)));
        }
    }
    acc
}

/// The interval-valued width function `D`, entry by entry in scan order:
/// downward from the apex for the mountain, upward from the minimum for the
/// valley.
pub fn scan_ledger(profile: &SupportProfile, mode: ScanMode) -> Vec<ScanStep> {
    let window = Window::new(profile, mode);
    let (left, right) = (window.left(), window.right());
    let mut levels = profile.levels();
    levels.sort_by(f64::total_cmp);
    if mode == ScanMode::Mountain {
        levels.reverse();
    }

    let entry = |level_interval: Interval, open: bool| {
        let s = if open {
            0.5 * (level_interval.lo + level_interval.hi)
        } else {
            level_interval.lo
        };
        let l = branch_inverse(&left, s).expect("rising and falling branches are onto");
        let r = branch_inverse(&right, s).expect("rising and falling branches are onto");
        ScanStep {
            level_interval,
            open,
            gap_interval: interval_sub(r, l),
            left: l,
            right: r,
        }
    };

    let mut ledger = Vec::with_capacity(2 * levels.len());
    for (i, &lv) in levels.iter().enumerate() {
        ledger.push(entry(Interval::point(lv), false));
        if let Some(&next) = levels.get(i + 1) {
            ledger.push(entry(Interval::new(lv, next), true));
        }
    }
    ledger
}

/// Picks the double line and the middle parameter from the filled values at
/// the two angles. Candidates in order: the right interval holds the low or
/// high end of the left one, then the reverse. The first strict candidate
/// wins, else the first valid one, preferring a double line that touches
/// two distinct parameters.
fn assign_roles(left: Interval, right: Interval, tol: f64) -> Option<(bool, [f64; 3], bool)> {
    let candidates = [
        (true, left.lo, right),
        (true, left.hi, right),
        (false, right.lo, left),
        (false, right.hi, left),
    ];
    let mut fallback: Option<(bool, [f64; 3], bool)> = None;
    for (double_is_right, s2, d) in candidates {
        if !d.contains(s2, tol) {
            continue;
        }
        let triple = [d.lo, s2.clamp(d.lo, d.hi), d.hi];
        if d.contains_strictly(s2, tol) {
            return Some((double_is_right, triple, true));
        }
        let better = match fallback {
            None => true,
            Some((_, t, _)) => t[2] - t[0] <= tol && d.hi - d.lo > tol,
        };
        if better {
            fallback = Some((double_is_right, triple, false));
        }
    }
    fallback
}

fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && delta > 0.0 && delta < TAU {
        Ok(())
    } else {
        Err(Error::InvalidDelta(delta))
    }
}

fn threshold(profile: &SupportProfile, mode: ScanMode) -> f64 {
    match mode {
        ScanMode::Mountain => profile.delta_n,
        ScanMode::Valley => profile.delta_1,
    }
}

#[allow(clippy::too_many_arguments)]
fn make_pair(
    profile: &SupportProfile,
    arc: &PolygonalArc,
    mode: ScanMode,
    theta_double: Angle,
    theta_single: Angle,
    triple: [f64; 3],
    strict: bool,
    delta: f64,
    realized_gap: f64,
    near_tie: bool,
) -> Result<TriplePair> {
    Ok(TriplePair {
        mode,
        theta_double,
        theta_single,
        s1: triple[0],
        s2: triple[1],
        s3: triple[2],
        strict,
        requested_delta: delta,
        realized_gap,
        near_tie,
        guaranteed: delta >= threshold(profile, mode) - profile.tol.eps_angle,
        line_double: profile.support_line(arc, theta_double)?,
        line_single: profile.support_line(arc, theta_single)?,
    })
}

/// Runs the level scan for `mode` at angle difference `delta`.
///
/// Below the existence threshold (`δ_n` for the mountain, `δ_1` for the
/// valley) the result is flagged `guaranteed = false`; if the scan lands on
/// a degenerate triple there, the exhaustive enumerator is consulted and its
/// strict configuration of the same kind is returned instead when one
/// exists.
pub fn find_pair(
    profile: &SupportProfile,
    arc: &PolygonalArc,
    delta: f64,
    mode: ScanMode,
) -> Result<TriplePair> {
    check_delta(delta)?;
    let eps = profile.tol.eps_angle;
    let ledger = scan_ledger(profile, mode);
    let step = ledger
        .iter()
        .find(|st| st.gap_interval.contains(delta, eps))
        .ok_or(Error::NotFound(delta))?;

    let (l, r) = (step.left, step.right);
    let (theta_l, theta_r) = if r.lo - delta >= l.lo {
        (r.lo - delta, r.lo)
    } else {
        (l.lo, l.lo + delta)
    };
    let near_tie = step.open
        || (delta - step.gap_interval.lo).abs() <= eps
        || (delta - step.gap_interval.hi).abs() <= eps;

    let theta_l = profile.snap(Angle::new(theta_l));
    let theta_r = profile.snap(Angle::new(theta_r));
    let (fill_l, fill_r) = (profile.eval_filled(theta_l), profile.eval_filled(theta_r));
    let (double_is_right, triple, strict) =
        assign_roles(fill_l, fill_r, profile.param_tol).ok_or(Error::NotFound(delta))?;
    let (theta_double, theta_single) = if double_is_right {
        (theta_r, theta_l)
    } else {
        (theta_l, theta_r)
    };
    let realized_gap = match mode {
        ScanMode::Mountain => ccw_gap(theta_l, theta_r),
        ScanMode::Valley => ccw_gap(theta_r, theta_l),
    };
    let pair = make_pair(
        profile,
        arc,
        mode,
        theta_double,
        theta_single,
        triple,
        strict,
        delta,
        realized_gap,
        near_tie,
    )?;

    if !pair.strict && !pair.guaranteed {
        let alternative = enumerate_triples(profile, arc, delta)?
            .into_iter()
            .find(|c| fits_mode(profile, c, mode));
        if let Some(mut alt) = alternative {
            alt.mode = mode;
            alt.guaranteed = false;
            alt.realized_gap = realized_for(mode, delta);
            return Ok(alt);
        }
    }
    Ok(pair)
}

/// Mountain scan: the pair whose counterclockwise difference over the apex
/// is `delta`; existence and uniqueness are guaranteed for `δ ≥ δ_n`.
pub fn find_pair_mountain(
    profile: &SupportProfile,
    arc: &PolygonalArc,
    delta: f64,
) -> Result<TriplePair> {
    find_pair(profile, arc, delta, ScanMode::Mountain)
}

/// Valley scan: the pair whose counterclockwise difference through the
/// minimum step is `delta` (so `2π - δ` over the apex); guaranteed for
/// `δ ≥ δ_1`.
pub fn find_pair_valley(
    profile: &SupportProfile,
    arc: &PolygonalArc,
    delta: f64,
) -> Result<TriplePair> {
    find_pair(profile, arc, delta, ScanMode::Valley)
}

fn anchor(profile: &SupportProfile, mode: ScanMode) -> Angle {
    match mode {
        ScanMode::Mountain => Angle::new(profile.steps[profile.min_step].start),
        ScanMode::Valley => Angle::new(profile.steps[profile.apex_step].start),
    }
}

/// Whether the counterclockwise sweep from `from` by `gap` stays inside the
/// window of `mode`.
fn sweep_fits(profile: &SupportProfile, mode: ScanMode, from: Angle, gap: f64) -> bool {
    let eps = profile.tol.eps_angle;
    let mut pos = ccw_gap(anchor(profile, mode), from);
    if pos <= eps || pos >= TAU - eps {
        pos = TAU;
    }
    pos + gap <= TAU + eps
}

/// Whether a configuration is of the kind `mode` finds: read in one of its
/// two orientations with counterclockwise gap `requested_delta`, both
/// angles sit in the window of `mode` without wrapping.
pub fn fits_mode(profile: &SupportProfile, pair: &TriplePair, mode: ScanMode) -> bool {
    let eps = profile.tol.eps_angle;
    let gap = pair.requested_delta;
    [
        (pair.theta_double, pair.theta_single),
        (pair.theta_single, pair.theta_double),
    ]
    .into_iter()
    .filter(|&(lo, hi)| {
        (ccw_gap(lo, hi) - gap).abs() <= eps || (ccw_gap(lo, hi) - gap).abs() >= TAU - eps
    })
    .any(|(lo, _)| sweep_fits(profile, mode, lo, gap))
}

fn realized_for(mode: ScanMode, gap: f64) -> f64 {
    match mode {
        ScanMode::Mountain => gap,
        ScanMode::Valley => TAU - gap,
    }
}

/// Every strict configuration whose two support angles differ by `gap`
/// counterclockwise, in either role order.
///
/// The double line touches two parameters, so it sits on a jump `φ`; the
/// single line is at `φ + gap` or `φ - gap`. Each candidate is checked
/// against `T` directly. Duplicates (the same unordered angle pair and
/// triple) are merged.
pub fn enumerate_triples(
    profile: &SupportProfile,
    arc: &PolygonalArc,
    gap: f64,
) -> Result<Vec<TriplePair>> {
    check_delta(gap)?;
    let eps = profile.tol.eps_angle;
    let mut found: Vec<TriplePair> = Vec::new();
    for jump in &profile.jumps {
        let phi = jump.angle;
        for forward in [true, false] {
            let other = profile.snap(if forward {
                phi.offset(gap)
            } else {
                phi.offset(-gap)
            });
            let touch = profile.eval_t(other);
            let Some(s2) = touch
                .params()
                .into_iter()
                .find(|&s| jump.span.contains_strictly(s, profile.param_tol))
            else {
                continue;
            };
            let (lo, hi) = if forward { (phi, other) } else { (other, phi) };
            let mountain = sweep_fits(profile, ScanMode::Mountain, lo, gap);
            let mode = if mountain {
                ScanMode::Mountain
            } else {
                ScanMode::Valley
            };
            let realized = match mode {
                ScanMode::Mountain => ccw_gap(lo, hi),
                ScanMode::Valley => ccw_gap(hi, lo),
            };
            let near_tie = matches!(profile.locate(other), Location::Jump(_));
            let pair = make_pair(
                profile,
                arc,
                mode,
                phi,
                other,
                [jump.span.lo, s2, jump.span.hi],
                true,
                gap,
                realized,
                near_tie,
            )?;
            if !found
                .iter()
                .any(|f| f.same_configuration(&pair, eps, profile.param_tol))
            {
                found.push(pair);
            }
        }
    }
    Ok(found)
}

/// Distance from `delta` to the nearest counterclockwise gap between two
/// jumps, or between a jump and itself (`0` and `2π`).
pub fn jump_gap_distance(profile: &SupportProfile, delta: f64) -> f64 {
    let mut best = delta.min(TAU - delta).abs();
    for a in &profile.jumps {
        for b in &profile.jumps {
            let g = ccw_gap(a.angle, b.angle);
            best = best.min((g - delta).abs()).min((g + TAU - delta).abs());
        }
    }
    best
}

/// Number of strict configurations at `gap` of the kind `mode` finds.
pub fn count_of_mode(profile: &SupportProfile, configs: &[TriplePair], mode: ScanMode) -> usize {
    configs
        .iter()
        .filter(|c| fits_mode(profile, c, mode))
        .count()
}

/// How many strict configurations of the pair's kind exist at its gap.
pub fn unique_count(
    profile: &SupportProfile,
    arc: &PolygonalArc,
    pair: &TriplePair,
) -> Result<usize> {
    let configs = enumerate_triples(profile, arc, pair.requested_delta)?;
    Ok(count_of_mode(profile, &configs, pair.mode))
}

/// Pass/fail of each defining property of a triple pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// `γ(s1)` and `γ(s3)` lie on the double line.
    pub double_touch: bool,
    /// `γ(s2)` lies on the single line.
    pub single_touch: bool,
    /// Every vertex is on the closed left of both lines.
    pub left_side: bool,
    /// `s1 ≤ s2 ≤ s3`, strictly when the pair claims strictness.
    pub ordering: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.double_touch && self.single_touch && self.left_side && self.ordering
    }
}

/// Checks a pair against the arc geometry alone, at `eps_touch · diagonal`.
pub fn verify_triple(
    arc: &PolygonalArc,
    pair: &TriplePair,
    tol: &Tolerances,
) -> Result<VerifyReport> {
    let dist = tol.eps_touch * arc.diagonal();
    let on = |line: &DirectedLine, s: f64| -> Result<bool> {
        Ok(line.passes_through(arc.point_at(s)?, dist))
    };
    let double_touch = on(&pair.line_double, pair.s1)? && on(&pair.line_double, pair.s3)?;
    let single_touch = on(&pair.line_single, pair.s2)?;
    let left_side = pair.line_double.keeps_left(arc.vertices(), dist)
        && pair.line_single.keeps_left(arc.vertices(), dist);
    let [s1, s2, s3] = pair.triple();
    let ordering = if pair.strict {
        s1 + dist < s2 && s2 + dist < s3
    } else {
        s1 <= s2 + dist && s2 <= s3 + dist
    };
    Ok(VerifyReport {
        double_touch,
        single_touch,
        left_side,
        ordering,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub identical: bool,
    pub mountain: TriplePair,
    pub valley: TriplePair,
}

/// Runs both scans at `delta` and compares them as unordered angle pairs.
pub fn corollary_check(
    profile: &SupportProfile,
    arc: &PolygonalArc,
    delta: f64,
) -> Result<CorollaryReport> {
    let mountain = find_pair_mountain(profile, arc, delta)?;
    let valley = find_pair_valley(profile, arc, delta)?;
    let identical = mountain.same_configuration(&valley, profile.tol.eps_angle, profile.param_tol);
    Ok(CorollaryReport {
        identical,
        mountain,
        valley,
    })
}
