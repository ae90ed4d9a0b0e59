//! Text and JSON reports.

use std::fmt::Write as _;
use std::str::FromStr;

use arcsupport::{
    corollary_check, find_pair, unique_count, Hull, PolygonalArc, Result, ScanMode, SupportProfile,
    TriplePair,
};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Mountain,
    Valley,
    Both,
}

impl ModeArg {
    /// The scan to draw; `both` draws the mountain pair.
    pub fn single(self) -> ScanMode {
        match self {
            ModeArg::Valley => ScanMode::Valley,
            _ => ScanMode::Mountain,
        }
    }
}

/// A `--delta` value together with the resolution of its decimal literal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaArg {
    pub value: f64,
    /// Half a unit in the last written decimal place; zero for integers.
    pub resolution: f64,
}

impl FromStr for DeltaArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let value: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
        let mantissa = s.trim().split(['e', 'E']).next().unwrap_or("");
        let exponent: i32 = s
            .trim()
            .split(['e', 'E'])
            .nth(1)
            .map_or(Ok(0), str::parse)
            .map_err(|e| format!("{e}"))?;
        let decimals = mantissa.split_once('.').map_or(0, |(_, frac)| frac.len()) as i32;
        let resolution = if mantissa.contains('.') || exponent < 0 {
            0.5 * 10f64.powi(exponent - decimals)
        } else {
            0.0
        };
        Ok(DeltaArg { value, resolution })
    }
}

impl DeltaArg {
    pub fn radians(&self, degrees: bool) -> f64 {
        if degrees {
            self.value.to_radians()
        } else {
            self.value
        }
    }

    pub fn resolution_radians(&self, degrees: bool) -> f64 {
        if degrees {
            self.resolution.to_radians()
        } else {
            self.resolution
        }
    }
}

#[derive(Serialize)]
pub struct CornerRow {
    pub index: usize,
    pub point: [f64; 2],
    pub param: f64,
    pub step: [f64; 2],
    pub exterior_angle: f64,
}

#[derive(Serialize)]
pub struct JumpRow {
    pub angle: f64,
    pub span: [f64; 2],
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub vertices: usize,
    pub length: f64,
    pub corners: Vec<CornerRow>,
    pub delta_1: f64,
    pub delta_n: f64,
    /// Corner parameters read counterclockwise from the minimum step.
    pub levels: Vec<f64>,
    pub apex_step: usize,
    pub jumps: Vec<JumpRow>,
}

pub fn analyze_report(arc: &PolygonalArc, hull: &Hull, profile: &SupportProfile) -> AnalyzeReport {
    AnalyzeReport {
        vertices: arc.len(),
        length: arc.length(),
        corners: hull
            .corners
            .iter()
            .map(|c| CornerRow {
                index: c.index,
                point: [c.point.x, c.point.y],
                param: c.param,
                step: [c.step.lo, c.step.hi],
                exterior_angle: c.exterior_angle,
            })
            .collect(),
        delta_1: profile.delta_1,
        delta_n: profile.delta_n,
        levels: profile.levels(),
        apex_step: profile.apex_step,
        jumps: profile
            .jumps
            .iter()
            .map(|j| JumpRow {
                angle: j.angle.radians(),
                span: [j.span.lo, j.span.hi],
            })
            .collect(),
    }
}

pub fn analyze_text(arc: &PolygonalArc, hull: &Hull, profile: &SupportProfile) -> String {
    let r = analyze_report(arc, hull, profile);
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}  length: {:.12}", r.vertices, r.length);
    let _ = writeln!(out, "corners: {}", r.corners.len());
    let _ = writeln!(
        out,
        "{:>5} {:>28} {:>16} {:>36} {:>16}",
        "index", "point", "param", "step", "exterior"
    );
    for c in &r.corners {
        let _ = writeln!(
            out,
            "{:>5} {:>28} {:>16.12} {:>36} {:>16.12}",
            c.index,
            format!("({:.6}, {:.6})", c.point[0], c.point[1]),
            c.param,
            format!("[{:.12}, {:.12}]", c.step[0], c.step[1]),
            c.exterior_angle
        );
    }
    let _ = writeln!(out, "delta_1: {:.12}", r.delta_1);
    let _ = writeln!(out, "delta_n: {:.12}", r.delta_n);
    let levels: Vec<String> = r.levels.iter().map(|l| format!("{l:.12}")).collect();
    let _ = writeln!(out, "levels: {}", levels.join(" "));
    let _ = writeln!(out, "jumps:");
    for j in &r.jumps {
        let _ = writeln!(
            out,
            "  {:.12}  [{:.12}, {:.12}]",
            j.angle, j.span[0], j.span[1]
        );
    }
    out
}

#[derive(Serialize)]
struct PairJson {
    mode: ScanMode,
    delta: f64,
    theta_single: f64,
    theta_double: f64,
    s: [f64; 3],
    strict: bool,
    realized_gap: f64,
    unique_count: usize,
    guaranteed: bool,
    near_tie: bool,
}

fn pair_json(
    profile: &SupportProfile,
    arc: &PolygonalArc,
    p: &TriplePair,
    degrees: bool,
) -> Result<PairJson> {
    let unit = |r: f64| if degrees { r.to_degrees() } else { r };
    Ok(PairJson {
        mode: p.mode,
        delta: unit(p.requested_delta),
        theta_single: unit(p.theta_single.radians()),
        theta_double: unit(p.theta_double.radians()),
        s: p.triple(),
        strict: p.strict,
        realized_gap: unit(p.realized_gap),
        unique_count: unique_count(profile, arc, p)?,
        guaranteed: p.guaranteed,
        near_tie: p.near_tie,
    })
}

/// The `find-pair` result. With `both`, the two scans count as identical
/// when they agree up to the precision of the `--delta` literal: moving `δ`
/// by `r` moves each scan's free line by `r`, in opposite directions.
pub fn find_pair_json(
    arc: &PolygonalArc,
    profile: &SupportProfile,
    delta: DeltaArg,
    mode: ModeArg,
    degrees: bool,
) -> Result<Value> {
    let to_value = |p: PairJson| serde_json::to_value(p).expect("pair serializes");
    let rad = delta.radians(degrees);
    match mode {
        ModeArg::Both => {
            let c = corollary_check(profile, arc, rad)?;
            let angle_tol = profile.tol.eps_angle + 2.0 * delta.resolution_radians(degrees);
            let identical = c
                .mountain
                .same_configuration(&c.valley, angle_tol, profile.param_tol);
            Ok(json!({
                "mode": "both",
                "mountain": to_value(pair_json(profile, arc, &c.mountain, degrees)?),
                "valley": to_value(pair_json(profile, arc, &c.valley, degrees)?),
                "identical": identical,
            }))
        }
        m => {
            let p = find_pair(profile, arc, rad, m.single())?;
            Ok(to_value(pair_json(profile, arc, &p, degrees)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_literal_resolution() {
        let d: DeltaArg = "3.14159265".parse().unwrap();
        assert_eq!(d.value, 3.14159265);
        assert!((d.resolution - 5e-9).abs() < 1e-20);
        assert_eq!("2".parse::<DeltaArg>().unwrap().resolution, 0.0);
        assert!(("1.5e-2".parse::<DeltaArg>().unwrap().resolution - 5e-4).abs() < 1e-18);
        assert!("abc".parse::<DeltaArg>().is_err());
    }
}
