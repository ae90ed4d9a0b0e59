//! SVG figure of an arc, its hull and one support-line pair.
//!
//! Geometry stays in mathematical orientation; the y axis is flipped only
//! when coordinates are written out.

use std::fmt::Write as _;

use arcsupport::{
    find_pair, DirectedLine, Error, Hull, Point2, PolygonalArc, Result, SupportProfile,
};

use crate::output::ModeArg;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub margin: f64,
    pub arc_stroke: String,
    pub hull_stroke: String,
    pub single_stroke: String,
    pub double_stroke: String,
    pub point_fill: String,
    pub stroke_width: f64,
    pub point_radius: f64,
    pub labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 600,
            height: 600,
            margin: 60.0,
            arc_stroke: "#1f4e79".into(),
            hull_stroke: "#9a9a9a".into(),
            single_stroke: "#c0392b".into(),
            double_stroke: "#27863c".into(),
            point_fill: "#000000".into(),
            stroke_width: 2.0,
            point_radius: 4.0,
            labels: true,
        }
    }
}

impl RenderSpec {
    pub fn is_valid(&self) -> bool {
        self.width > 0
            && self.height > 0
            && self.margin >= 0.0
            && 2.0 * self.margin < self.width.min(self.height) as f64
            && self.stroke_width > 0.0
            && self.point_radius > 0.0
    }
}

struct View {
    min: Point2,
    scale: f64,
    margin: f64,
    height: f64,
}

impl View {
    fn new(points: &[Point2], spec: &RenderSpec) -> View {
        let min = Point2::new(
            points.iter().map(|p| p.x).fold(f64::INFINITY, f64::min),
            points.iter().map(|p| p.y).fold(f64::INFINITY, f64::min),
        );
        let max = Point2::new(
            points.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max),
            points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max),
        );
        let span = (max.x - min.x).max(max.y - min.y);
        let inner = spec.width.min(spec.height) as f64 - 2.0 * spec.margin;
        View {
            min,
            scale: inner / span,
            margin: spec.margin,
            height: spec.height as f64,
        }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        let x = self.margin + (p.x - self.min.x) * self.scale;
        let y = self.height - self.margin - (p.y - self.min.y) * self.scale;
        (x, y)
    }
}

fn line_element(
    out: &mut String,
    view: &View,
    line: &DirectedLine,
    reach: f64,
    class: &str,
    stroke: &str,
    width: f64,
) {
    let d = line.direction();
    let (x1, y1) = view.map(line.anchor - d * reach);
    let (x2, y2) = view.map(line.anchor + d * reach);
    let _ = writeln!(
        out,
        r#"  <line class="{class}" data-theta="{}" x1="{x1:.6}" y1="{y1:.6}" x2="{x2:.6}" y2="{y2:.6}" stroke="{stroke}" stroke-width="{width}"/>"#,
        line.theta.radians()
    );
}

pub fn render_svg(
    arc: &PolygonalArc,
    hull: &Hull,
    profile: &SupportProfile,
    delta: f64,
    mode: ModeArg,
    spec: &RenderSpec,
) -> Result<String> {
    if !spec.is_valid() {
        return Err(Error::MalformedFunction(
            "render spec needs positive dimensions".into(),
        ));
    }
    let pair = find_pair(profile, arc, delta, mode.single())?;
    let view = View::new(arc.vertices(), spec);
    let reach = 2.0 * arc.diagonal();
    let (w, h) = (spec.width, spec.height);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"  <rect width="{w}" height="{h}" fill="white"/>"#);
    let pts = |ps: &[Point2]| {
        ps.iter()
            .map(|&p| {
                let (x, y) = view.map(p);
                format!("{x:.6},{y:.6}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(
        out,
        r#"  <polygon class="hull" points="{}" fill="none" stroke="{}" stroke-width="{}" stroke-dasharray="6 4"/>"#,
        pts(&hull.points()),
        spec.hull_stroke,
        spec.stroke_width
    );
    let _ = writeln!(
        out,
        r#"  <polyline class="arc" points="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
        pts(arc.vertices()),
        spec.arc_stroke,
        spec.stroke_width
    );
    line_element(
        &mut out,
        &view,
        &pair.line_double,
        reach,
        "support-double",
        &spec.double_stroke,
        spec.stroke_width,
    );
    line_element(
        &mut out,
        &view,
        &pair.line_single,
        reach,
        "support-single",
        &spec.single_stroke,
        spec.stroke_width,
    );

    for (name, s) in [("s1", pair.s1), ("s2", pair.s2), ("s3", pair.s3)] {
        let p = arc.point_at(s)?;
        let (x, y) = view.map(p);
        let _ = writeln!(
            out,
            r#"  <circle class="touch" data-label="{name}" data-x="{}" data-y="{}" cx="{x:.6}" cy="{y:.6}" r="{}" fill="{}"/>"#,
            p.x, p.y, spec.point_radius, spec.point_fill
        );
        if spec.labels {
            let _ = writeln!(
                out,
                r#"  <text x="{:.6}" y="{:.6}" font-family="sans-serif" font-size="14">{name}</text>"#,
                x + 6.0,
                y - 6.0
            );
        }
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
