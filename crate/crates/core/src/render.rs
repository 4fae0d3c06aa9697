//! SVG rendering of trajectories, on the golden L or on the pentagon table.
//!
//! Everything here is floating point and advisory. The pentagon picture is a
//! plain ray-reflection billiard started at the edge midpoint in direction
//! `P·v`; it is cross-checked against the exact pipeline in tests, never the
//! other way round.

use std::fmt::Write as _;

use crate::flow::{Outcome, Trajectory};
use crate::golden_field::GoldenVector;
use crate::surface::{pentagon_transfer, GoldenL, Midpoint};

/// Distance below which a bounce point counts as a corner hit.
pub const CORNER_TOLERANCE: f64 = 1e-9;
/// Tolerance for recognising the return to the initial billiard state.
pub const CLOSURE_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MAX_BOUNCES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    GoldenL,
    Pentagon,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Output width in pixels; the height follows the aspect ratio.
    pub width: f64,
    pub stroke: f64,
    pub stroke_color: String,
    pub max_bounces: usize,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 600.0,
            stroke: 1.5,
            stroke_color: "#c0392b".to_string(),
            max_bounces: DEFAULT_MAX_BOUNCES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BilliardOutcome {
    Closed,
    Corner,
    BounceLimit,
}

impl BilliardOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            BilliardOutcome::Closed => "closed",
            BilliardOutcome::Corner => "corner",
            BilliardOutcome::BounceLimit => "bounce_limit",
        }
    }
}

/// A billiard path in the regular pentagon.
#[derive(Debug, Clone, PartialEq)]
pub struct BilliardPath {
    /// Start point followed by every bounce point.
    pub points: Vec<[f64; 2]>,
    /// Side label hit at each bounce.
    pub sides: Vec<Midpoint>,
    pub outcome: BilliardOutcome,
    pub length: f64,
}

impl BilliardPath {
    /// Final corner hits are not bounces.
    pub fn bounces(&self) -> usize {
        self.sides.len()
    }
}

/// Pentagon table vertices (counterclockwise) and the label of side `i`,
/// which runs from vertex `i` to vertex `i + 1`.
pub fn pentagon_table() -> ([[f64; 2]; 5], [Midpoint; 5]) {
    let transfer = pentagon_transfer();
    let inscribed = &GoldenL::get().inscribed_pentagon;
    let mut vertices = [[0.0; 2]; 5];
    for (slot, v) in vertices.iter_mut().zip(inscribed) {
        *slot = transfer.apply(v.to_f64());
    }
    let labels = [5, 4, 2, 1, 3].map(|j| Midpoint::new(j).expect("label"));
    (vertices, labels)
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn norm(a: [f64; 2]) -> f64 {
    dot(a, a).sqrt()
}

fn reflect(w: [f64; 2], side: [f64; 2]) -> [f64; 2] {
    let len = norm(side);
    let n = [-side[1] / len, side[0] / len];
    let k = 2.0 * dot(w, n);
    [w[0] - k * n[0], w[1] - k * n[1]]
}

/// Billiard from the midpoint of side `start` in pentagon-frame direction
/// `direction`. If the direction points out of the table there, the ball is
/// taken to have just bounced at the midpoint.
pub fn simulate_billiard(start: Midpoint, direction: [f64; 2], max_bounces: usize) -> BilliardPath {
    let (vs, labels) = pentagon_table();
    let side = |i: usize| (vs[i], vs[(i + 1) % 5]);
    let start_side = labels.iter().position(|&l| l == start).expect("label");
    let (a, b) = side(start_side);
    let origin = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let len = norm(direction);
    let mut w = [direction[0] / len, direction[1] / len];
    let edge = sub(b, a);
    if cross(edge, w) < 0.0 {
        w = reflect(w, edge);
    }
    let w0 = w;
    let mut pos = origin;
    let mut current = start_side;
    let mut points = vec![origin];
    let mut sides = Vec::new();
    let mut length = 0.0;
    let outcome = loop {
        if sides.len() >= max_bounces {
            break BilliardOutcome::BounceLimit;
        }
        let mut best: Option<(f64, usize, f64)> = None;
        for i in (0..5).filter(|&i| i != current) {
            let (a, b) = side(i);
            let e = sub(b, a);
            let denom = cross(w, e);
            if denom.abs() < 1e-15 {
                continue;
            }
            let ap = sub(a, pos);
            let t = cross(ap, e) / denom;
            let u = cross(ap, w) / denom;
            if t > 1e-12 && (-1e-9..=1.0 + 1e-9).contains(&u) && best.is_none_or(|(bt, _, _)| t < bt) {
                best = Some((t, i, u));
            }
        }
        let Some((t, i, u)) = best else {
            break BilliardOutcome::Corner;
        };
        pos = [pos[0] + t * w[0], pos[1] + t * w[1]];
        length += t;
        points.push(pos);
        let side_len = norm(sub(side(i).1, side(i).0));
        if u * side_len < CORNER_TOLERANCE || (1.0 - u) * side_len < CORNER_TOLERANCE {
            break BilliardOutcome::Corner;
        }
        w = reflect(w, sub(side(i).1, side(i).0));
        sides.push(labels[i]);
        current = i;
        if i == start_side
            && norm(sub(pos, origin)) < CLOSURE_TOLERANCE
            && norm(sub(w, w0)) < CLOSURE_TOLERANCE
        {
            break BilliardOutcome::Closed;
        }
    };
    BilliardPath {
        points,
        sides,
        outcome,
        length,
    }
}

/// The billiard path belonging to a golden-L trajectory.
pub fn billiard_for(t: &Trajectory, max_bounces: usize) -> BilliardPath {
    let w = pentagon_transfer().apply(t.direction.to_f64());
    simulate_billiard(t.start, w, max_bounces)
}

struct Canvas {
    min: [f64; 2],
    scale: f64,
    height: f64,
    margin: f64,
}

impl Canvas {
    fn fit(points: &[[f64; 2]], width: f64) -> Canvas {
        let margin = 20.0;
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                min[k] = min[k].min(p[k]);
                max[k] = max[k].max(p[k]);
            }
        }
        let scale = (width - 2.0 * margin) / (max[0] - min[0]);
        let height = (max[1] - min[1]) * scale + 2.0 * margin;
        Canvas {
            min,
            scale,
            height,
            margin,
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            self.margin + (p[0] - self.min[0]) * self.scale,
            self.height - self.margin - (p[1] - self.min[1]) * self.scale,
        )
    }

    fn points_attr(&self, ps: &[[f64; 2]]) -> String {
        ps.iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn header(out: &mut String, width: f64, height: f64, attrs: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" {attrs}>"#
    );
}

fn marker(out: &mut String, canvas: &Canvas, p: [f64; 2], label: Midpoint) {
    let (x, y) = canvas.map(p);
    let _ = writeln!(
        out,
        r##"  <circle class="midpoint" cx="{x:.3}" cy="{y:.3}" r="3" fill="#2c3e50"/><text x="{:.3}" y="{:.3}" font-size="12">{label}</text>"##,
        x + 4.0,
        y - 4.0
    );
}

/// Renders a trajectory as an SVG 1.1 document.
///
/// On the golden L every trajectory segment is one `<line class="segment">`.
/// On the pentagon the billiard path is a single polyline carrying
/// `data-bounces` and `data-outcome`.
pub fn render_trajectory(t: &Trajectory, frame: Frame, opts: &SvgOptions) -> String {
    match frame {
        Frame::GoldenL => render_golden_l(t, opts),
        Frame::Pentagon => render_pentagon(&billiard_for(t, opts.max_bounces), t, opts),
    }
}

fn render_golden_l(t: &Trajectory, opts: &SvgOptions) -> String {
    let surface = GoldenL::get();
    let outline: Vec<[f64; 2]> = surface.vertices.iter().map(GoldenVector::to_f64).collect();
    let canvas = Canvas::fit(&outline, opts.width);
    let mut out = String::new();
    header(
        &mut out,
        opts.width,
        canvas.height,
        &format!(
            r#"data-frame="goldenl" data-direction="{}" data-outcome="{}" data-segments="{}""#,
            t.direction,
            t.outcome.as_str(),
            t.segments.len()
        ),
    );
    let _ = writeln!(
        out,
        r##"  <polygon class="surface" points="{}" fill="#f4f1ea" stroke="#333" stroke-width="1"/>"##,
        canvas.points_attr(&outline)
    );
    let pent: Vec<[f64; 2]> = surface.inscribed_pentagon.iter().map(GoldenVector::to_f64).collect();
    let _ = writeln!(
        out,
        r##"  <polygon class="inscribed" points="{}" fill="none" stroke="#7f8c8d" stroke-dasharray="4 3"/>"##,
        canvas.points_attr(&pent)
    );
    for seg in &t.segments {
        let (x1, y1) = canvas.map(seg.entry.to_f64());
        let (x2, y2) = canvas.map(seg.exit.to_f64());
        let _ = writeln!(
            out,
            r#"  <line class="segment" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{}" stroke-width="{}"/>"#,
            opts.stroke_color, opts.stroke
        );
    }
    for wp in &surface.weierstrass_points {
        marker(&mut out, &canvas, wp.position.to_f64(), wp.label);
    }
    if let Outcome::HitConePoint(p) = &t.outcome {
        let (x, y) = canvas.map(p.to_f64());
        let _ = writeln!(
            out,
            r##"  <circle class="cone" cx="{x:.3}" cy="{y:.3}" r="4" fill="none" stroke="#000"/>"##
        );
    }
    out.push_str("</svg>\n");
    out
}

fn render_pentagon(path: &BilliardPath, t: &Trajectory, opts: &SvgOptions) -> String {
    let (vs, labels) = pentagon_table();
    let canvas = Canvas::fit(&vs, opts.width);
    let mut out = String::new();
    header(
        &mut out,
        opts.width,
        canvas.height,
        &format!(
            r#"data-frame="pentagon" data-start="{}" data-outcome="{}" data-bounces="{}" data-length="{:.9}""#,
            t.start,
            path.outcome.as_str(),
            path.bounces(),
            path.length
        ),
    );
    let _ = writeln!(
        out,
        r##"  <polygon class="table" points="{}" fill="#f4f1ea" stroke="#333" stroke-width="1.5"/>"##,
        canvas.points_attr(&vs)
    );
    let _ = writeln!(
        out,
        r#"  <polyline class="billiard" points="{}" fill="none" stroke="{}" stroke-width="{}" data-bounces="{}" data-outcome="{}"/>"#,
        canvas.points_attr(&path.points),
        opts.stroke_color,
        opts.stroke,
        path.bounces(),
        path.outcome.as_str()
    );
    for (i, &label) in labels.iter().enumerate() {
        let (a, b) = (vs[i], vs[(i + 1) % 5]);
        marker(&mut out, &canvas, [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0], label);
    }
    out.push_str("</svg>\n");
    out
}
