//! Plain SVG text for planar polygons and fiber polygons.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::fiber::FiberPolygon;
use crate::geometry::Point2;
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    pub grid: bool,
    pub labels: bool,
    pub title: Option<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 480,
            height: 480,
            margin: 40,
            grid: true,
            labels: true,
            title: None,
        }
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Maps data coordinates to the canvas, y pointing up, with equal unit lengths.
struct Frame {
    x0: f64,
    y0: f64,
    scale: f64,
    margin: f64,
    height: f64,
}

impl Frame {
    fn new(points: &[Point2], opts: &SvgOptions) -> Self {
        let xs = points.iter().map(|p| to_f64(&p.x));
        let ys = points.iter().map(|p| to_f64(&p.y));
        let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
        for x in xs {
            x0 = x0.min(x);
            x1 = x1.max(x);
        }
        let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
        for y in ys {
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        let x0 = x0.floor();
        let y0 = y0.floor();
        let span = (x1.ceil() - x0).max(y1.ceil() - y0).max(1.0);
        let inner = f64::from(opts.width.min(opts.height)) - 2.0 * f64::from(opts.margin);
        Frame {
            x0,
            y0,
            scale: inner / span,
            margin: f64::from(opts.margin),
            height: f64::from(opts.height),
        }
    }

    fn x(&self, x: f64) -> f64 {
        self.margin + (x - self.x0) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        self.height - self.margin - (y - self.y0) * self.scale
    }

    fn max_unit(&self, pixels: f64) -> i64 {
        (pixels / self.scale).floor() as i64
    }
}

fn header(out: &mut String, opts: &SvgOptions) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = opts.width,
        h = opts.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some(t) = &opts.title {
        let _ = writeln!(out, "<title>{}</title>", escape(t));
    }
}

fn grid(out: &mut String, frame: &Frame, opts: &SvgOptions) {
    if !opts.grid {
        return;
    }
    let inner = f64::from(opts.width.min(opts.height)) - 2.0 * frame.margin;
    let units = frame.max_unit(inner);
    // keep roughly ten ticks per axis
    let step = ((units as f64) / 10.0).ceil().max(1.0) as i64;
    let _ = writeln!(out, r##"<g class="grid" stroke="#ddd" stroke-width="1">"##);
    let mut u = 0;
    while u <= units {
        let gx = frame.x(frame.x0 + u as f64);
        let gy = frame.y(frame.y0 + u as f64);
        let _ = writeln!(
            out,
            r#"<line x1="{gx:.2}" y1="{:.2}" x2="{gx:.2}" y2="{:.2}"/>"#,
            frame.y(frame.y0),
            frame.y(frame.y0 + units as f64)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{gy:.2}" x2="{:.2}" y2="{gy:.2}"/>"#,
            frame.x(frame.x0),
            frame.x(frame.x0 + units as f64)
        );
        u += step;
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r##"<g class="ticks" font-size="10" font-family="monospace" fill="#666">"##);
    let mut u = 0;
    while u <= units {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            frame.x(frame.x0 + u as f64),
            frame.y(frame.y0) + 14.0,
            frame.x0 as i64 + u
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            frame.x(frame.x0) - 6.0,
            frame.y(frame.y0 + u as f64) + 3.0,
            frame.y0 as i64 + u
        );
        u += step;
    }
    let _ = writeln!(out, "</g>");
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn path_of(frame: &Frame, pts: &[Point2]) -> String {
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let _ = write!(
            d,
            "{}{:.2},{:.2} ",
            if i == 0 { 'M' } else { 'L' },
            frame.x(to_f64(&p.x)),
            frame.y(to_f64(&p.y))
        );
    }
    d.push('Z');
    d
}

fn vertices(out: &mut String, frame: &Frame, pts: &[Point2], opts: &SvgOptions) {
    let _ = writeln!(out, r#"<g class="vertices" fill="black">"#);
    for p in pts {
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{:.2}" cy="{:.2}" r="3"/>"#,
            frame.x(to_f64(&p.x)),
            frame.y(to_f64(&p.y))
        );
    }
    let _ = writeln!(out, "</g>");
    if opts.labels {
        let _ = writeln!(out, r#"<g class="labels" font-size="11" font-family="monospace">"#);
        for p in pts {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}">({}, {})</text>"#,
                frame.x(to_f64(&p.x)) + 5.0,
                frame.y(to_f64(&p.y)) - 5.0,
                format_rational(&p.x),
                format_rational(&p.y)
            );
        }
        let _ = writeln!(out, "</g>");
    }
}

/// A closed polygon with one marker per vertex.
pub fn render_polygon(pts: &[Point2], opts: &SvgOptions) -> String {
    let frame = Frame::new(pts, opts);
    let mut out = String::new();
    header(&mut out, opts);
    grid(&mut out, &frame, opts);
    if !pts.is_empty() {
        let _ = writeln!(
            out,
            r##"<path class="polygon" d="{}" fill="#cde" stroke="#124" stroke-width="2"/>"##,
            path_of(&frame, pts)
        );
    }
    vertices(&mut out, &frame, pts, opts);
    out.push_str("</svg>\n");
    out
}

/// The trapezoid stack, with each base drawn as a horizontal segment.
pub fn render_fiber(poly: &FiberPolygon, opts: &SvgOptions) -> String {
    let pts = poly.vertices();
    let frame = Frame::new(&pts, opts);
    let mut out = String::new();
    header(&mut out, opts);
    grid(&mut out, &frame, opts);
    let _ = writeln!(
        out,
        r##"<path class="polygon" d="{}" fill="#edc" stroke="#421" stroke-width="1"/>"##,
        path_of(&frame, &pts)
    );
    let _ = writeln!(out, r##"<g class="bases" stroke="#a20" stroke-width="2">"##);
    for (b, y) in poly.bases.iter().zip(poly.levels()) {
        let yy = frame.y(y as f64);
        let _ = writeln!(
            out,
            r#"<line class="base" x1="{:.2}" y1="{yy:.2}" x2="{:.2}" y2="{yy:.2}"/>"#,
            frame.x(0.0),
            frame.x(to_f64(b))
        );
    }
    let _ = writeln!(out, "</g>");
    vertices(&mut out, &frame, &pts, opts);
    out.push_str("</svg>\n");
    out
}
