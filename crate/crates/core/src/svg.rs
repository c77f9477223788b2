//! SVG drawing of a planar motion.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::mechanism::{circumcircle, Mechanism, MotionState};

const COLORS: [&str; 3] = ["#c0392b", "#2471a3", "#1e8449"];
const SNAPSHOTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Draw the fixed circle of radius `R` and the rolling circle `R/2`.
    pub rolling: bool,
    /// Width of the image in pixels; the height follows the aspect ratio.
    pub width: f64,
    /// Also draw the state at this angle, emphasised.
    pub highlight: Option<f64>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { rolling: false, width: 640.0, highlight: None }
    }
}

/// Numbers are printed with six decimals so repeated runs are byte-identical.
fn f(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Renders the lines, the vertex traces and eight triangle snapshots. The
/// view box fits the swept ranges with a 10% margin.
///
/// Drawing is in the plane of the motion with the y axis pointing up. Fails
/// with [`Error::NotPlanarizable`] when the motion has no plane.
pub fn render_svg(mech: &Mechanism, trace: &[MotionState], opts: SvgOptions) -> Result<String> {
    let frame = mech.frame().ok_or(Error::NotPlanarizable)?;
    let dirs = mech.planar_directions().ok_or(Error::NotPlanarizable)?;
    if trace.is_empty() {
        return Err(Error::InvalidSampleCount(0));
    }
    // y is negated once here so the picture keeps the mathematical orientation
    let to_screen = |xy: [f64; 2]| [xy[0], -xy[1]];
    let paths: Vec<Vec<[f64; 2]>> =
        (0..3).map(|i| trace.iter().map(|s| to_screen(frame.coords(&s.points[i]))).collect()).collect();

    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    let mut grow = |p: [f64; 2]| {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    };
    paths.iter().flatten().for_each(|p| grow(*p));
    for (i, r) in mech.ranges().iter().enumerate() {
        let line = mech.scene().line(i);
        let (a, b) = r.bounds();
        grow(to_screen(frame.coords(&line.point_at(a))));
        grow(to_screen(frame.coords(&line.point_at(b))));
    }
    let outer = if opts.rolling { mech.outer_radius() } else { None };
    if let Some(r) = outer {
        grow([-r, -r]);
        grow([r, r]);
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let margin = 0.1 * extent;
    let (x0, y0) = (lo[0] - margin, lo[1] - margin);
    let (w, h) = (hi[0] - lo[0] + 2.0 * margin, hi[1] - lo[1] + 2.0 * margin);
    let stroke = extent / 300.0;

    let mut out = String::new();
    let px_h = opts.width * h / w;
    writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"##,
        f(opts.width),
        f(px_h),
        f(x0),
        f(y0),
        f(w),
        f(h)
    )
    .unwrap();
    writeln!(out, r##"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"##, f(x0), f(y0), f(w), f(h)).unwrap();

    // Each line is clipped to the view box by a long segment through its
    // anchor; the diagonal bounds every chord.
    let reach = w.hypot(h);
    let centre = [x0 + w / 2.0, y0 + h / 2.0];
    for (i, d) in dirs.iter().enumerate() {
        let a = to_screen(frame.coords(mech.scene().line(i).anchor()));
        let u = to_screen(*d);
        let t0 = (centre[0] - a[0]) * u[0] + (centre[1] - a[1]) * u[1];
        let (p, q) = (
            [a[0] + (t0 - reach) * u[0], a[1] + (t0 - reach) * u[1]],
            [a[0] + (t0 + reach) * u[0], a[1] + (t0 + reach) * u[1]],
        );
        writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888888" stroke-width="{}"/>"##,
            f(p[0]),
            f(p[1]),
            f(q[0]),
            f(q[1]),
            f(stroke)
        )
        .unwrap();
    }

    if let Some(r) = outer {
        writeln!(
            out,
            r##"<circle cx="0.000000" cy="0.000000" r="{}" fill="none" stroke="#444444" stroke-dasharray="{} {}" stroke-width="{}"/>"##,
            f(r),
            f(4.0 * stroke),
            f(4.0 * stroke),
            f(stroke)
        )
        .unwrap();
        let [a, b, c] = [0, 1, 2].map(|i| paths[i][0]);
        if let Some((cc, rho)) = circumcircle(a, b, c) {
            writeln!(
                out,
                r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#7d3c98" stroke-width="{}"/>"##,
                f(cc[0]),
                f(cc[1]),
                f(rho),
                f(stroke)
            )
            .unwrap();
        }
    }

    for (i, path) in paths.iter().enumerate() {
        let pts: Vec<String> = path.iter().map(|p| format!("{},{}", f(p[0]), f(p[1]))).collect();
        writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="{}" stroke-width="{}"/>"##,
            pts.join(" "),
            COLORS[i],
            f(2.0 * stroke)
        )
        .unwrap();
    }

    for k in 0..SNAPSHOTS {
        let idx = k * trace.len() / SNAPSHOTS;
        let pts: Vec<String> = (0..3).map(|i| format!("{},{}", f(paths[i][idx][0]), f(paths[i][idx][1]))).collect();
        writeln!(
            out,
            r##"<polygon points="{}" fill="#f5b041" fill-opacity="0.15" stroke="#333333" stroke-width="{}"/>"##,
            pts.join(" "),
            f(stroke)
        )
        .unwrap();
    }
    if let Some(theta) = opts.highlight {
        let s = mech.state(theta)?;
        let pts: Vec<String> =
            s.points.iter().map(|p| to_screen(frame.coords(p))).map(|p| format!("{},{}", f(p[0]), f(p[1]))).collect();
        writeln!(
            out,
            r##"<polygon class="current" points="{}" fill="#f5b041" fill-opacity="0.6" stroke="#000000" stroke-width="{}"/>"##,
            pts.join(" "),
            f(2.0 * stroke)
        )
        .unwrap();
        for (i, p) in s.points.iter().enumerate() {
            let [x, y] = to_screen(frame.coords(p));
            writeln!(out, r##"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"##, f(x), f(y), f(4.0 * stroke), COLORS[i])
                .unwrap();
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
