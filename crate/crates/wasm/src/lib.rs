//! Browser bindings: planar scenes given as flat arrays
//! `[ax, ay, dx, dy]` per line, edge lengths as `[d12, d13, d23]`.

use std::fmt::Write as _;

use serde_json::json;
use trilinea::{
    feasibility, render_svg, solve_configurations, ConfigurationSet, Line, Mechanism, Scene, SolveOptions, SvgOptions,
    TriangleSpec, VecN,
};
use wasm_bindgen::prelude::*;

fn planar_scene(lines: &[f64]) -> Result<Scene, String> {
    if lines.len() != 12 {
        return Err(format!("expected 12 numbers (3 lines x [ax, ay, dx, dy]), got {}", lines.len()));
    }
    let mut out = Vec::with_capacity(3);
    for c in lines.chunks(4) {
        out.push(Line::new(VecN::from([c[0], c[1]]), VecN::from([c[2], c[3]])).map_err(|e| e.to_string())?);
    }
    let [a, b, c]: [Line; 3] = out.try_into().expect("three chunks");
    Scene::new([a, b, c]).map_err(|e| e.to_string())
}

fn triangle(lengths: &[f64]) -> Result<TriangleSpec, String> {
    match lengths {
        [d12, d13, d23] => TriangleSpec::new(*d12, *d13, *d23).map_err(|e| e.to_string()),
        _ => Err(format!("expected 3 edge lengths, got {}", lengths.len())),
    }
}

/// Edge lengths that make the triangle move on three concurrent lines at
/// the given angles (degrees), inscribed in a circle of radius `radius`.
pub fn inscribed_lengths(angles_deg: &[f64], radius: f64) -> Vec<f64> {
    let chord = |a: f64, b: f64| radius * (a - b).to_radians().sin().abs();
    match angles_deg {
        [a1, a2, a3] => vec![chord(*a1, *a2), chord(*a1, *a3), chord(*a2, *a3)],
        _ => Vec::new(),
    }
}

pub fn feasibility_report(lines: &[f64], lengths: &[f64]) -> Result<String, String> {
    let scene = planar_scene(lines)?;
    let report = feasibility(&scene, &triangle(lengths)?).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&report).expect("report serialises"))
}

pub fn motion_drawing(
    lines: &[f64],
    lengths: &[f64],
    samples: usize,
    theta: f64,
    rolling: bool,
) -> Result<String, String> {
    let scene = planar_scene(lines)?;
    let mech = Mechanism::new(&scene, &triangle(lengths)?, None).map_err(|e| e.to_string())?;
    let trace = mech.trace(samples).map_err(|e| e.to_string())?;
    render_svg(&mech, &trace, SvgOptions { rolling, width: 560.0, highlight: Some(theta) }).map_err(|e| e.to_string())
}

/// Static placements as a JSON summary and an SVG sketch.
pub fn placement_drawing(lines: &[f64], lengths: &[f64]) -> Result<String, String> {
    let scene = planar_scene(lines)?;
    let tri = triangle(lengths)?;
    let set = match solve_configurations(&scene, &tri, &SolveOptions::default()) {
        Ok(s) => s,
        Err(trilinea::Error::EdgeTooShort { .. }) => ConfigurationSet::Finite(Vec::new()),
        Err(e) => return Err(e.to_string()),
    };
    let (count, triangles): (serde_json::Value, Vec<[[f64; 2]; 3]>) = match &set {
        ConfigurationSet::Continuum(m) => {
            let states = m.trace(8).map_err(|e| e.to_string())?;
            (json!("continuum"), states.iter().map(|s| s.points.clone().map(|p| [p[0], p[1]])).collect())
        }
        ConfigurationSet::Finite(v) => {
            (json!(v.len()), v.iter().map(|c| c.points.clone().map(|p| [p[0], p[1]])).collect())
        }
    };
    let svg = sketch(&scene, &triangles);
    Ok(json!({ "count": count, "triangles": triangles, "svg": svg }).to_string())
}

fn sketch(scene: &Scene, triangles: &[[[f64; 2]; 3]]) -> String {
    let mut r = 1.0f64;
    for t in triangles {
        for p in t {
            r = r.max(p[0].abs()).max(p[1].abs());
        }
    }
    for l in scene.lines() {
        r = r.max(l.anchor()[0].abs()).max(l.anchor()[1].abs());
    }
    let r = 1.15 * r;
    let w = r / 150.0;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="560" height="560" viewBox="{} {} {} {}">"#,
        -r,
        -r,
        2.0 * r,
        2.0 * r
    )
    .unwrap();
    for l in scene.lines() {
        let (a, d) = (l.anchor(), l.direction());
        let (x1, y1, x2, y2) =
            (a[0] - 4.0 * r * d[0], a[1] - 4.0 * r * d[1], a[0] + 4.0 * r * d[0], a[1] + 4.0 * r * d[1]);
        writeln!(
            s,
            r##"<line x1="{x1:.6}" y1="{:.6}" x2="{x2:.6}" y2="{:.6}" stroke="#888888" stroke-width="{w:.6}"/>"##,
            -y1, -y2
        )
        .unwrap();
    }
    for t in triangles {
        let pts: Vec<String> = t.iter().map(|p| format!("{:.6},{:.6}", p[0], -p[1])).collect();
        writeln!(
            s,
            r##"<polygon points="{}" fill="#2471a3" fill-opacity="0.2" stroke="#2471a3" stroke-width="{w:.6}"/>"##,
            pts.join(" ")
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[wasm_bindgen(js_name = inscribedLengths)]
pub fn inscribed_lengths_js(angles_deg: &[f64], radius: f64) -> Vec<f64> {
    inscribed_lengths(angles_deg, radius)
}

#[wasm_bindgen(js_name = feasibility)]
pub fn feasibility_js(lines: &[f64], lengths: &[f64]) -> Result<String, JsError> {
    feasibility_report(lines, lengths).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = motionSvg)]
pub fn motion_svg_js(
    lines: &[f64],
    lengths: &[f64],
    samples: usize,
    theta: f64,
    rolling: bool,
) -> Result<String, JsError> {
    motion_drawing(lines, lengths, samples, theta, rolling).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = placements)]
pub fn placements_js(lines: &[f64], lengths: &[f64]) -> Result<String, JsError> {
    placement_drawing(lines, lengths).map_err(|e| JsError::new(&e))
}
