//! Scene files (JSON) and trace files (CSV).

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Line, Scene, PAIRS};
use crate::mechanism::{MotionState, Side};
use crate::triangle::TriangleSpec;
use crate::vector::{Point, VecN};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineRecord {
    pub anchor: Vec<f64>,
    pub direction: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleRecord {
    pub d12: f64,
    pub d13: f64,
    pub d23: f64,
}

fn default_samples() -> usize {
    1024
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneOptions {
    /// Orientation of the triangle; omitted means the orientation the motion runs in.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Default for SceneOptions {
    fn default() -> Self {
        SceneOptions { side: None, samples: default_samples(), seed: None }
    }
}

/// On-disk scene: three lines, a triangle and run options.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub dimension: usize,
    pub lines: Vec<LineRecord>,
    pub triangle: TriangleRecord,
    #[serde(default)]
    pub options: SceneOptions,
}

impl SceneFile {
    pub fn from_parts(scene: &Scene, tri: &TriangleSpec, options: SceneOptions) -> Self {
        SceneFile {
            dimension: scene.dim(),
            lines: scene
                .lines()
                .iter()
                .map(|l| LineRecord {
                    anchor: l.anchor().as_slice().to_vec(),
                    direction: l.direction().as_slice().to_vec(),
                })
                .collect(),
            triangle: TriangleRecord { d12: tri.d12, d13: tri.d13, d23: tri.d23 },
            options,
        }
    }

    pub fn scene(&self) -> Scene {
        let lines: [Line; 3] = std::array::from_fn(|i| {
            let r = &self.lines[i];
            Line::new(VecN::new(r.anchor.clone()), VecN::new(r.direction.clone())).expect("validated on load")
        });
        Scene::new(lines).expect("validated on load")
    }

    pub fn triangle(&self, allow_degenerate: bool) -> Result<TriangleSpec, FormatError> {
        let t = &self.triangle;
        let r = if allow_degenerate {
            TriangleSpec::new_allow_degenerate(t.d12, t.d13, t.d23)
        } else {
            TriangleSpec::new(t.d12, t.d13, t.d23)
        };
        r.map_err(|e| FormatError::Validation(format!("triangle: {e}")))
    }

    fn validate(&mut self) -> Result<(), FormatError> {
        let bad = |msg: String| Err(FormatError::Validation(msg));
        if self.dimension < 2 {
            return bad(format!("dimension: must be at least 2, got {}", self.dimension));
        }
        if self.lines.len() != 3 {
            return bad(format!("lines: exactly 3 lines required, got {}", self.lines.len()));
        }
        for (i, l) in self.lines.iter_mut().enumerate() {
            for (field, v) in [("anchor", &l.anchor), ("direction", &l.direction)] {
                if v.len() != self.dimension {
                    return bad(format!(
                        "lines[{i}].{field}: dimension mismatch (expected {}, found {})",
                        self.dimension,
                        v.len()
                    ));
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return bad(format!("lines[{i}].{field}: non-finite coordinate"));
                }
            }
            let dir = VecN::new(l.direction.clone());
            match dir.normalized() {
                // unit vectors are kept bit-for-bit so that files round-trip exactly
                Some(_) if (dir.norm() - 1.0).abs() <= 4.0 * f64::EPSILON => {}
                Some(u) => l.direction = u.into_inner(),
                None => return bad(format!("lines[{i}].direction: zero direction")),
            }
        }
        let t = self.triangle;
        for (name, d) in [("d12", t.d12), ("d13", t.d13), ("d23", t.d23)] {
            if !(d.is_finite() && d > 0.0) {
                return bad(format!("triangle.{name}: edge length must be positive, got {d}"));
            }
        }
        if self.options.samples < 2 {
            return bad(format!("options.samples: at least 2 required, got {}", self.options.samples));
        }
        Ok(())
    }
}

/// Parses and validates a scene; directions come back normalised.
pub fn parse_scene_str(text: &str) -> Result<SceneFile, FormatError> {
    let mut file: SceneFile = serde_json::from_str(text).map_err(|e| FormatError::Parse(e.to_string()))?;
    file.validate()?;
    Ok(file)
}

pub fn parse_scene(path: impl AsRef<Path>) -> Result<SceneFile, FormatError> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_scene_str(&text)
}

pub fn serialize_scene(file: &SceneFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("scene serialises");
    s.push('\n');
    s
}

/// Edge residuals `| |p_i - p_j| - d_ij |` (pair order) and point-to-line distances.
pub fn trace_residuals(scene: &Scene, tri: &TriangleSpec, points: &[Point; 3]) -> ([f64; 3], [f64; 3]) {
    let edges = std::array::from_fn(|k| {
        let (i, j) = PAIRS[k];
        (points[i].distance(&points[j]) - tri.lengths()[k]).abs()
    });
    let lines = std::array::from_fn(|i| scene.line(i).distance_to(&points[i]));
    (edges, lines)
}

/// One row of a trace file.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub theta: f64,
    pub points: [Point; 3],
    pub residual_edges: [f64; 3],
    pub residual_lines: [f64; 3],
}

pub fn trace_header(dim: usize) -> String {
    let mut cols = vec!["theta".to_string()];
    for v in 1..=3 {
        for x in 0..dim {
            cols.push(format!("p{v}_x{x}"));
        }
    }
    cols.extend(["res_e12", "res_e13", "res_e23", "res_l1", "res_l2", "res_l3"].map(String::from));
    cols.join(",")
}

/// 17 significant digits: lossless for `f64`.
fn num(out: &mut String, x: f64) {
    write!(out, "{x:.16e}").expect("write to string");
}

pub fn write_trace_csv(scene: &Scene, tri: &TriangleSpec, states: &[MotionState]) -> String {
    let mut out = trace_header(scene.dim());
    out.push('\n');
    for s in states {
        let (edges, lines) = trace_residuals(scene, tri, &s.points);
        num(&mut out, s.theta);
        for x in s.points.iter().flat_map(|p| p.iter()).chain(&edges).chain(&lines) {
            out.push(',');
            num(&mut out, *x);
        }
        out.push('\n');
    }
    out
}

/// Parses a trace and re-validates it against `scene` and `tri`: column
/// count, strictly increasing `theta`, and stored residuals equal to the ones
/// recomputed from the coordinates within `1e-12`.
pub fn read_trace_csv(text: &str, scene: &Scene, tri: &TriangleSpec) -> Result<Vec<TraceRow>, FormatError> {
    let dim = scene.dim();
    let width = 1 + 3 * dim + 6;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| FormatError::Parse("empty trace".into()))?;
    if header != trace_header(dim) {
        return Err(FormatError::Validation(format!("header does not match dimension {dim}")));
    }
    let mut rows: Vec<TraceRow> = Vec::new();
    for (n, line) in lines.enumerate() {
        let row_no = n + 2;
        let vals: Vec<f64> = line
            .split(',')
            .map(|f| f.parse::<f64>().map_err(|e| FormatError::Parse(format!("line {row_no}: {e}"))))
            .collect::<Result<_, _>>()?;
        if vals.len() != width {
            return Err(FormatError::Validation(format!(
                "line {row_no}: expected {width} columns, found {}",
                vals.len()
            )));
        }
        let theta = vals[0];
        if let Some(prev) = rows.last() {
            if theta <= prev.theta {
                return Err(FormatError::Validation(format!("line {row_no}: theta not strictly increasing")));
            }
        }
        let points: [Point; 3] = std::array::from_fn(|i| VecN::new(vals[1 + i * dim..1 + (i + 1) * dim].to_vec()));
        let base = 1 + 3 * dim;
        let residual_edges = [vals[base], vals[base + 1], vals[base + 2]];
        let residual_lines = [vals[base + 3], vals[base + 4], vals[base + 5]];
        let (e, l) = trace_residuals(scene, tri, &points);
        let off = e
            .iter()
            .zip(&residual_edges)
            .chain(l.iter().zip(&residual_lines))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if off > 1e-12 {
            return Err(FormatError::Validation(format!(
                "line {row_no}: stored residuals differ from recomputed by {off:e}"
            )));
        }
        rows.push(TraceRow { theta, points, residual_edges, residual_lines });
    }
    Ok(rows)
}
