//! Continuous motion of a rigid triangle with one vertex on each line.
//!
//! Outside the all-parallel case a motion exists only when the three
//! directions span a plane, each line carries a single common-perpendicular
//! foot, and the in-plane edge lengths `sqrt(d_ij^2 - D_ij^2)` are
//! proportional to `sin(alpha_ij)`. The vertices then sit on a circle of
//! radius `r` rolling inside a fixed circle of radius `2r` (a hypocycloid
//! straight-line drawer), and each vertex sweeps an interval of half-length
//! `2r` centred at its foot.
//!
//! The ratio test is the derived converse of the classification and is
//! validated numerically against sampled motions in the test suite.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    classify_scene, foot, foot_coordinate, pair_geometries, PairGeometry, PlaneFrame, Scene, SceneClass, PAIRS,
    PAIR_NAMES,
};
use crate::pairwise::{ellipse_params, range_interval, segment_position, EllipseParams, RangeInterval, Which};
use crate::triangle::TriangleSpec;
use crate::vector::{Point, VecN};

/// Default relative tolerance for feasibility and trace checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Ratio spreads below this (but above the tolerance) earn a near-feasible warning.
const NEAR_FEASIBLE: f64 = 1e-6;
/// Relative in-plane miss above which the carried vertex is off its line.
const CARRY_TOL: f64 = 1e-8;

/// Orientation of the triangle `(p1, p2, p3)` in the motion plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Side {
    /// `p3` to the left of `p1 -> p2`.
    Positive,
    Negative,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Positive => 1.0,
            Side::Negative => -1.0,
        }
    }

    pub fn from_sign(s: f64) -> Side {
        if s >= 0.0 {
            Side::Positive
        } else {
            Side::Negative
        }
    }
}

impl TryFrom<i8> for Side {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Side::Positive),
            -1 => Ok(Side::Negative),
            _ => Err(format!("side must be +1 or -1, got {v}")),
        }
    }
}

impl From<Side> for i8 {
    fn from(s: Side) -> i8 {
        match s {
            Side::Positive => 1,
            Side::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    FeasibleParallel,
    FeasibleMechanism,
    Infeasible,
}

/// Outcome of [`feasibility`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub verdict: Verdict,
    pub scene_class: SceneClass,
    /// `sqrt(d_ij^2 - D_ij^2) / sin(alpha_ij)` in pair order, when every pair admits it.
    pub ratios: Option<[f64; 3]>,
    /// Swept interval per line (mechanism verdict only).
    pub ranges: Option<[RangeInterval; 3]>,
    /// Orientation the motion runs in (mechanism verdict only).
    pub side: Option<Side>,
    pub reason: Option<String>,
    pub warnings: Vec<String>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.verdict != Verdict::Infeasible
    }
}

/// Decides whether the triangle can move continuously on the three lines.
pub fn feasibility(scene: &Scene, tri: &TriangleSpec) -> Result<FeasibilityReport> {
    feasibility_with_tolerance(scene, tri, DEFAULT_TOLERANCE)
}

pub fn feasibility_with_tolerance(scene: &Scene, tri: &TriangleSpec, tol: f64) -> Result<FeasibilityReport> {
    let classification = classify_scene(scene)?;
    let mut report = FeasibilityReport {
        verdict: Verdict::Infeasible,
        scene_class: classification.class.clone(),
        ratios: None,
        ranges: None,
        side: None,
        reason: None,
        warnings: classification.warnings,
    };
    match &classification.class {
        SceneClass::AllParallel => match parallel_embedding(scene, tri, tol) {
            Some(_) => report.verdict = Verdict::FeasibleParallel,
            None => report.reason = Some("the triangle does not fit across the parallel lines".into()),
        },
        SceneClass::Generic => {
            report.reason = Some("lines are neither parallel nor meet a common perpendicular axis".into());
        }
        _ => {
            let pairs = pair_geometries(scene)?;
            let mut ratios = [0.0; 3];
            for (k, g) in pairs.iter().enumerate() {
                match ellipse_params(tri.lengths()[k], g) {
                    Ok(e) => ratios[k] = e.d_eff / g.sin_alpha(),
                    Err(_) => {
                        report.reason = Some(format!(
                            "edge {} (length {}) does not exceed the line distance {}",
                            PAIR_NAMES[k],
                            tri.lengths()[k],
                            g.dist
                        ));
                        return Ok(report);
                    }
                }
            }
            report.ratios = Some(ratios);
            let hi = ratios.iter().copied().fold(f64::MIN, f64::max);
            let lo = ratios.iter().copied().fold(f64::MAX, f64::min);
            let spread = (hi - lo) / hi;
            if spread <= tol {
                let ellipses = effective_ellipses(&pairs, tri)?;
                report.verdict = Verdict::FeasibleMechanism;
                report.ranges = Some([
                    range_interval(&ellipses[0], &pairs[0], Which::I),
                    range_interval(&ellipses[2], &pairs[2], Which::I),
                    range_interval(&ellipses[1], &pairs[1], Which::J),
                ]);
                let frame = motion_frame(scene, &pairs)?;
                report.side = Some(rolling_side(&planar_directions(scene, &frame), hi));
            } else {
                if spread <= NEAR_FEASIBLE {
                    report.warnings.push(format!("near-feasible: ratio spread {spread:e} exceeds tolerance {tol:e}"));
                }
                report.reason =
                    Some(format!("in-plane edge lengths are not proportional to sin(alpha): ratios {:?}", ratios));
            }
        }
    }
    Ok(report)
}

fn effective_ellipses(pairs: &[PairGeometry; 3], tri: &TriangleSpec) -> Result<[EllipseParams; 3]> {
    let mut out = [EllipseParams { a: 0.0, b: 0.0, c: 0.0, d_eff: 0.0 }; 3];
    for k in 0..3 {
        let length = tri.lengths()[k];
        out[k] = ellipse_params(length, &pairs[k]).map_err(|e| match e {
            Error::EdgeTooShort { gap, .. } => Error::EdgeTooShort { pair: PAIR_NAMES[k], length, gap },
            e => e,
        })?;
    }
    Ok(out)
}

/// Plane of the motion: through the foot on `L1`, spanned by `v1`, `v2`.
fn motion_frame(scene: &Scene, pairs: &[PairGeometry; 3]) -> Result<PlaneFrame> {
    PlaneFrame::spanned_by(pairs[0].q_i.clone(), scene.line(0).direction(), scene.line(1).direction())
}

fn planar_directions(scene: &Scene, frame: &PlaneFrame) -> [[f64; 2]; 3] {
    std::array::from_fn(|i| {
        let [x, y] = frame.direction_coords(scene.line(i).direction());
        let n = x.hypot(y);
        [x / n, y / n]
    })
}

/// Orientation of the vertices on any rolling circle of outer radius `big_r`.
fn rolling_side(dirs: &[[f64; 2]; 3], big_r: f64) -> Side {
    let phases = dirs.map(|d| d[1].atan2(d[0]));
    // Pick a circle position where no vertex sits at the meet.
    let psi = (0..12)
        .map(|k| phases[0] + 0.05 + k as f64 * TAU / 12.0)
        .max_by(|&a, &b| {
            let m = |psi: f64| phases.iter().map(|p| (psi - p).cos().abs()).fold(f64::MAX, f64::min);
            m(a).total_cmp(&m(b))
        })
        .expect("non-empty");
    let pts = phases.map(|p| {
        let t = big_r * (psi - p).cos();
        [t * p.cos(), t * p.sin()]
    });
    Side::from_sign(cross(sub(pts[1], pts[0]), sub(pts[2], pts[0])))
}

/// Offsets along the common direction realising the triangle on parallel
/// lines, if any.
fn parallel_embedding(scene: &Scene, tri: &TriangleSpec, tol: f64) -> Option<[f64; 3]> {
    let v = scene.line(0).direction();
    let along: Vec<f64> = scene.lines().iter().map(|l| l.anchor().dot(v)).collect();
    let across: Vec<Point> = scene.lines().iter().map(|l| l.anchor().reject(v)).collect();
    let slack = tol * tri.scale();
    let mut delta = [0.0; 3];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let gap = across[i].distance(&across[j]);
        let d = tri.lengths()[k];
        if d < gap - slack {
            return None;
        }
        delta[k] = ((d - gap) * (d + gap)).max(0.0).sqrt();
    }
    // z1 = 0, z2 = +-delta12, z3 = +-delta13 and |z3 - z2| must be delta23.
    for s12 in [1.0, -1.0] {
        for s13 in [1.0, -1.0] {
            let z = [0.0, s12 * delta[0], s13 * delta[1]];
            if ((z[2] - z[1]).abs() - delta[2]).abs() <= slack {
                return Some(std::array::from_fn(|i| z[i] - along[i]));
            }
        }
    }
    None
}

/// A placement of the moving triangle at parameter `theta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MotionState {
    pub theta: f64,
    pub points: [Point; 3],
    /// Anchor-frame coordinate of each vertex on its line.
    pub coords: [f64; 3],
    /// Foot-relative coordinates `t12, t13, t21, t23, t31, t32`.
    pub t: [f64; 6],
}

impl MotionState {
    /// `t_ij` measured on line `i` from its foot towards line `j`.
    pub fn t_ij(&self, i: usize, j: usize) -> f64 {
        let slot = match (i, j) {
            (0, 1) => 0,
            (0, 2) => 1,
            (1, 0) => 2,
            (1, 2) => 3,
            (2, 0) => 4,
            (2, 1) => 5,
            _ => panic!("invalid pair ({i}, {j})"),
        };
        self.t[slot]
    }
}

#[derive(Debug, Clone)]
struct Rolling {
    pairs: [PairGeometry; 3],
    ellipse12: EllipseParams,
    d_eff: [f64; 3],
    frame: PlaneFrame,
    dirs: [[f64; 2]; 3],
    side: Side,
    radius: f64,
}

#[derive(Debug, Clone)]
struct Translation {
    base: [f64; 3],
    /// `+1` or `-1`: orientation of each direction relative to `v1`.
    orient: [f64; 3],
    span: f64,
    frame: Option<PlaneFrame>,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
enum Motion {
    Rolling(Rolling),
    Translation(Translation),
}

/// A feasible scene and triangle, ready to generate states.
#[derive(Debug, Clone)]
pub struct Mechanism {
    scene: Scene,
    tri: TriangleSpec,
    report: FeasibilityReport,
    motion: Motion,
}

impl Mechanism {
    /// Builds the motion; `side = None` selects the orientation the motion
    /// actually runs in.
    pub fn new(scene: &Scene, tri: &TriangleSpec, side: Option<Side>) -> Result<Self> {
        Self::with_tolerance(scene, tri, side, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(scene: &Scene, tri: &TriangleSpec, side: Option<Side>, tol: f64) -> Result<Self> {
        let report = feasibility_with_tolerance(scene, tri, tol)?;
        match report.verdict {
            Verdict::Infeasible => Err(Error::NotFeasible(report.reason.clone().unwrap_or_default())),
            Verdict::FeasibleMechanism => {
                let rolling = Rolling::build(scene, tri, side.or(report.side))?;
                Ok(Mechanism { scene: scene.clone(), tri: *tri, report, motion: Motion::Rolling(rolling) })
            }
            Verdict::FeasibleParallel => {
                let base = parallel_embedding(scene, tri, tol).ok_or_else(|| {
                    Error::InternalInconsistency("parallel embedding vanished after feasibility".into())
                })?;
                let v1 = scene.line(0).direction();
                let orient = std::array::from_fn(|i| scene.line(i).direction().dot(v1).signum());
                let base = std::array::from_fn(|i| base[i] * orient[i]);
                let frame = parallel_frame(scene);
                let translation = Translation { base, orient, span: tri.scale(), frame };
                Ok(Mechanism { scene: scene.clone(), tri: *tri, report, motion: Motion::Translation(translation) })
            }
        }
    }

    /// Rolling-type motion without the feasibility gate. States of an
    /// infeasible scene fail with [`Error::NoThirdVertex`] at generic `theta`.
    pub fn unchecked(scene: &Scene, tri: &TriangleSpec, side: Side) -> Result<Self> {
        let rolling = Rolling::build(scene, tri, Some(side))?;
        let report = feasibility(scene, tri)?;
        Ok(Mechanism { scene: scene.clone(), tri: *tri, report, motion: Motion::Rolling(rolling) })
    }

    pub fn scene(&self) -> &Scene {
        &self.scene
    }

    pub fn triangle(&self) -> &TriangleSpec {
        &self.tri
    }

    pub fn report(&self) -> &FeasibilityReport {
        &self.report
    }

    pub fn is_rolling(&self) -> bool {
        matches!(self.motion, Motion::Rolling(_))
    }

    pub fn side(&self) -> Option<Side> {
        match &self.motion {
            Motion::Rolling(r) => Some(r.side),
            Motion::Translation(_) => None,
        }
    }

    /// Radius `R` of the fixed circle (half-length of every range).
    pub fn outer_radius(&self) -> Option<f64> {
        match &self.motion {
            Motion::Rolling(r) => Some(r.radius),
            Motion::Translation(_) => None,
        }
    }

    /// Plane of the motion, when the motion is planar.
    pub fn frame(&self) -> Option<&PlaneFrame> {
        match &self.motion {
            Motion::Rolling(r) => Some(&r.frame),
            Motion::Translation(t) => t.frame.as_ref(),
        }
    }

    /// Unit direction of each line in [`Self::frame`] coordinates.
    pub fn planar_directions(&self) -> Option<[[f64; 2]; 3]> {
        match &self.motion {
            Motion::Rolling(r) => Some(r.dirs),
            Motion::Translation(t) => t.frame.as_ref().map(|f| planar_directions(&self.scene, f)),
        }
    }

    /// Anchor-frame interval swept on each line.
    pub fn ranges(&self) -> [RangeInterval; 3] {
        match &self.motion {
            Motion::Rolling(_) => self.report.ranges.expect("mechanism report carries ranges"),
            Motion::Translation(t) => t.base.map(|c| RangeInterval { center_t: c, half_length: t.span }),
        }
    }

    pub fn state(&self, theta: f64) -> Result<MotionState> {
        match &self.motion {
            Motion::Rolling(r) => r.state(&self.scene, theta),
            Motion::Translation(t) => Ok(t.state(&self.scene, theta)),
        }
    }

    /// `n` states on the uniform grid `2 pi k / n`.
    pub fn trace(&self, n: usize) -> Result<Vec<MotionState>> {
        if n < 2 {
            return Err(Error::InvalidSampleCount(n));
        }
        (0..n).map(|k| self.state(TAU * k as f64 / n as f64)).collect()
    }
}

impl Rolling {
    fn build(scene: &Scene, tri: &TriangleSpec, side: Option<Side>) -> Result<Self> {
        let pairs = pair_geometries(scene)?;
        let ellipses = effective_ellipses(&pairs, tri)?;
        let frame = motion_frame(scene, &pairs)?;
        let dirs = planar_directions(scene, &frame);
        let radius = ellipses[0].d_eff / pairs[0].sin_alpha();
        let side = side.unwrap_or_else(|| rolling_side(&dirs, radius));
        Ok(Rolling { ellipse12: ellipses[0], d_eff: ellipses.map(|e| e.d_eff), pairs, frame, dirs, side, radius })
    }

    fn state(&self, scene: &Scene, theta: f64) -> Result<MotionState> {
        let (t1, t2) = segment_position(theta, &self.ellipse12);
        let p1 = scale2(self.dirs[0], t1);
        let p2 = scale2(self.dirs[1], t2);
        let p3 = match carry_third_vertex_planar(p1, p2, self.d_eff, self.side) {
            Ok(p) => p,
            Err(Error::AmbiguousSide) => tangent_point(p1, p2, self.d_eff),
            Err(e) => return Err(e),
        };
        let t3 = dot2(p3, self.dirs[2]);
        let miss = cross(self.dirs[2], p3).abs();
        if miss > CARRY_TOL * self.radius.max(1.0) {
            return Err(Error::NoThirdVertex(miss));
        }
        let pairs = &self.pairs;
        let coords = [pairs[0].t_foot_i + t1, pairs[0].t_foot_j + t2, foot_coordinate(pairs, 2, 0) + t3];
        let points = [
            foot(pairs, 0, 1).add_scaled(t1, scene.line(0).direction()),
            foot(pairs, 1, 0).add_scaled(t2, scene.line(1).direction()),
            foot(pairs, 2, 0).add_scaled(t3, scene.line(2).direction()),
        ];
        Ok(MotionState { theta, points, t: six_coordinates(pairs, &coords), coords })
    }
}

impl Translation {
    fn state(&self, scene: &Scene, theta: f64) -> MotionState {
        let shift = self.span * theta.sin();
        let coords: [f64; 3] = std::array::from_fn(|i| self.base[i] + self.orient[i] * shift);
        let points = std::array::from_fn(|i| scene.line(i).point_at(coords[i]));
        // No feet on parallel lines: report anchor coordinates in every slot.
        let t = [coords[0], coords[0], coords[1], coords[1], coords[2], coords[2]];
        MotionState { theta, points, coords, t }
    }
}

/// Plane containing all three parallel lines, if there is one.
fn parallel_frame(scene: &Scene) -> Option<PlaneFrame> {
    let v = scene.line(0).direction();
    let origin = scene.line(0).anchor().clone();
    if scene.dim() == 2 {
        return PlaneFrame::spanned_by(origin, v, v).ok();
    }
    let offsets: Vec<VecN> = scene.lines()[1..].iter().map(|l| (l.anchor() - &origin).reject(v)).collect();
    let across = offsets.iter().max_by(|a, b| a.norm().total_cmp(&b.norm()))?.normalized()?;
    let tol = crate::geom::INCIDENCE_TOL * scene.scale();
    if offsets.iter().any(|o| o.reject(&across).norm() > tol) {
        return None;
    }
    Some(PlaneFrame { origin, e1: v.clone(), e2: across })
}

fn six_coordinates(pairs: &[PairGeometry; 3], coords: &[f64; 3]) -> [f64; 6] {
    let t = |i: usize, j: usize| coords[i] - foot_coordinate(pairs, i, j);
    [t(0, 1), t(0, 2), t(1, 0), t(1, 2), t(2, 0), t(2, 1)]
}

/// Third vertex of a planar triangle with `|p3 - p1| = d13`, `|p3 - p2| = d23`.
///
/// `lengths` are `[d12, d13, d23]`; `side` picks the candidate to the left
/// (`Positive`) or right of `p1 -> p2`.
pub fn carry_third_vertex_planar(p1: [f64; 2], p2: [f64; 2], lengths: [f64; 3], side: Side) -> Result<[f64; 2]> {
    let [d12, d13, d23] = lengths;
    let base = sub(p2, p1);
    let len = base[0].hypot(base[1]);
    if (len - d12).abs() > 1e-9 * d12.max(1.0) {
        return Err(Error::InternalInconsistency(format!("|p1 - p2| = {len} but d12 = {d12}")));
    }
    let e = [base[0] / len, base[1] / len];
    let x = (d13 * d13 - d23 * d23 + len * len) / (2.0 * len);
    let h2 = d13 * d13 - x * x;
    let scale = d13.max(d23).max(len);
    if h2 < -1e-9 * scale * scale {
        return Err(Error::NoThirdVertex(-h2));
    }
    let h = h2.max(0.0).sqrt();
    if h <= 1e-12 * scale {
        return Err(Error::AmbiguousSide);
    }
    let perp = [-e[1], e[0]];
    let s = side.sign() * h;
    Ok([p1[0] + x * e[0] + s * perp[0], p1[1] + x * e[1] + s * perp[1]])
}

fn tangent_point(p1: [f64; 2], p2: [f64; 2], lengths: [f64; 3]) -> [f64; 2] {
    let [d12, d13, d23] = lengths;
    let x = (d13 * d13 - d23 * d23 + d12 * d12) / (2.0 * d12);
    let base = sub(p2, p1);
    [p1[0] + x * base[0] / d12, p1[1] + x * base[1] / d12]
}

/// Third vertex in `R^n`, carried rigidly inside `frame` from `p1`, `p2`.
pub fn carry_third_vertex(p1: &Point, p2: &Point, tri: &TriangleSpec, frame: &PlaneFrame, side: Side) -> Result<Point> {
    let p3 = carry_third_vertex_planar(frame.coords(p1), frame.coords(p2), tri.lengths(), side)?;
    Ok(frame.embed(p3))
}

/// Observed extent `(min, max)` of each vertex's anchor coordinate along a
/// trace, refined around the extreme samples by golden-section search on
/// the motion itself.
pub fn trace_extents(mech: &Mechanism, trace: &[MotionState]) -> Result<[(f64, f64); 3]> {
    if trace.len() < 2 {
        return Err(Error::InvalidSampleCount(trace.len()));
    }
    let n = trace.len();
    let step = TAU / n as f64;
    let mut out = [(0.0, 0.0); 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let coord = |theta: f64| mech.state(theta).map(|s| s.coords[i]);
        let (kmin, kmax) = extreme_indices(trace, i);
        let hi = golden_max(|th| coord(th).unwrap_or(f64::MIN), trace[kmax].theta - step, trace[kmax].theta + step);
        let lo = -golden_max(
            |th| coord(th).map(|c| -c).unwrap_or(f64::MIN),
            trace[kmin].theta - step,
            trace[kmin].theta + step,
        );
        *slot = (lo.min(trace[kmin].coords[i]), hi.max(trace[kmax].coords[i]));
    }
    Ok(out)
}

fn extreme_indices(trace: &[MotionState], i: usize) -> (usize, usize) {
    let mut kmin = 0;
    let mut kmax = 0;
    for (k, s) in trace.iter().enumerate() {
        if s.coords[i] < trace[kmin].coords[i] {
            kmin = k;
        }
        if s.coords[i] > trace[kmax].coords[i] {
            kmax = k;
        }
    }
    (kmin, kmax)
}

/// Maximum of a unimodal `f` on `[a, b]`.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}

/// Concyclicity of the vertices along a planar trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircumcircleReport {
    /// Point the moving circle always passes through (the meet, or the foot
    /// in the motion plane).
    pub center: Point,
    /// Mean circumradius over the trace.
    pub radius: f64,
    /// Largest deviation of a per-state circumradius, or of the distance from
    /// the per-state circumcentre to `center`, from `radius`.
    pub max_dev: f64,
}

/// Checks that at every state the three vertices lie on a circle of one
/// fixed radius passing through the meet.
pub fn circumcircle_check(scene: &Scene, trace: &[MotionState]) -> Result<CircumcircleReport> {
    let class = classify_scene(scene)?.class;
    match class {
        SceneClass::Generic => return Err(Error::NotPlanarizable),
        SceneClass::AllParallel => return Err(Error::NotApplicable("lines are parallel".into())),
        _ => {}
    }
    if trace.is_empty() {
        return Err(Error::InvalidSampleCount(0));
    }
    let pairs = pair_geometries(scene)?;
    let frame = motion_frame(scene, &pairs)?;
    let mut circles = Vec::with_capacity(trace.len());
    for s in trace {
        let [a, b, c] = [0, 1, 2].map(|i| frame.coords(&s.points[i]));
        circles.push(
            circumcircle(a, b, c)
                .ok_or_else(|| Error::NotApplicable(format!("collinear vertices at theta = {}", s.theta)))?,
        );
    }
    let radius = circles.iter().map(|c| c.1).sum::<f64>() / circles.len() as f64;
    let max_dev =
        circles.iter().map(|(c, rho)| (rho - radius).abs().max((c[0].hypot(c[1]) - radius).abs())).fold(0.0, f64::max);
    Ok(CircumcircleReport { center: frame.origin.clone(), radius, max_dev })
}

/// Centre and radius of the circle through three planar points.
pub fn circumcircle(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Option<([f64; 2], f64)> {
    let ab = sub(b, a);
    let ac = sub(c, a);
    let d = 2.0 * cross(ab, ac);
    let scale = dot2(ab, ab).max(dot2(ac, ac));
    if d.abs() <= 1e-14 * scale {
        return None;
    }
    let (nb, nc) = (dot2(ab, ab), dot2(ac, ac));
    let ux = (ac[1] * nb - ab[1] * nc) / d;
    let uy = (ab[0] * nc - ac[0] * nb) / d;
    Some(([a[0] + ux, a[1] + uy], ux.hypot(uy)))
}

pub(crate) fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub(crate) fn dot2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn scale2(a: [f64; 2], s: f64) -> [f64; 2] {
    [a[0] * s, a[1] * s]
}
