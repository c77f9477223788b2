//! Lines, common perpendiculars and scene classification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{Point, VecN};

/// `|cos|` at or above this marks two directions as parallel.
pub const PARALLEL_COS: f64 = 1.0 - 1e-12;
/// Band below [`PARALLEL_COS`] in which a pair is flagged as nearly parallel.
pub const NEAR_PARALLEL_COS: f64 = 1.0 - 1e-9;
/// Absolute incidence tolerance for feet, meets and axes (scaled by [`Scene::scale`]).
pub const INCIDENCE_TOL: f64 = 1e-8;
/// Tolerance on orthogonality of unit directions.
pub const ORTHO_TOL: f64 = 1e-10;

/// Index pairs in the fixed order `12, 13, 23`.
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
pub const PAIR_NAMES: [&str; 3] = ["12", "13", "23"];

/// Position of the pair `{i, j}` in [`PAIRS`].
pub fn pair_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 1) => 0,
        (0, 2) => 1,
        (1, 2) => 2,
        _ => panic!("invalid line pair ({i}, {j})"),
    }
}

/// A line `anchor + t * direction` with unit direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Line {
    anchor: Point,
    direction: VecN,
}

impl Line {
    /// Builds a line, normalizing `direction`.
    pub fn new(anchor: Point, direction: VecN) -> Result<Self> {
        if anchor.dim() != direction.dim() {
            return Err(Error::DimensionMismatch { expected: anchor.dim(), found: direction.dim() });
        }
        if !anchor.is_finite() || !direction.is_finite() {
            return Err(Error::NonFinite);
        }
        let direction = direction.normalized().ok_or(Error::ZeroDirection)?;
        Ok(Line { anchor, direction })
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn direction(&self) -> &VecN {
        &self.direction
    }

    pub fn dim(&self) -> usize {
        self.anchor.dim()
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.anchor.add_scaled(t, &self.direction)
    }

    /// Anchor-frame coordinate of the orthogonal projection of `p`.
    pub fn coordinate_of(&self, p: &Point) -> f64 {
        (p - &self.anchor).dot(&self.direction)
    }

    pub fn distance_to(&self, p: &Point) -> f64 {
        (p - &self.anchor).reject(&self.direction).norm()
    }
}

/// Three lines in a common `R^n`, `n >= 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    lines: [Line; 3],
}

impl Scene {
    pub fn new(lines: [Line; 3]) -> Result<Self> {
        let n = lines[0].dim();
        if n < 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: n });
        }
        for l in &lines[1..] {
            if l.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: l.dim() });
            }
        }
        Ok(Scene { lines })
    }

    pub fn lines(&self) -> &[Line; 3] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &Line {
        &self.lines[i]
    }

    pub fn dim(&self) -> usize {
        self.lines[0].dim()
    }

    /// Length scale used to make incidence tolerances relative: `max(1, |anchor|)`.
    pub fn scale(&self) -> f64 {
        self.lines.iter().map(|l| l.anchor.norm()).fold(1.0, f64::max)
    }

    /// Relabels the lines: line `k` of the result is line `perm[k]` of `self`.
    pub fn permuted(&self, perm: [usize; 3]) -> Scene {
        Scene { lines: perm.map(|i| self.lines[i].clone()) }
    }

    pub fn cosine(&self, i: usize, j: usize) -> f64 {
        self.lines[i].direction.dot(&self.lines[j].direction)
    }
}

/// Invariants of a pair of non-parallel lines `L_i`, `L_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairGeometry {
    /// `v_i . v_j`
    pub c: f64,
    /// Angle between the directions, in `(0, pi)`.
    pub alpha: f64,
    /// Foot of the common perpendicular on `L_i`.
    pub q_i: Point,
    /// Foot of the common perpendicular on `L_j`.
    pub q_j: Point,
    /// Distance between the lines.
    pub dist: f64,
    /// Anchor-frame coordinate of `q_i` on `L_i`.
    pub t_foot_i: f64,
    /// Anchor-frame coordinate of `q_j` on `L_j`.
    pub t_foot_j: f64,
}

impl PairGeometry {
    pub fn sin_alpha(&self) -> f64 {
        (1.0 - self.c * self.c).max(0.0).sqrt()
    }

    /// Same pair seen from the other line.
    pub fn swapped(&self) -> PairGeometry {
        PairGeometry {
            c: self.c,
            alpha: self.alpha,
            q_i: self.q_j.clone(),
            q_j: self.q_i.clone(),
            dist: self.dist,
            t_foot_i: self.t_foot_j,
            t_foot_j: self.t_foot_i,
        }
    }
}

/// Feet and distance of the common perpendicular of two non-parallel lines.
pub fn common_perpendicular(li: &Line, lj: &Line) -> Result<PairGeometry> {
    let (vi, vj) = (&li.direction, &lj.direction);
    let c = vi.dot(vj);
    if c.abs() >= PARALLEL_COS {
        return Err(Error::ParallelLines(0, 1));
    }
    // 1 - c^2 evaluated as |v_j - c v_i|^2 keeps precision for small angles.
    let det = vj.reject(vi).norm_squared();
    let solve = |r: &VecN| {
        let (rvi, rvj) = (r.dot(vi), r.dot(vj));
        let t = (rvj - c * rvi) / det;
        let s = c * t - rvi;
        (s, t)
    };
    let (mut s, mut t) = solve(&(li.anchor() - lj.anchor()));
    // One refinement step on the residual of the normal equations.
    let w = li.point_at(s) - lj.point_at(t);
    let (ds, dt) = solve(&w);
    s += ds;
    t += dt;

    let q_i = li.point_at(s);
    let q_j = lj.point_at(t);
    let dist = q_i.distance(&q_j);
    let alpha = det.sqrt().atan2(c);
    Ok(PairGeometry { c, alpha, q_i, q_j, dist, t_foot_i: s, t_foot_j: t })
}

/// Signed offset `e` with `t_ij = t_ik + e`, where `g_ij` and `g_ik` are the
/// pair geometries of `L_i` (as their first line) with `L_j` and `L_k`.
///
/// Coordinates `t_ij` are measured on `L_i` from the foot `q_ij`.
pub fn foot_offset(g_ij: &PairGeometry, g_ik: &PairGeometry) -> f64 {
    g_ik.t_foot_i - g_ij.t_foot_i
}

/// All three pair geometries, in [`PAIRS`] order.
pub fn pair_geometries(scene: &Scene) -> Result<[PairGeometry; 3]> {
    let g =
        |i: usize, j: usize| common_perpendicular(scene.line(i), scene.line(j)).map_err(|_| Error::ParallelLines(i, j));
    Ok([g(0, 1)?, g(0, 2)?, g(1, 2)?])
}

/// Pair geometry of `(L_i, L_j)` oriented so that `q_i` lies on `L_i`.
pub fn oriented_pair(pairs: &[PairGeometry; 3], i: usize, j: usize) -> PairGeometry {
    let g = &pairs[pair_index(i, j)];
    if i < j {
        g.clone()
    } else {
        g.swapped()
    }
}

/// Foot of the common perpendicular on `L_i` towards `L_j`.
pub fn foot(pairs: &[PairGeometry; 3], i: usize, j: usize) -> &Point {
    let g = &pairs[pair_index(i, j)];
    if i < j {
        &g.q_i
    } else {
        &g.q_j
    }
}

/// Anchor-frame coordinate of the foot on `L_i` towards `L_j`.
pub fn foot_coordinate(pairs: &[PairGeometry; 3], i: usize, j: usize) -> f64 {
    let g = &pairs[pair_index(i, j)];
    if i < j {
        g.t_foot_i
    } else {
        g.t_foot_j
    }
}

/// Geometric type of a three-line scene.
///
/// A planar concurrent scene also has a perpendicular axis (through the meet,
/// normal to the plane) once embedded in `R^3`; it is reported as
/// `ConcurrentPlanar` all the same.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum SceneClass {
    AllParallel,
    ConcurrentPlanar {
        meet: Point,
    },
    CommonPerpendicularAxis {
        axis: Line,
    },
    /// Directions span a plane and each line has a single foot, but the feet
    /// are not collinear (only possible in `R^4` and up). Projecting along
    /// `normal` produces a `CommonPerpendicularAxis` scene.
    AxisAfterProjection {
        normal: VecN,
    },
    Generic,
}

impl SceneClass {
    pub fn name(&self) -> &'static str {
        match self {
            SceneClass::AllParallel => "AllParallel",
            SceneClass::ConcurrentPlanar { .. } => "ConcurrentPlanar",
            SceneClass::CommonPerpendicularAxis { .. } => "CommonPerpendicularAxis",
            SceneClass::AxisAfterProjection { .. } => "AxisAfterProjection",
            SceneClass::Generic => "Generic",
        }
    }

    /// Whether the scene can carry a hypocycloid-type motion at all.
    pub fn admits_rolling_motion(&self) -> bool {
        matches!(
            self,
            SceneClass::ConcurrentPlanar { .. }
                | SceneClass::CommonPerpendicularAxis { .. }
                | SceneClass::AxisAfterProjection { .. }
        )
    }
}

/// Result of [`classify_scene`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub class: SceneClass,
    pub warnings: Vec<String>,
}

/// Sorts a scene into parallel / concurrent / axis / generic.
pub fn classify_scene(scene: &Scene) -> Result<Classification> {
    let tol = INCIDENCE_TOL * scene.scale();
    let mut warnings = Vec::new();
    let mut parallel = [false; 3];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let c = scene.cosine(i, j).abs();
        parallel[k] = c >= PARALLEL_COS;
        if parallel[k] {
            let li = scene.line(i);
            if li.distance_to(scene.line(j).anchor()) <= tol {
                return Err(Error::DegenerateScene(format!("lines {} and {} coincide", i + 1, j + 1)));
            }
        } else if c >= NEAR_PARALLEL_COS {
            warnings.push(format!("lines {} and {} are nearly parallel (|c| = {c})", i + 1, j + 1));
        }
    }
    if parallel.iter().all(|&p| p) {
        return Ok(Classification { class: SceneClass::AllParallel, warnings });
    }
    if parallel.iter().any(|&p| p) {
        warnings.push("exactly one pair of lines is parallel".into());
        return Ok(Classification { class: SceneClass::Generic, warnings });
    }

    let pairs = pair_geometries(scene)?;
    let v: Vec<&VecN> = scene.lines().iter().map(Line::direction).collect();
    let e2 = v[1].reject(v[0]).normalized().ok_or(Error::ParallelLines(0, 1))?;
    let out_of_plane = v[2].reject(v[0]).reject(&e2).norm();
    let single_foot = (0..3).all(|i| {
        let (j, k) = others(i);
        foot(&pairs, i, j).distance(foot(&pairs, i, k)) <= tol
    });
    if out_of_plane >= ORTHO_TOL || !single_foot {
        return Ok(Classification { class: SceneClass::Generic, warnings });
    }

    let feet: Vec<&Point> = (0..3).map(|i| foot(&pairs, i, others(i).0)).collect();
    if pairs.iter().all(|g| g.dist <= tol) {
        let meet = (feet[0] + feet[1] + feet[2]) * (1.0 / 3.0);
        return Ok(Classification { class: SceneClass::ConcurrentPlanar { meet }, warnings });
    }

    // Axis through the two feet farthest apart; the third must lie on it.
    let (i, j) = PAIRS
        .iter()
        .copied()
        .max_by(|&(a, b), &(c, d)| feet[a].distance(feet[b]).total_cmp(&feet[c].distance(feet[d])))
        .expect("three pairs");
    let k = 3 - i - j;
    let u = (feet[j] - feet[i]).normalized().expect("feet are separated");
    let off_axis = (feet[k] - feet[i]).reject(&u);
    if off_axis.norm() <= tol {
        let axis = Line::new(feet[i].clone(), u)?;
        Ok(Classification { class: SceneClass::CommonPerpendicularAxis { axis }, warnings })
    } else {
        let normal = off_axis.normalized().expect("non-zero offset");
        Ok(Classification { class: SceneClass::AxisAfterProjection { normal }, warnings })
    }
}

/// The two indices other than `i`, ascending.
pub fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Orthogonal projection of every line along the unit normal `w`.
///
/// Directions are untouched (they are orthogonal to `w`); anchors lose their
/// `w` component. The ambient dimension is kept.
pub fn project_out(lines: &[Line], w: &VecN) -> Result<Vec<Line>> {
    let w = w.normalized().ok_or(Error::ZeroDirection)?;
    let worst = lines.iter().map(|l| l.direction.dot(&w).abs()).fold(0.0, f64::max);
    if worst > ORTHO_TOL {
        return Err(Error::NotPerpendicular(worst));
    }
    lines.iter().map(|l| Line::new(l.anchor.reject(&w), l.direction.reject(&w))).collect()
}

/// An orthonormal 2-frame `origin + x e1 + y e2` inside `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneFrame {
    pub origin: Point,
    pub e1: VecN,
    pub e2: VecN,
}

impl PlaneFrame {
    /// Frame of the plane spanned by `d1`, `d2` through `origin`.
    ///
    /// In `R^2` this is always the standard frame (shifted), so planar
    /// orientations keep their usual sense.
    pub fn spanned_by(origin: Point, d1: &VecN, d2: &VecN) -> Result<Self> {
        if origin.dim() == 2 {
            return Ok(PlaneFrame { origin, e1: VecN::unit(2, 0), e2: VecN::unit(2, 1) });
        }
        let e1 = d1.normalized().ok_or(Error::ZeroDirection)?;
        let e2 = d2.reject(&e1).normalized().ok_or(Error::ParallelLines(0, 1))?;
        Ok(PlaneFrame { origin, e1, e2 })
    }

    pub fn coords(&self, p: &Point) -> [f64; 2] {
        let d = p - &self.origin;
        [d.dot(&self.e1), d.dot(&self.e2)]
    }

    /// In-plane coordinates of a direction vector.
    pub fn direction_coords(&self, v: &VecN) -> [f64; 2] {
        [v.dot(&self.e1), v.dot(&self.e2)]
    }

    pub fn embed(&self, xy: [f64; 2]) -> Point {
        self.origin.add_scaled(xy[0], &self.e1).add_scaled(xy[1], &self.e2)
    }
}
