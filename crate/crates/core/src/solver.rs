//! Static placements of the triangle on three lines.
//!
//! The base edge (lines 1 and 2) is parametrised by the ellipse angle
//! `theta`. Subtracting the 13 and 23 edge equations cancels the quadratic
//! term in the third coordinate `T3`, leaving `A(theta) T3 + B(theta) = 0`.
//! Substituting `T3 = -B/A` into the 13 equation and clearing the
//! denominator gives
//!
//! ```text
//! G(theta) = A^2 (|X1|^2 - d13^2) + 2 A B (v3 . X1) + B^2,   X1 = p1 - a3,
//! ```
//!
//! a trigonometric polynomial of degree four, so at most eight placements.
//! `G` vanishes identically exactly when the 12 and 13 equations already
//! imply the 23 equation, which is the continuous-motion case.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{classify_scene, common_perpendicular, Scene, SceneClass, PAIRS, PAIR_NAMES, PARALLEL_COS};
use crate::mechanism::{feasibility_with_tolerance, Mechanism, Verdict, DEFAULT_TOLERANCE};
use crate::pairwise::{ellipse_params, segment_position, EllipseParams};
use crate::triangle::TriangleSpec;
use crate::vector::Point;

/// Bezout bound for three quadrics.
pub const BEZOUT_BOUND: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub grid_size: usize,
    pub newton_iters: usize,
    /// Defaults to `1e-6 * scale`.
    pub dedup_radius: Option<f64>,
    /// Relative tolerance for residuals, degeneracy and feasibility.
    pub tolerance: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { grid_size: 4096, newton_iters: 50, dedup_radius: None, tolerance: DEFAULT_TOLERANCE }
    }
}

/// One static placement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Configuration {
    /// Ellipse angle of the base edge that produced it.
    pub theta: f64,
    /// Anchor-frame coordinate of each vertex on its line.
    pub coords: [f64; 3],
    pub points: [Point; 3],
    /// Largest edge-length violation `| |p_i - p_j| - d_ij |`.
    pub residual: f64,
    /// Found at a tangential (double) root.
    pub tangent: bool,
}

#[derive(Debug, Clone)]
pub enum ConfigurationSet {
    Finite(Vec<Configuration>),
    /// One-parameter family; the mechanism generates witness states.
    Continuum(Box<Mechanism>),
}

impl ConfigurationSet {
    pub fn count(&self) -> Option<usize> {
        match self {
            ConfigurationSet::Finite(c) => Some(c.len()),
            ConfigurationSet::Continuum(_) => None,
        }
    }

    pub fn configs(&self) -> &[Configuration] {
        match self {
            ConfigurationSet::Finite(c) => c,
            ConfigurationSet::Continuum(_) => &[],
        }
    }
}

/// Result of eliminating the third coordinate at one `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elimination {
    /// `T3 = -B/A` (anchor frame) and the normalised residual `G / scale^4`.
    Isolated { t3: f64, residual: f64 },
    /// The difference equation adds nothing: `G` cancels identically here.
    Degenerate,
    /// `A` vanishes while `B` does not: no placement at this `theta`.
    Pole,
}

/// Eliminates the third coordinate at `theta` on the base edge of lines 1, 2.
pub fn eliminate_t3(theta: f64, scene: &Scene, tri: &TriangleSpec) -> Result<Elimination> {
    Ok(Eliminator::new(scene, tri, DEFAULT_TOLERANCE)?.eliminate(theta))
}

/// Scalar form of the elimination for one labelling of the lines.
#[derive(Debug, Clone)]
struct Eliminator {
    ellipse: EllipseParams,
    foot1: f64,
    foot2: f64,
    /// |q1 - a3|^2, v1.(q1 - a3), v3.(q1 - a3), likewise for q2
    n1: f64,
    v1w1: f64,
    v3w1: f64,
    n2: f64,
    v2w2: f64,
    v3w2: f64,
    c13: f64,
    c23: f64,
    d13: f64,
    d23: f64,
    scale: f64,
    degenerate_rel: f64,
}

struct Terms {
    a: f64,
    b: f64,
    g: f64,
    magnitude: f64,
    x1_sq: f64,
    v3x1: f64,
}

impl Eliminator {
    fn new(scene: &Scene, tri: &TriangleSpec, tol: f64) -> Result<Self> {
        let (l1, l2, l3) = (scene.line(0), scene.line(1), scene.line(2));
        let g12 = common_perpendicular(l1, l2).map_err(|_| Error::ParallelLines(0, 1))?;
        let ellipse = ellipse_params(tri.d12, &g12).map_err(|e| match e {
            Error::EdgeTooShort { length, gap, .. } => Error::EdgeTooShort { pair: "12", length, gap },
            e => e,
        })?;
        let w1 = &g12.q_i - l3.anchor();
        let w2 = &g12.q_j - l3.anchor();
        let (v1, v2, v3) = (l1.direction(), l2.direction(), l3.direction());
        Ok(Eliminator {
            ellipse,
            foot1: g12.t_foot_i,
            foot2: g12.t_foot_j,
            n1: w1.norm_squared(),
            v1w1: v1.dot(&w1),
            v3w1: v3.dot(&w1),
            n2: w2.norm_squared(),
            v2w2: v2.dot(&w2),
            v3w2: v3.dot(&w2),
            c13: v1.dot(v3),
            c23: v2.dot(v3),
            d13: tri.d13,
            d23: tri.d23,
            scale: tri.scale().max(scene.scale()),
            degenerate_rel: tol,
        })
    }

    fn terms(&self, theta: f64) -> Terms {
        let (t1, t2) = segment_position(theta, &self.ellipse);
        let x1_sq = self.n1 + 2.0 * t1 * self.v1w1 + t1 * t1;
        let x2_sq = self.n2 + 2.0 * t2 * self.v2w2 + t2 * t2;
        let v3x1 = self.v3w1 + t1 * self.c13;
        let v3x2 = self.v3w2 + t2 * self.c23;
        let a = -2.0 * (v3x1 - v3x2);
        let b = (x1_sq - self.d13 * self.d13) - (x2_sq - self.d23 * self.d23);
        let t_a = a * a * (x1_sq - self.d13 * self.d13);
        let t_ab = 2.0 * a * b * v3x1;
        let t_b = b * b;
        let magnitude = a * a * (x1_sq + self.d13 * self.d13) + t_ab.abs() + t_b;
        Terms { a, b, g: t_a + t_ab + t_b, magnitude, x1_sq, v3x1 }
    }

    fn g(&self, theta: f64) -> f64 {
        self.terms(theta).g
    }

    fn is_degenerate(&self, t: &Terms) -> bool {
        t.g.abs() <= self.degenerate_rel * t.magnitude
    }

    fn eliminate(&self, theta: f64) -> Elimination {
        let t = self.terms(theta);
        if self.is_degenerate(&t) {
            return Elimination::Degenerate;
        }
        if t.a.abs() <= 1e-12 * self.scale {
            return Elimination::Pole;
        }
        Elimination::Isolated { t3: -t.b / t.a, residual: t.g / self.scale.powi(4) }
    }

    /// Base-edge coordinates (anchor frame) at `theta`.
    fn base_coords(&self, theta: f64) -> (f64, f64) {
        let (t1, t2) = segment_position(theta, &self.ellipse);
        (self.foot1 + t1, self.foot2 + t2)
    }

    /// Candidate third coordinates at a root of `G`.
    fn third_coords(&self, theta: f64) -> Vec<f64> {
        let t = self.terms(theta);
        if t.a.abs() > 1e-9 * self.scale {
            return vec![-t.b / t.a];
        }
        // A and B both (nearly) vanish: the 13 and 23 equations coincide in T3,
        // solve the 13 quadratic T^2 - 2 T (v3.X1) + |X1|^2 - d13^2 = 0.
        let disc = t.v3x1 * t.v3x1 - (t.x1_sq - self.d13 * self.d13);
        if disc < 0.0 {
            return Vec::new();
        }
        let r = disc.sqrt();
        vec![t.v3x1 + r, t.v3x1 - r]
    }
}

/// Enumerates the static placements of `tri` on the scene's lines.
pub fn solve_configurations(scene: &Scene, tri: &TriangleSpec, opts: &SolveOptions) -> Result<ConfigurationSet> {
    let class = classify_scene(scene)?.class;
    if class == SceneClass::AllParallel {
        let report = feasibility_with_tolerance(scene, tri, opts.tolerance)?;
        return Ok(match report.verdict {
            Verdict::FeasibleParallel => {
                ConfigurationSet::Continuum(Box::new(Mechanism::with_tolerance(scene, tri, None, opts.tolerance)?))
            }
            _ => ConfigurationSet::Finite(Vec::new()),
        });
    }
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        if scene.cosine(i, j).abs() >= PARALLEL_COS {
            continue;
        }
        let g = common_perpendicular(scene.line(i), scene.line(j))?;
        ellipse_params(tri.lengths()[k], &g).map_err(|e| match e {
            Error::EdgeTooShort { length, gap, .. } => Error::EdgeTooShort { pair: PAIR_NAMES[k], length, gap },
            e => e,
        })?;
    }

    // Base edge: first non-parallel pair.
    let perm = match PAIRS.iter().position(|&(i, j)| scene.cosine(i, j).abs() < PARALLEL_COS) {
        Some(0) => [0, 1, 2],
        Some(1) => [0, 2, 1],
        _ => [1, 2, 0],
    };
    let pscene = scene.permuted(perm);
    let ptri = tri.permuted(perm);
    let elim = Eliminator::new(&pscene, &ptri, opts.tolerance)?;

    let n = opts.grid_size.max(16);
    let thetas: Vec<f64> = (0..=n).map(|k| TAU * k as f64 / n as f64).collect();
    let terms: Vec<Terms> = thetas[..n].iter().map(|&th| elim.terms(th)).collect();
    let degenerate = terms.iter().filter(|t| elim.is_degenerate(t)).count();
    let continuum = degenerate * 2 > n;

    let report = feasibility_with_tolerance(scene, tri, opts.tolerance)?;
    match (continuum, report.verdict == Verdict::FeasibleMechanism) {
        (true, true) => {
            let mech = Mechanism::with_tolerance(scene, tri, None, opts.tolerance)?;
            return Ok(ConfigurationSet::Continuum(Box::new(mech)));
        }
        (false, false) => {}
        (true, false) => {
            return Err(Error::InternalInconsistency(format!(
                "elimination degenerate on {degenerate}/{n} samples but feasibility says {:?}",
                report.verdict
            )))
        }
        (false, true) => {
            return Err(Error::InternalInconsistency(format!(
                "feasible mechanism but elimination degenerate on only {degenerate}/{n} samples"
            )))
        }
    }

    let mut values: Vec<f64> = terms.iter().map(|t| t.g).collect();
    values.push(values[0]);
    let roots = find_roots(|th| elim.g(th), &thetas, &values, opts.newton_iters);

    let scale = tri.scale();
    let dedup = opts.dedup_radius.unwrap_or(1e-6 * scale);
    let mut configs: Vec<Configuration> = Vec::new();
    for (theta, tangent) in roots {
        let (t1, t2) = elim.base_coords(theta);
        for t3 in elim.third_coords(theta) {
            let pcoords = [t1, t2, t3];
            let mut coords = [0.0; 3];
            for k in 0..3 {
                coords[perm[k]] = pcoords[k];
            }
            let config = build_configuration(scene, tri, theta, coords, tangent);
            if config.residual > opts.tolerance * scale {
                continue;
            }
            let dup = configs.iter().any(|c| c.coords.iter().zip(&config.coords).all(|(a, b)| (a - b).abs() <= dedup));
            if !dup {
                configs.push(config);
            }
        }
    }
    configs.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    Ok(ConfigurationSet::Finite(configs))
}

pub(crate) fn build_configuration(
    scene: &Scene,
    tri: &TriangleSpec,
    theta: f64,
    coords: [f64; 3],
    tangent: bool,
) -> Configuration {
    let points: [Point; 3] = std::array::from_fn(|i| scene.line(i).point_at(coords[i]));
    let residual = PAIRS
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| (points[i].distance(&points[j]) - tri.lengths()[k]).abs())
        .fold(0.0, f64::max);
    Configuration { theta, coords, points, residual, tangent }
}

/// Roots of a smooth periodic `f` sampled at `thetas` (with `values[n] =
/// values[0]`). Returns `(theta, tangent)` pairs in `[0, 2 pi)`.
fn find_roots(f: impl Fn(f64) -> f64, thetas: &[f64], values: &[f64], newton_iters: usize) -> Vec<(f64, bool)> {
    let n = values.len() - 1;
    let mut roots = Vec::new();
    for k in 0..n {
        let (a, b) = (thetas[k], thetas[k + 1]);
        let (fa, fb) = (values[k], values[k + 1]);
        if fa == 0.0 {
            roots.push((a, false));
        } else if fb != 0.0 && fa.signum() != fb.signum() {
            roots.push((polish(&f, bisect(&f, a, b, fa), a, b, newton_iters), false));
        }
    }
    // Pairs of roots closer than a grid cell show up as dips without a sign
    // change; look for the extremum and split there.
    for k in 0..n {
        let prev = values[(k + n - 1) % n];
        let (cur, next) = (values[k], values[k + 1]);
        if cur == 0.0 || cur.signum() != prev.signum() || cur.signum() != next.signum() {
            continue;
        }
        if !(cur.abs() < prev.abs() && cur.abs() <= next.abs()) {
            continue;
        }
        let s = cur.signum();
        let step = thetas[1] - thetas[0];
        let (a, b) = (thetas[k] - step, thetas[k] + step);
        let m = golden_min(|th| s * f(th), a, b);
        let fm = s * f(m);
        if fm < 0.0 {
            roots.push((bisect(&f, a, m, cur), false));
            roots.push((bisect(&f, m, b, -cur), false));
        } else {
            // Possible tangency; the residual check downstream decides.
            roots.push((m, true));
        }
    }
    for r in &mut roots {
        r.0 = r.0.rem_euclid(TAU);
    }
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    roots
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let sa = fa.signum();
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Newton steps with a central-difference slope, kept only while they stay
/// in `[a, b]` and reduce `|f|`.
fn polish(f: impl Fn(f64) -> f64, mut x: f64, a: f64, b: f64, iters: usize) -> f64 {
    let mut fx = f(x);
    for _ in 0..iters {
        if fx == 0.0 {
            break;
        }
        let h = 1e-7 * (1.0 + x.abs());
        let slope = (f(x + h) - f(x - h)) / (2.0 * h);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = x - fx / slope;
        if !(a..=b).contains(&next) {
            break;
        }
        let fn_ = f(next);
        if fn_.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = fn_;
    }
    x
}

/// Minimiser of a unimodal `f` on `[a, b]`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if f1 > f2 {
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
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Line;

    fn planar(degrees: [f64; 3]) -> Scene {
        Scene::new(degrees.map(|d| {
            let a = d.to_radians();
            Line::new(vec![0.0, 0.0].into(), vec![a.cos(), a.sin()].into()).unwrap()
        }))
        .unwrap()
    }

    #[test]
    fn equilateral_is_degenerate_everywhere() {
        let scene = planar([0.0, 60.0, 120.0]);
        let d = 3.0_f64.sqrt();
        let tri = TriangleSpec::new(d, d, d).unwrap();
        for k in 0..1000 {
            let th = TAU * k as f64 / 1000.0 + 1e-3;
            assert_eq!(eliminate_t3(th, &scene, &tri).unwrap(), Elimination::Degenerate);
        }
        assert!(matches!(
            solve_configurations(&scene, &tri, &SolveOptions::default()).unwrap(),
            ConfigurationSet::Continuum(_)
        ));
    }

    #[test]
    fn mismatched_ratios_give_isolated_placements() {
        let scene = planar([0.0, 60.0, 120.0]);
        let s3 = 3.0_f64.sqrt();
        let tri = TriangleSpec::new(s3, s3, 2.0).unwrap();
        let set = solve_configurations(&scene, &tri, &SolveOptions::default()).unwrap();
        let configs = set.configs();
        assert!(!configs.is_empty() && configs.len() <= BEZOUT_BOUND);
        for c in configs {
            assert!(c.residual < 1e-8 * tri.scale());
        }
    }

    #[test]
    fn golden_and_bisect() {
        let m = golden_min(|x| (x - 0.3).powi(2), 0.0, 1.0);
        assert!((m - 0.3).abs() < 1e-7);
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, -2.0);
        assert!((r - 2.0_f64.sqrt()).abs() < 1e-15);
    }
}
