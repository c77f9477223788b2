//! Brute-force placement search, independent of the elimination in
//! [`crate::solver`].
//!
//! The base edge is swept over a dense grid of its ellipse angle. At every
//! angle the two points of line 3 at distance `d13` from `p1` are the
//! candidates for the third vertex; their distance error to `p2` is
//! tracked per branch, and its zeros are located by golden-section search.

use std::f64::consts::TAU;

use crate::error::Result;
use crate::geom::{common_perpendicular, Scene, SceneClass, PAIRS, PARALLEL_COS};
use crate::pairwise::{segment_position, EllipseParams};
use crate::solver::{build_configuration, Configuration};
use crate::triangle::TriangleSpec;

/// Samples below which the sweep is refused.
pub const MIN_SAMPLES: usize = 100_000;

/// Approximate placement set from [`oracle_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub configs: Vec<Configuration>,
    /// Fraction of grid angles at which some candidate misses by less than
    /// `1e-6 * scale` (close to 1 on a continuum).
    pub near_zero_fraction: f64,
}

struct Sweep {
    ellipse: EllipseParams,
    foot1: f64,
    foot2: f64,
    // Gram data relative to the anchor of line 3.
    u1: f64,
    u1v1: f64,
    u1v3: f64,
    u2: f64,
    u2v2: f64,
    u2v3: f64,
    c13: f64,
    c23: f64,
    d13: f64,
    d23: f64,
}

impl Sweep {
    /// Base edge coordinates and, per branch, (T3, miss) if the branch exists.
    fn eval(&self, theta: f64) -> (f64, f64, [Option<(f64, f64)>; 2]) {
        let (t1, t2) = segment_position(theta, &self.ellipse);
        // |a3 + T v3 - p1|^2 = d13^2 with p1 = q1 + t1 v1
        let beta = self.u1v3 - t1 * self.c13;
        let gamma = self.u1 - 2.0 * t1 * self.u1v1 + t1 * t1 - self.d13 * self.d13;
        let disc = beta * beta - gamma;
        if disc < 0.0 {
            return (t1, t2, [None, None]);
        }
        let r = disc.sqrt();
        let branch = |t3: f64| {
            let sq =
                self.u2 + t3 * t3 + t2 * t2 + 2.0 * t3 * self.u2v3 - 2.0 * t2 * self.u2v2 - 2.0 * t3 * t2 * self.c23;
            (t3, sq.max(0.0).sqrt() - self.d23)
        };
        (t1, t2, [Some(branch(-beta + r)), Some(branch(-beta - r))])
    }

    fn miss(&self, theta: f64, b: usize) -> Option<f64> {
        self.eval(theta).2[b].map(|x| x.1)
    }

    fn disc_defined(&self, theta: f64) -> bool {
        self.eval(theta).2[0].is_some()
    }
}

/// Dense sweep over `n >= 100_000` angles of the base edge.
pub fn oracle_sweep(scene: &Scene, tri: &TriangleSpec, n: usize) -> Result<OracleResult> {
    let n = n.max(MIN_SAMPLES);
    let empty = OracleResult { configs: Vec::new(), near_zero_fraction: 0.0 };
    if crate::geom::classify_scene(scene)?.class == SceneClass::AllParallel {
        return Ok(empty);
    }
    // Any non-parallel edge spanning less than its line distance rules out
    // every placement.
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        if scene.cosine(i, j).abs() < PARALLEL_COS {
            let g = common_perpendicular(scene.line(i), scene.line(j))?;
            if tri.lengths()[k] <= g.dist {
                return Ok(empty);
            }
        }
    }
    let perm = match PAIRS.iter().position(|&(i, j)| scene.cosine(i, j).abs() < PARALLEL_COS) {
        Some(0) => [0, 1, 2],
        Some(1) => [0, 2, 1],
        _ => [1, 2, 0],
    };
    let ps = scene.permuted(perm);
    let pt = tri.permuted(perm);
    let (l1, l2, l3) = (ps.line(0), ps.line(1), ps.line(2));
    let g = common_perpendicular(l1, l2)?;
    let d_eff = ((pt.d12 - g.dist) * (pt.d12 + g.dist)).sqrt();
    let ellipse =
        EllipseParams { a: d_eff / (2.0 * (1.0 - g.c)).sqrt(), b: d_eff / (2.0 * (1.0 + g.c)).sqrt(), c: g.c, d_eff };
    let u1 = l3.anchor() - &g.q_i;
    let u2 = l3.anchor() - &g.q_j;
    let sweep = Sweep {
        ellipse,
        foot1: g.t_foot_i,
        foot2: g.t_foot_j,
        u1: u1.norm_squared(),
        u1v1: u1.dot(l1.direction()),
        u1v3: u1.dot(l3.direction()),
        u2: u2.norm_squared(),
        u2v2: u2.dot(l2.direction()),
        u2v3: u2.dot(l3.direction()),
        c13: l1.direction().dot(l3.direction()),
        c23: l2.direction().dot(l3.direction()),
        d13: pt.d13,
        d23: pt.d23,
    };

    let scale = tri.scale();
    let accept = 1e-9 * scale;
    let dip = 1e-4 * scale;
    let step = TAU / n as f64;
    let grid: Vec<[Option<f64>; 2]> = (0..=n).map(|k| sweep.eval(step * k as f64).2.map(|b| b.map(|x| x.1))).collect();
    let near = grid[..n].iter().filter(|v| v.iter().flatten().any(|m| m.abs() < 1e-6 * scale)).count();

    let mut found: Vec<(f64, usize)> = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for b in 0..2 {
        let h = |th: f64| sweep.miss(th, b);
        for k in 0..n {
            let (a, z) = (step * k as f64, step * (k + 1) as f64);
            match (grid[k][b], grid[k + 1][b]) {
                (Some(ha), Some(hz)) => {
                    if ha.abs() <= accept {
                        // A root on the sample itself; rounding may hide its sign change.
                        found.push((golden_abs(h, a - step, z), b));
                    } else if hz != 0.0 && ha.signum() != hz.signum() {
                        found.push((golden_abs(h, a, z), b));
                    }
                }
                (Some(ha), None) | (None, Some(ha)) => {
                    // Branch ends inside the cell: compare against its endpoint.
                    let (inside, outside) = if grid[k][b].is_some() { (a, z) } else { (z, a) };
                    let edge = branch_end(&sweep, inside, outside);
                    if let Some(he) = h(edge) {
                        if he == 0.0 || he.signum() != ha.signum() {
                            let (lo, hi) = if inside < edge { (inside, edge) } else { (edge, inside) };
                            found.push((golden_abs(h, lo, hi), b));
                        }
                    }
                }
                (None, None) => {}
            }
        }
        // Dips: two roots inside one cell. The grid is periodic, so the
        // first sample has the last one as its predecessor.
        for k in 0..n {
            let (Some(prev), Some(cur), Some(next)) = (grid[(k + n - 1) % n][b], grid[k][b], grid[k + 1][b]) else {
                continue;
            };
            if cur.abs() >= dip || cur == 0.0 {
                continue;
            }
            if cur.signum() != prev.signum() || cur.signum() != next.signum() {
                continue;
            }
            if !(cur.abs() < prev.abs() && cur.abs() <= next.abs()) {
                continue;
            }
            let s = cur.signum();
            let (a, z) = (step * (k as f64 - 1.0), step * (k + 1) as f64);
            let m = crate::solver::golden_min(|th| h(th).map_or(f64::MAX, |v| s * v), a, z);
            match h(m) {
                Some(hm) if s * hm < 0.0 => {
                    found.push((golden_abs(h, a, m), b));
                    found.push((golden_abs(h, m, z), b));
                }
                Some(_) => found.push((m, b)),
                None => {}
            }
        }
    }

    let mut configs: Vec<Configuration> = Vec::new();
    for (theta, b) in found {
        let (t1, t2, branches) = sweep.eval(theta);
        let Some((t3, miss)) = branches[b] else { continue };
        if miss.abs() > accept {
            continue;
        }
        let pcoords = [sweep.foot1 + t1, sweep.foot2 + t2, t3];
        let mut coords = [0.0; 3];
        for k in 0..3 {
            coords[perm[k]] = pcoords[k];
        }
        let c = build_configuration(scene, tri, theta.rem_euclid(TAU), coords, false);
        let dup = configs.iter().any(|o| o.coords.iter().zip(&c.coords).all(|(x, y)| (x - y).abs() <= 1e-7 * scale));
        if !dup {
            configs.push(c);
        }
    }
    configs.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    Ok(OracleResult { configs, near_zero_fraction: near as f64 / n as f64 })
}

/// Angle between `inside` and `outside` where the candidate branches end.
fn branch_end(sweep: &Sweep, mut inside: f64, mut outside: f64) -> f64 {
    for _ in 0..100 {
        let m = 0.5 * (inside + outside);
        if sweep.disc_defined(m) {
            inside = m;
        } else {
            outside = m;
        }
    }
    inside
}

/// Golden-section minimiser of `|h|` on `[a, b]` (undefined counts as far).
fn golden_abs(h: impl Fn(f64) -> Option<f64>, a: f64, b: f64) -> f64 {
    crate::solver::golden_min(|th| h(th).map_or(f64::MAX, f64::abs), a, b)
}
