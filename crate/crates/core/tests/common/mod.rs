//! Seeded random scenes shared by the integration suites.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trilinea::geom::{classify_scene, Line, Scene, SceneClass, PAIRS};
use trilinea::{TriangleSpec, VecN};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn line(anchor: &[f64], dir: &[f64]) -> Line {
    Line::new(anchor.to_vec().into(), dir.to_vec().into()).unwrap()
}

pub fn planar_lines(degrees: [f64; 3]) -> Scene {
    Scene::new(degrees.map(|d| {
        let a = f64::to_radians(d);
        line(&[0.0, 0.0], &[a.cos(), a.sin()])
    }))
    .unwrap()
}

fn random_vec(rng: &mut impl Rng, dim: usize, r: f64) -> VecN {
    (0..dim).map(|_| rng.gen_range(-r..r)).collect::<Vec<_>>().into()
}

/// Random orthonormal basis of `R^dim` (Gram-Schmidt on random vectors).
pub fn random_basis(rng: &mut impl Rng, dim: usize) -> Vec<VecN> {
    let mut basis: Vec<VecN> = Vec::new();
    while basis.len() < dim {
        let mut v = random_vec(rng, dim, 1.0);
        for b in &basis {
            v = v.reject(b);
        }
        if v.norm() > 0.1 {
            basis.push(v.normalized().unwrap());
        }
    }
    basis
}

/// Three line angles in `[0, pi)` with pairwise separation (as lines) of at
/// least `min_sep`.
fn spread_angles(rng: &mut impl Rng, min_sep: f64) -> [f64; 3] {
    loop {
        let a: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.0..std::f64::consts::PI));
        let ok = PAIRS.iter().all(|&(i, j)| {
            let d = (a[i] - a[j]).rem_euclid(std::f64::consts::PI);
            d.min(std::f64::consts::PI - d) >= min_sep
        });
        if ok {
            // Random orientation of each direction along its line.
            return a.map(|x| if rng.gen_bool(0.5) { x } else { x + std::f64::consts::PI });
        }
    }
}

/// Feasible in-plane lengths `2 r sin(alpha_ij)` from the actual directions.
fn chord_lengths(dirs: &[VecN; 3], r: f64) -> [f64; 3] {
    PAIRS.map(|(i, j)| {
        let c = dirs[i].dot(&dirs[j]);
        2.0 * r * (1.0 - c * c).sqrt()
    })
}

/// Lines in the plane spanned by `e1`, `e2` through feet `feet[i]` (which
/// must differ by vectors orthogonal to that plane), with a feasible triangle.
fn lift(rng: &mut impl Rng, e1: &VecN, e2: &VecN, feet: [VecN; 3]) -> (Scene, TriangleSpec) {
    let angles = spread_angles(rng, 0.25);
    let dirs: [VecN; 3] = angles.map(|a| (e1 * a.cos()) + (e2 * a.sin()));
    let r = rng.gen_range(0.5..3.0);
    let d_eff = chord_lengths(&dirs, r);
    let lines: [Line; 3] = std::array::from_fn(|i| {
        let shift = rng.gen_range(-2.0..2.0);
        Line::new(feet[i].add_scaled(shift, &dirs[i]), dirs[i].clone()).unwrap()
    });
    let d: [f64; 3] = std::array::from_fn(|k| {
        let (i, j) = PAIRS[k];
        (d_eff[k].powi(2) + feet[i].distance(&feet[j]).powi(2)).sqrt()
    });
    (Scene::new(lines).unwrap(), TriangleSpec::new(d[0], d[1], d[2]).unwrap())
}

pub fn planar_feasible(rng: &mut impl Rng) -> (Scene, TriangleSpec) {
    let meet = random_vec(rng, 2, 3.0);
    lift(rng, &VecN::unit(2, 0), &VecN::unit(2, 1), [meet.clone(), meet.clone(), meet])
}

/// Lines meeting a random axis orthogonally at random heights.
pub fn axis_feasible_3d(rng: &mut impl Rng) -> (Scene, TriangleSpec) {
    let b = random_basis(rng, 3);
    let o = random_vec(rng, 3, 2.0);
    let feet = std::array::from_fn(|_| o.add_scaled(rng.gen_range(-2.0..2.0), &b[2]));
    lift(rng, &b[0], &b[1], feet)
}

/// Feasible lift in `R^4`: directions in a random 2-plane, feet scattered in
/// its orthogonal complement (generally not collinear). Returns the scene,
/// the triangle, and a unit normal orthogonal to every direction.
pub fn lift_4d(rng: &mut impl Rng) -> (Scene, TriangleSpec, VecN) {
    let b = random_basis(rng, 4);
    let o = random_vec(rng, 4, 2.0);
    let feet = std::array::from_fn(|_| {
        o.add_scaled(rng.gen_range(-2.0..2.0), &b[2]).add_scaled(rng.gen_range(-2.0..2.0), &b[3])
    });
    let (s, t) = lift(rng, &b[0], &b[1], feet);
    let w = (&b[2] * 0.6) + (&b[3] * 0.8);
    (s, t, w)
}

/// Random skew lines in `R^3` with an edge-length triple realised by a
/// random placement (so at least one solution exists).
pub fn generic_3d(rng: &mut impl Rng) -> (Scene, TriangleSpec) {
    loop {
        let lines: [Line; 3] =
            std::array::from_fn(|_| Line::new(random_vec(rng, 3, 2.0), random_vec(rng, 3, 1.0)).unwrap());
        let scene = Scene::new(lines).unwrap();
        let Ok(c) = classify_scene(&scene) else { continue };
        if c.class != SceneClass::Generic || !c.warnings.is_empty() {
            continue;
        }
        let p: [VecN; 3] = std::array::from_fn(|i| scene.line(i).point_at(rng.gen_range(-2.0..2.0)));
        let d = PAIRS.map(|(i, j)| p[i].distance(&p[j]));
        if let Ok(tri) = TriangleSpec::new(d[0], d[1], d[2]) {
            return (scene, tri);
        }
    }
}
