mod common;

use proptest::prelude::*;
use rand::Rng;
use trilinea::geom::{
    classify_scene, common_perpendicular, foot_offset, oriented_pair, pair_geometries, Line, Scene, PAIRS,
};
use trilinea::VecN;

fn random_line(rng: &mut impl Rng, dim: usize) -> Line {
    let a: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
    let d: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Line::new(a.into(), d.into()).unwrap()
}

/// Pair of lines whose directions make at least ~37 degrees.
fn skew_pair(rng: &mut impl Rng, dim: usize) -> (Line, Line) {
    loop {
        let (a, b) = (random_line(rng, dim), random_line(rng, dim));
        if a.direction().dot(b.direction()).abs() < 0.8 {
            return (a, b);
        }
    }
}

/// Closest distance by brute force: a 2001 x 2001 grid over both line
/// parameters, then alternating exact minimisation in each parameter.
fn brute_distance(li: &Line, lj: &Line) -> f64 {
    let (n, half) = (2001, 40.0);
    let step = 2.0 * half / (n - 1) as f64;
    let (ai, vi, aj, vj) = (li.anchor(), li.direction(), lj.anchor(), lj.direction());
    let r = aj - ai;
    let (rr, rvi, rvj, c) = (r.dot(&r), r.dot(vi), r.dot(vj), vi.dot(vj));
    // |r + t vj - s vi|^2 expanded
    let sq = |s: f64, t: f64| rr + t * t + s * s + 2.0 * t * rvj - 2.0 * s * rvi - 2.0 * s * t * c;
    let (mut best, mut bs, mut bt) = (f64::MAX, 0.0, 0.0);
    for a in 0..n {
        let s = -half + step * a as f64;
        for b in 0..n {
            let t = -half + step * b as f64;
            let v = sq(s, t);
            if v < best {
                (best, bs, bt) = (v, s, t);
            }
        }
    }
    let (mut s, mut t) = (bs, bt);
    for _ in 0..2000 {
        s = rvi + t * c;
        t = s * c - rvj;
    }
    // the expanded form cancels near zero, so finish with the vector itself
    (&r + &(vj * t) - (vi * s)).norm()
}

fn rigid_motion(scene: &Scene, rng: &mut impl Rng) -> Scene {
    let dim = scene.dim();
    let basis = common::random_basis(rng, dim);
    let shift: Vec<f64> = (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let rotate = |v: &VecN| -> VecN { basis.iter().map(|b| b.dot(v)).collect::<Vec<_>>().into() };
    Scene::new(std::array::from_fn(|i| {
        let l = scene.line(i);
        let a = rotate(l.anchor()) + VecN::from(shift.clone());
        Line::new(a, rotate(l.direction())).unwrap()
    }))
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn distance_matches_grid_search(seed in any::<u64>(), dim in 2usize..5) {
        let mut rng = common::rng(seed);
        let (li, lj) = skew_pair(&mut rng, dim);
        let g = common_perpendicular(&li, &lj).unwrap();
        prop_assert!((g.dist - brute_distance(&li, &lj)).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn perpendicular_is_orthogonal(seed in any::<u64>(), dim in 2usize..6) {
        let mut rng = common::rng(seed);
        let (li, lj) = skew_pair(&mut rng, dim);
        let g = common_perpendicular(&li, &lj).unwrap();
        let seg = &g.q_j - &g.q_i;
        prop_assert!(seg.dot(li.direction()).abs() < 1e-10);
        prop_assert!(seg.dot(lj.direction()).abs() < 1e-10);
        prop_assert!(li.distance_to(&g.q_i) < 1e-10 && lj.distance_to(&g.q_j) < 1e-10);
    }

    #[test]
    fn foot_offsets_are_antisymmetric(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let scene = loop {
            let s = Scene::new(std::array::from_fn(|_| random_line(&mut rng, 3))).unwrap();
            if PAIRS.iter().all(|&(i, j)| s.cosine(i, j).abs() < 0.99) {
                break s;
            }
        };
        let pairs = pair_geometries(&scene).unwrap();
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let (gij, gik) = (oriented_pair(&pairs, i, j), oriented_pair(&pairs, i, k));
            prop_assert_eq!(foot_offset(&gij, &gik) + foot_offset(&gik, &gij), 0.0);
            // |e_ijk| is the distance between the two feet on line i
            prop_assert!((foot_offset(&gij, &gik).abs() - gij.q_i.distance(&gik.q_i)).abs() < 1e-9);
        }
    }

    #[test]
    fn classification_survives_rigid_motion_and_relabelling(seed in any::<u64>(), kind in 0usize..4) {
        let mut rng = common::rng(seed);
        let scene = match kind {
            0 => common::planar_feasible(&mut rng).0,
            1 => common::axis_feasible_3d(&mut rng).0,
            2 => common::lift_4d(&mut rng).0,
            _ => common::generic_3d(&mut rng).0,
        };
        let tag = classify_scene(&scene).unwrap().class.name();
        prop_assert_eq!(classify_scene(&rigid_motion(&scene, &mut rng)).unwrap().class.name(), tag);
        for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0], [2, 0, 1], [0, 2, 1]] {
            prop_assert_eq!(classify_scene(&scene.permuted(perm)).unwrap().class.name(), tag);
        }
    }
}

#[test]
fn generated_scenes_have_the_intended_class() {
    let mut rng = common::rng(7);
    assert_eq!(classify_scene(&common::planar_feasible(&mut rng).0).unwrap().class.name(), "ConcurrentPlanar");
    assert_eq!(classify_scene(&common::axis_feasible_3d(&mut rng).0).unwrap().class.name(), "CommonPerpendicularAxis");
    assert_eq!(classify_scene(&common::lift_4d(&mut rng).0).unwrap().class.name(), "AxisAfterProjection");
    assert_eq!(classify_scene(&common::generic_3d(&mut rng).0).unwrap().class.name(), "Generic");
}
