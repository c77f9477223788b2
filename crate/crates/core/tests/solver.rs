mod common;

use trilinea::oracle::oracle_sweep;
use trilinea::solver::{eliminate_t3, solve_configurations, Elimination, SolveOptions, BEZOUT_BOUND};
use trilinea::{ConfigurationSet, Error};

#[test]
fn solver_matches_oracle_on_random_scenes() {
    let mut worst = 0;
    for seed in 0..200 {
        let mut rng = common::rng(seed);
        let (scene, tri) = common::generic_3d(&mut rng);
        let set = solve_configurations(&scene, &tri, &SolveOptions::default()).unwrap();
        let oracle = oracle_sweep(&scene, &tri, 100_000).unwrap();
        let configs = set.configs();
        assert!(configs.len() <= BEZOUT_BOUND);
        worst = worst.max(configs.len());
        assert_eq!(configs.len(), oracle.configs.len(), "seed {seed}: {configs:#?} vs {:#?}", oracle.configs);
        for c in configs {
            let m = oracle
                .configs
                .iter()
                .map(|o| o.coords.iter().zip(&c.coords).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                .fold(f64::MAX, f64::min);
            assert!(m < 1e-6, "seed {seed}: unmatched configuration {c:?}");
        }
    }
    assert!(worst >= 4);
}

/// Third coordinate from first principles: `x(T) = a3 + T v3` must be
/// equally "over" both circle constraints, which is linear in `T`; scan and
/// bisect that difference.
fn brute_t3(scene: &trilinea::Scene, p1: &trilinea::VecN, p2: &trilinea::VecN, d13: f64, d23: f64) -> Option<f64> {
    let l3 = scene.line(2);
    let f = |t: f64| {
        let x = l3.point_at(t);
        ((&x - p1).norm_squared() - d13 * d13) - ((&x - p2).norm_squared() - d23 * d23)
    };
    let (mut lo, mut hi) = (-1e12, 1e12);
    if f(lo).signum() == f(hi).signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if f(m).signum() == f(lo).signum() {
            lo = m;
        } else {
            hi = m;
        }
    }
    Some(0.5 * (lo + hi))
}

#[test]
fn elimination_matches_direct_construction() {
    use trilinea::geom::common_perpendicular;
    for seed in 0..40 {
        let mut rng = common::rng(1000 + seed);
        let (scene, tri) = common::generic_3d(&mut rng);
        let (l1, l2) = (scene.line(0), scene.line(1));
        let g = common_perpendicular(l1, l2).unwrap();
        let d_eff = (tri.d12 * tri.d12 - g.dist * g.dist).sqrt();
        let (a, b) = (d_eff / (2.0 * (1.0 - g.c)).sqrt(), d_eff / (2.0 * (1.0 + g.c)).sqrt());
        for k in 0..64 {
            let th = std::f64::consts::TAU * (k as f64 + 0.25) / 64.0;
            let p1 = g.q_i.add_scaled(a * th.cos() - b * th.sin(), l1.direction());
            let p2 = g.q_j.add_scaled(a * th.cos() + b * th.sin(), l2.direction());
            assert!((p1.distance(&p2) - tri.d12).abs() < 1e-9);
            match eliminate_t3(th, &scene, &tri).unwrap() {
                Elimination::Isolated { t3, residual } => {
                    let t = brute_t3(&scene, &p1, &p2, tri.d13, tri.d23).expect("linear equation has a root");
                    assert!((t3 - t).abs() < 1e-8 * t.abs().max(1.0), "seed {seed}: {t3} vs {t}");
                    let over = (scene.line(2).point_at(t) - p1).norm_squared() - tri.d13 * tri.d13;
                    if over.abs() > 1e-6 {
                        assert_eq!(residual.signum(), over.signum());
                    }
                }
                Elimination::Pole => assert!(brute_t3(&scene, &p1, &p2, tri.d13, tri.d23).is_none()),
                Elimination::Degenerate => panic!("seed {seed}: generic scene reported degenerate at {th}"),
            }
        }
    }
}

#[test]
fn placement_at_the_start_of_the_sweep() {
    // lines x = 0, y = 0 and y = x; equilateral side 2. Placements need
    // |p1| = |p2| = sqrt 2 (else p3 misses the diagonal), so p3 sits on the
    // diagonal at a / sqrt 2 +- sqrt 3 for a = +-sqrt 2.
    let scene = common::planar_lines([0.0, 90.0, 45.0]);
    let tri = trilinea::TriangleSpec::new(2.0, 2.0, 2.0).unwrap();
    let set = solve_configurations(&scene, &tri, &SolveOptions::default()).unwrap();
    let mut got: Vec<[f64; 3]> = set.configs().iter().map(|c| c.coords).collect();
    got.sort_by(|x, y| x[0].total_cmp(&y[0]).then(x[2].total_cmp(&y[2])));
    let (s2, s3) = (2f64.sqrt(), 3f64.sqrt());
    let want = [[-s2, -s2, -1.0 - s3], [-s2, -s2, -1.0 + s3], [s2, s2, 1.0 - s3], [s2, s2, 1.0 + s3]];
    assert_eq!(got.len(), 4, "{got:?}");
    for (g, w) in got.iter().zip(&want) {
        assert!(g.iter().zip(w).all(|(a, b)| (a - b).abs() < 1e-9), "{g:?} vs {w:?}");
    }
    let oracle = oracle_sweep(&scene, &tri, 100_000).unwrap();
    assert_eq!(oracle.configs.len(), 4);
}

#[test]
fn relabelling_permutes_the_placements() {
    for seed in 0..15 {
        let mut rng = common::rng(2000 + seed);
        let (scene, tri) = common::generic_3d(&mut rng);
        let base = solve_configurations(&scene, &tri, &SolveOptions::default()).unwrap();
        for perm in [[1, 0, 2], [2, 0, 1], [0, 2, 1]] {
            let p = solve_configurations(&scene.permuted(perm), &tri.permuted(perm), &SolveOptions::default()).unwrap();
            assert_eq!(p.configs().len(), base.configs().len(), "seed {seed} perm {perm:?}");
            for c in p.configs() {
                // new vertex k is old vertex perm[k]
                let hit = base.configs().iter().any(|b| (0..3).all(|k| (c.coords[k] - b.coords[perm[k]]).abs() < 1e-6));
                assert!(hit, "seed {seed} perm {perm:?}");
            }
        }
    }
}

#[test]
fn mirror_symmetric_scene_has_mirror_closed_placements() {
    // reflection y -> -y swaps lines 1 and 2 and fixes line 3; with d13 = d23
    // the mirror image of a placement, relabelled, is again a placement
    let scene = trilinea::Scene::new([
        common::line(&[0.0, 1.0], &[1.0, 1.0]),
        common::line(&[0.0, -1.0], &[1.0, -1.0]),
        common::line(&[0.7, 0.0], &[1.0, 0.0]),
    ])
    .unwrap();
    let tri = trilinea::TriangleSpec::new(2.5, 2.0, 2.0).unwrap();
    let set = solve_configurations(&scene, &tri, &SolveOptions::default()).unwrap();
    assert!(!set.configs().is_empty());
    let mirror = |p: &trilinea::VecN| trilinea::VecN::from([p[0], -p[1]]);
    for c in set.configs() {
        let image = [mirror(&c.points[1]), mirror(&c.points[0]), mirror(&c.points[2])];
        let hit = set.configs().iter().any(|o| (0..3).all(|k| o.points[k].distance(&image[k]) < 1e-6));
        assert!(hit, "{c:?}");
    }
    let oracle = oracle_sweep(&scene, &tri, 100_000).unwrap();
    assert_eq!(oracle.configs.len(), set.configs().len());
}

#[test]
fn residuals_are_small_and_short_edges_rejected() {
    for seed in 0..30 {
        let mut rng = common::rng(3000 + seed);
        let (scene, tri) = common::generic_3d(&mut rng);
        for c in solve_configurations(&scene, &tri, &SolveOptions::default()).unwrap().configs() {
            assert!(c.residual < 1e-8 * tri.scale());
            for (k, &(i, j)) in trilinea::geom::PAIRS.iter().enumerate() {
                assert!((c.points[i].distance(&c.points[j]) - tri.lengths()[k]).abs() < 1e-8 * tri.scale());
            }
            for i in 0..3 {
                assert!(scene.line(i).distance_to(&c.points[i]) < 1e-10 * scene.scale());
            }
        }
    }
    let scene = trilinea::Scene::new([
        common::line(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]),
        common::line(&[0.0, 0.0, 5.0], &[0.0, 1.0, 0.0]),
        common::line(&[0.0, 3.0, 0.0], &[0.0, 0.0, 1.0]),
    ])
    .unwrap();
    let tri = trilinea::TriangleSpec::new(1.0, 1.0, 1.0).unwrap();
    assert!(matches!(solve_configurations(&scene, &tri, &SolveOptions::default()), Err(Error::EdgeTooShort { .. })));
}

#[test]
fn feasible_scenes_are_a_continuum() {
    let mut rng = common::rng(4000);
    let (scene, tri) = common::planar_feasible(&mut rng);
    assert!(matches!(
        solve_configurations(&scene, &tri, &SolveOptions::default()).unwrap(),
        ConfigurationSet::Continuum(_)
    ));
}
