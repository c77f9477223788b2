//! Rolling-circle (hypocycloid) model of the straight-line drawer.
//!
//! A circle of radius `R/2` rolls without slipping inside a fixed circle of
//! radius `R`. Every point of the rolling circle traces a diameter of the
//! fixed circle; the point on the diameter at angle `phi` is at
//! `center + R cos(theta - phi) u(phi)`.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mechanism::Mechanism;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RollingCircleModel {
    /// Centre of the fixed circle, in motion-plane coordinates.
    pub center: [f64; 2],
    /// Radius `R` of the fixed circle.
    pub outer_radius: f64,
    /// Angle of each line's direction in the motion plane.
    pub phases: [f64; 3],
}

impl RollingCircleModel {
    pub fn new(center: [f64; 2], outer_radius: f64, phases: [f64; 3]) -> Result<Self> {
        if !(outer_radius.is_finite() && outer_radius > 0.0) {
            return Err(Error::InvalidEdgeLength(outer_radius));
        }
        Ok(RollingCircleModel { center, outer_radius, phases })
    }

    /// Model matching a rolling mechanism: centred at the meet (origin of the
    /// motion frame), `R` equal to the common range half-length.
    pub fn for_mechanism(mech: &Mechanism) -> Result<Self> {
        let radius =
            mech.outer_radius().ok_or_else(|| Error::NotApplicable("translation along parallel lines".into()))?;
        let dirs = mech.planar_directions().ok_or(Error::NotPlanarizable)?;
        Self::new([0.0, 0.0], radius, dirs.map(|d| d[1].atan2(d[0])))
    }

    /// Radius of the rolling circle, exactly half the fixed one.
    pub fn rolling_radius(&self) -> f64 {
        self.outer_radius / 2.0
    }

    /// Centre of the rolling circle at parameter `theta`.
    pub fn rolling_center(&self, theta: f64) -> [f64; 2] {
        let r = self.rolling_radius();
        [self.center[0] + r * theta.cos(), self.center[1] + r * theta.sin()]
    }
}

/// Point of the rolling circle that runs along the diameter at angle `phi`.
pub fn rolling_circle_point(model: &RollingCircleModel, theta: f64, phi: f64) -> [f64; 2] {
    let t = model.outer_radius * (theta - phi).cos();
    [model.center[0] + t * phi.cos(), model.center[1] + t * phi.sin()]
}

/// Number of phase-fit samples.
const FIT_SAMPLES: usize = 8;
/// Samples used for the discrepancy sweep.
const SWEEP_SAMPLES: usize = 4096;

/// Largest distance between the mechanism's vertices and the model's traced
/// points, after aligning the model parameter as `sigma * theta + delta`.
///
/// `sigma = +-1` absorbs the orientation of the motion frame; `delta` is a
/// least-squares phase shift fitted at eight samples.
pub fn rolling_equivalence(mech: &Mechanism, model: &RollingCircleModel) -> Result<f64> {
    if !mech.is_rolling() {
        return Err(Error::NotApplicable("translation along parallel lines".into()));
    }
    let frame = mech.frame().ok_or(Error::NotPlanarizable)?.clone();
    let planar = |theta: f64| -> Result<[[f64; 2]; 3]> {
        let s = mech.state(theta)?;
        Ok([0, 1, 2].map(|i| {
            let [x, y] = frame.coords(&s.points[i]);
            [x - model.center[0], y - model.center[1]]
        }))
    };

    // Best-conditioned pair of diameters for recovering the model phase.
    let (i, j) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .max_by(|&(a, b), &(c, d)| {
            let s = |p: usize, q: usize| (model.phases[p] - model.phases[q]).sin().abs();
            s(a, b).total_cmp(&s(c, d))
        })
        .expect("three pairs");
    let (pi, pj) = (model.phases[i], model.phases[j]);
    let det = pi.cos() * pj.sin() - pi.sin() * pj.cos();

    let mut thetas = [0.0; FIT_SAMPLES];
    let mut psis = [0.0; FIT_SAMPLES];
    for k in 0..FIT_SAMPLES {
        let theta = 0.1 + TAU * k as f64 / FIT_SAMPLES as f64;
        let pts = planar(theta)?;
        let ti = pts[i][0] * pi.cos() + pts[i][1] * pi.sin();
        let tj = pts[j][0] * pj.cos() + pts[j][1] * pj.sin();
        // R cos(psi - phi) = t  is linear in (R cos psi, R sin psi).
        let x = (ti * pj.sin() - tj * pi.sin()) / det;
        let y = (pi.cos() * tj - pj.cos() * ti) / det;
        thetas[k] = theta;
        psis[k] = y.atan2(x);
    }
    let fit = |sigma: f64| {
        let (s, c) = thetas.iter().zip(&psis).fold((0.0, 0.0), |(s, c), (th, psi)| {
            let r = psi - sigma * th;
            (s + r.sin(), c + r.cos())
        });
        let delta = s.atan2(c);
        let cost: f64 = thetas
            .iter()
            .zip(&psis)
            .map(|(th, psi)| {
                let r = psi - sigma * th - delta;
                r.sin().atan2(r.cos()).powi(2)
            })
            .sum();
        (cost, delta)
    };
    let (cost_pos, delta_pos) = fit(1.0);
    let (cost_neg, delta_neg) = fit(-1.0);
    let (sigma, delta) = if cost_pos <= cost_neg { (1.0, delta_pos) } else { (-1.0, delta_neg) };

    let mut worst: f64 = 0.0;
    for k in 0..SWEEP_SAMPLES {
        let theta = TAU * k as f64 / SWEEP_SAMPLES as f64;
        let pts = planar(theta)?;
        for (p, &phi) in pts.iter().zip(&model.phases) {
            let q = rolling_circle_point(model, sigma * theta + delta, phi);
            let q = [q[0] - model.center[0], q[1] - model.center[1]];
            worst = worst.max((p[0] - q[0]).hypot(p[1] - q[1]));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn contact_and_centre() {
        let m = RollingCircleModel::new([1.0, 2.0], 3.0, [0.0; 3]).unwrap();
        let phi: f64 = 0.7;
        let p = rolling_circle_point(&m, phi, phi);
        assert!(((p[0] - 1.0).hypot(p[1] - 2.0) - 3.0).abs() < 1e-15);
        let p = rolling_circle_point(&m, phi + FRAC_PI_2, phi);
        assert!((p[0] - 1.0).abs() < 1e-15 && (p[1] - 2.0).abs() < 1e-15);
        assert_eq!(m.rolling_radius(), 1.5);
    }

    #[test]
    fn traced_point_stays_on_rolling_circle() {
        let m = RollingCircleModel::new([0.0, 0.0], 2.0, [0.0; 3]).unwrap();
        for k in 0..100 {
            let theta = k as f64 * 0.063;
            let c = m.rolling_center(theta);
            for phi in [0.0, 1.0, 2.5] {
                let p = rolling_circle_point(&m, theta, phi);
                assert!(((p[0] - c[0]).hypot(p[1] - c[1]) - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn full_sweep_is_a_diameter() {
        let m = RollingCircleModel::new([0.5, -0.5], 1.25, [0.0; 3]).unwrap();
        let phi: f64 = 1.1;
        let (u, n) = ([phi.cos(), phi.sin()], [-phi.sin(), phi.cos()]);
        let (mut lo, mut hi) = (f64::MAX, f64::MIN);
        for k in 0..10_000 {
            let p = rolling_circle_point(&m, TAU * k as f64 / 10_000.0, phi);
            let d = [p[0] - 0.5, p[1] + 0.5];
            assert!((d[0] * n[0] + d[1] * n[1]).abs() < 1e-12);
            let t = d[0] * u[0] + d[1] * u[1];
            lo = lo.min(t);
            hi = hi.max(t);
        }
        // Extremes are limited by the grid spacing: R (1 - cos(pi / 10^4)).
        assert!((hi - 1.25).abs() < 1e-7 && (lo + 1.25).abs() < 1e-7);
    }
}
