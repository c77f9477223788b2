//! A segment of fixed length sliding with its endpoints on two lines.
//!
//! In foot-relative coordinates `t_i`, `t_j` the placements satisfy
//! `t_i^2 + t_j^2 - 2 c t_i t_j = d^2 - D^2`, an ellipse whose axes sit at
//! 45 degrees to the coordinate axes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{PairGeometry, PARALLEL_COS};

/// Relative margin by which an edge must exceed the line distance.
pub const EDGE_MARGIN: f64 = 1e-12;

/// Semi-axes of the placement ellipse of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `sqrt(d^2 - D^2)`: the in-plane length of the edge.
    pub d_eff: f64,
}

impl EllipseParams {
    /// Radius of the placement circle in `(cos, sin)` form: `sqrt(a^2 + b^2)`.
    pub fn amplitude(&self) -> f64 {
        self.a.hypot(self.b)
    }
}

/// Ellipse constants for an edge of length `d` spanning `pair`.
pub fn ellipse_params(d: f64, pair: &PairGeometry) -> Result<EllipseParams> {
    if pair.c.abs() >= PARALLEL_COS {
        return Err(Error::ParallelLines(0, 1));
    }
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::InvalidEdgeLength(d));
    }
    if d <= pair.dist + EDGE_MARGIN * d.max(1.0) {
        return Err(Error::EdgeTooShort { pair: "ij", length: d, gap: pair.dist });
    }
    let d_eff = ((d - pair.dist) * (d + pair.dist)).sqrt();
    let c = pair.c;
    Ok(EllipseParams { a: d_eff / (2.0 * (1.0 - c)).sqrt(), b: d_eff / (2.0 * (1.0 + c)).sqrt(), c, d_eff })
}

/// Foot-relative coordinates `(t_i, t_j)` of the segment at parameter `theta`.
///
/// `theta = 0` puts both endpoints at `t = a`; increasing `theta` runs
/// counterclockwise around the ellipse in the `(t_i, t_j)` plane.
pub fn segment_position(theta: f64, e: &EllipseParams) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    (e.a * c - e.b * s, e.a * c + e.b * s)
}

/// Residual of the quadric `t_i^2 + t_j^2 - 2 c t_i t_j - d_eff^2`.
pub fn quadric_residual(t_i: f64, t_j: f64, e: &EllipseParams) -> f64 {
    t_i * t_i + t_j * t_j - 2.0 * e.c * t_i * t_j - e.d_eff * e.d_eff
}

/// Which line of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    I,
    J,
}

/// Interval of a line swept by one endpoint over the full motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeInterval {
    /// Anchor-frame coordinate of the centre (the foot).
    pub center_t: f64,
    pub half_length: f64,
}

impl RangeInterval {
    pub fn length(&self) -> f64 {
        2.0 * self.half_length
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.center_t - self.half_length, self.center_t + self.half_length)
    }
}

/// Occupied interval on one line of the pair: centred at the foot, of
/// half-length `d_eff / sin(alpha)`.
pub fn range_interval(e: &EllipseParams, pair: &PairGeometry, which: Which) -> RangeInterval {
    let center_t = match which {
        Which::I => pair.t_foot_i,
        Which::J => pair.t_foot_j,
    };
    RangeInterval { center_t, half_length: e.d_eff / pair.sin_alpha() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{common_perpendicular, Line};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn pair(c: f64, dist: f64) -> PairGeometry {
        let s = (1.0 - c * c).sqrt();
        PairGeometry {
            c,
            alpha: s.atan2(c),
            q_i: vec![0.0, 0.0, 0.0].into(),
            q_j: vec![0.0, 0.0, dist].into(),
            dist,
            t_foot_i: 0.0,
            t_foot_j: 0.0,
        }
    }

    #[test]
    fn symmetric_perpendicular_case() {
        let e = ellipse_params(SQRT_2, &pair(0.0, 0.0)).unwrap();
        assert!((e.d_eff - SQRT_2).abs() < 1e-15);
        assert!((e.a - 1.0).abs() < 1e-15 && (e.b - 1.0).abs() < 1e-15);
    }

    #[test]
    fn skew_pair_effective_length() {
        let li = Line::new(vec![0.0, 0.0, 0.0].into(), vec![1.0, 0.0, 0.0].into()).unwrap();
        let lj = Line::new(vec![0.0, 1.0, 1.0].into(), vec![0.0, 1.0, 0.0].into()).unwrap();
        let g = common_perpendicular(&li, &lj).unwrap();
        let d = 3.0_f64.sqrt();
        let e = ellipse_params(d, &g).unwrap();
        assert!((e.d_eff - SQRT_2).abs() < 1e-15);
        assert!((e.a - 1.0).abs() < 1e-15 && (e.b - 1.0).abs() < 1e-15);
        // p1 = (1,0,0) and p2 = (0,1,1) realise the edge.
        let p1 = g.q_i.add_scaled(1.0, li.direction());
        let p2 = g.q_j.add_scaled(1.0, lj.direction());
        assert!((p1.distance(&p2) - d).abs() < 1e-15);
    }

    #[test]
    fn edge_too_short() {
        assert!(matches!(ellipse_params(1.0, &pair(0.3, 2.0)), Err(Error::EdgeTooShort { .. })));
        assert!(matches!(ellipse_params(2.0, &pair(0.3, 2.0)), Err(Error::EdgeTooShort { .. })));
    }

    #[test]
    fn positions() {
        let e = EllipseParams { a: 1.0, b: 1.0, c: 0.0, d_eff: SQRT_2 };
        assert_eq!(segment_position(0.0, &e), (1.0, 1.0));
        let (ti, tj) = segment_position(FRAC_PI_2, &e);
        assert!((ti + 1.0).abs() < 1e-15 && (tj - 1.0).abs() < 1e-15);
        let (ti, tj) = segment_position(FRAC_PI_4, &e);
        assert!(ti.abs() < 1e-15 && (tj - SQRT_2).abs() < 1e-15);
        assert!(quadric_residual(ti, tj, &e).abs() < 1e-15);
    }

    #[test]
    fn range_of_perpendicular_pair() {
        let g = pair(0.0, 0.0);
        let e = ellipse_params(SQRT_2, &g).unwrap();
        let r = range_interval(&e, &g, Which::I);
        assert!((r.half_length - SQRT_2).abs() < 1e-15);
        assert!((r.length() - 2.0 * SQRT_2).abs() < 1e-15);
        // Grid maximisation of |cos - sin| reaches the same half-length.
        let best = (0..100_000)
            .map(|k| {
                let th = k as f64 * std::f64::consts::TAU / 100_000.0;
                segment_position(th, &e).0.abs()
            })
            .fold(0.0, f64::max);
        assert!((best - r.half_length).abs() < 1e-8);
    }
}
