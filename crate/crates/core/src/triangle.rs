use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::pair_index;

/// Relative slack under which a triangle counts as collinear.
const DEGENERATE_REL: f64 = 1e-12;

/// Fixed edge lengths of the moving triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleSpec {
    pub d12: f64,
    pub d13: f64,
    pub d23: f64,
}

impl TriangleSpec {
    /// Strict constructor: rejects collinear triangles.
    pub fn new(d12: f64, d13: f64, d23: f64) -> Result<Self> {
        let tri = Self::new_allow_degenerate(d12, d13, d23)?;
        if tri.is_degenerate() {
            return Err(Error::DegenerateTriangle);
        }
        Ok(tri)
    }

    /// Accepts collinear triangles (equality in the triangle inequality).
    /// Only the static solver is meaningful for those.
    pub fn new_allow_degenerate(d12: f64, d13: f64, d23: f64) -> Result<Self> {
        for d in [d12, d13, d23] {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::InvalidEdgeLength(d));
            }
        }
        let tri = TriangleSpec { d12, d13, d23 };
        if tri.slack() < -DEGENERATE_REL * tri.scale() {
            return Err(Error::ImpossibleTriangle);
        }
        Ok(tri)
    }

    /// Smallest `d_a + d_b - d_c` over the three permutations.
    fn slack(&self) -> f64 {
        let [a, b, c] = self.lengths();
        (a + b - c).min(a + c - b).min(b + c - a)
    }

    pub fn is_degenerate(&self) -> bool {
        self.slack() <= DEGENERATE_REL * self.scale()
    }

    /// Lengths in pair order `12, 13, 23`.
    pub fn lengths(&self) -> [f64; 3] {
        [self.d12, self.d13, self.d23]
    }

    pub fn length(&self, i: usize, j: usize) -> f64 {
        self.lengths()[pair_index(i, j)]
    }

    /// `max(d_ij, 1)`, the scale for relative tolerances.
    pub fn scale(&self) -> f64 {
        self.d12.max(self.d13).max(self.d23).max(1.0)
    }

    /// Edge lengths after relabelling the vertices: vertex `k` of the result is
    /// vertex `perm[k]` of `self`.
    pub fn permuted(&self, perm: [usize; 3]) -> TriangleSpec {
        TriangleSpec {
            d12: self.length(perm[0], perm[1]),
            d13: self.length(perm[0], perm[2]),
            d23: self.length(perm[1], perm[2]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(TriangleSpec::new(3.0, 4.0, 5.0).is_ok());
        assert_eq!(TriangleSpec::new(1.0, 2.0, 3.0), Err(Error::DegenerateTriangle));
        assert!(TriangleSpec::new_allow_degenerate(1.0, 2.0, 3.0).is_ok());
        assert_eq!(TriangleSpec::new(1.0, 2.0, 4.0), Err(Error::ImpossibleTriangle));
        assert_eq!(TriangleSpec::new(0.0, 2.0, 2.0), Err(Error::InvalidEdgeLength(0.0)));
    }

    #[test]
    fn permutation() {
        let t = TriangleSpec::new(3.0, 4.0, 5.0).unwrap();
        let p = t.permuted([2, 0, 1]);
        assert_eq!(p.lengths(), [4.0, 5.0, 3.0]);
    }
}
