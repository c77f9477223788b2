//! Dimension-generic points and vectors.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// A point or displacement in `R^n`.
#[derive(Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VecN(Vec<f64>);

/// Points and vectors share one representation.
pub type Point = VecN;

impl VecN {
    pub fn new(components: Vec<f64>) -> Self {
        VecN(components)
    }

    pub fn zeros(dim: usize) -> Self {
        VecN(vec![0.0; dim])
    }

    /// The `i`-th standard basis vector of `R^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn dot(&self, other: &VecN) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        // Scaled to avoid overflow for huge coordinates.
        let m = self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        m * self.0.iter().map(|x| (x / m) * (x / m)).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &VecN) -> f64 {
        (self - other).norm()
    }

    /// Unit vector in the same direction, or `None` for a zero vector.
    pub fn normalized(&self) -> Option<VecN> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: f64, other: &VecN) -> VecN {
        VecN(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    /// Component of `self` orthogonal to the unit vector `u`.
    pub fn reject(&self, u: &VecN) -> VecN {
        self.add_scaled(-self.dot(u), u)
    }

    pub fn max_abs_diff(&self, other: &VecN) -> f64 {
        self.0.iter().zip(&other.0).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }
}

impl From<Vec<f64>> for VecN {
    fn from(v: Vec<f64>) -> Self {
        VecN(v)
    }
}

impl<const N: usize> From<[f64; N]> for VecN {
    fn from(v: [f64; N]) -> Self {
        VecN(v.to_vec())
    }
}

impl fmt::Debug for VecN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl Index<usize> for VecN {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for VecN {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&VecN> for &VecN {
            type Output = VecN;
            fn $method(self, rhs: &VecN) -> VecN {
                debug_assert_eq!(self.dim(), rhs.dim());
                VecN(self.0.iter().zip(&rhs.0).map(|(a, b)| a $op b).collect())
            }
        }
        impl $trait<VecN> for VecN {
            type Output = VecN;
            fn $method(self, rhs: VecN) -> VecN {
                &self $op &rhs
            }
        }
        impl $trait<&VecN> for VecN {
            type Output = VecN;
            fn $method(self, rhs: &VecN) -> VecN {
                &self $op rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl AddAssign<&VecN> for VecN {
    fn add_assign(&mut self, rhs: &VecN) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&VecN> for VecN {
    fn sub_assign(&mut self, rhs: &VecN) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Mul<f64> for &VecN {
    type Output = VecN;
    fn mul(self, s: f64) -> VecN {
        VecN(self.0.iter().map(|a| a * s).collect())
    }
}

impl Mul<f64> for VecN {
    type Output = VecN;
    fn mul(mut self, s: f64) -> VecN {
        self.0.iter_mut().for_each(|a| *a *= s);
        self
    }
}

impl Neg for &VecN {
    type Output = VecN;
    fn neg(self) -> VecN {
        self * -1.0
    }
}

impl Neg for VecN {
    type Output = VecN;
    fn neg(self) -> VecN {
        self * -1.0
    }
}
