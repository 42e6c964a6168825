//! Small symmetric-matrix helper for 1- and 2-parameter families.

use crate::error::{Error, Result};

/// Symmetric 1x1 or 2x2 matrix. Symmetry is exact by representation: the
/// storage holds `[a11, a12, a22]` and `get(1, 0)` reads the same slot as
/// `get(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymMat {
    dim: u8,
    m: [f64; 3],
}

impl SymMat {
    pub fn dim1(a: f64) -> SymMat {
        SymMat {
            dim: 1,
            m: [a, 0.0, 0.0],
        }
    }

    pub fn dim2(a11: f64, a12: f64, a22: f64) -> SymMat {
        SymMat {
            dim: 2,
            m: [a11, a12, a22],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.dim() && j < self.dim());
        self.m[i + j]
    }

    pub fn det(&self) -> f64 {
        match self.dim {
            1 => self.m[0],
            _ => self.m[0] * self.m[2] - self.m[1] * self.m[1],
        }
    }

    pub fn inverse(&self) -> Result<SymMat> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Numerical(format!(
                "singular or non-finite matrix (det = {det})"
            )));
        }
        Ok(match self.dim {
            1 => SymMat::dim1(1.0 / self.m[0]),
            _ => SymMat::dim2(self.m[2] / det, -self.m[1] / det, self.m[0] / det),
        })
    }

    /// v^T M v over the leading `dim` entries of `v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        match self.dim {
            1 => self.m[0] * v[0] * v[0],
            _ => self.m[0] * v[0] * v[0] + 2.0 * self.m[1] * v[0] * v[1] + self.m[2] * v[1] * v[1],
        }
    }

    /// Strict positive-definiteness (all eigenvalues > 0).
    pub fn is_positive_definite(&self) -> bool {
        match self.dim {
            1 => self.m[0] > 0.0,
            _ => self.m[0] > 0.0 && self.det() > 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.m[..if self.dim == 1 { 1 } else { 3 }]
            .iter()
            .all(|x| x.is_finite())
    }

    pub fn scale(&self, c: f64) -> SymMat {
        SymMat {
            dim: self.dim,
            m: [self.m[0] * c, self.m[1] * c, self.m[2] * c],
        }
    }

    pub fn sub(&self, other: &SymMat) -> SymMat {
        debug_assert_eq!(self.dim, other.dim);
        SymMat {
            dim: self.dim,
            m: [
                self.m[0] - other.m[0],
                self.m[1] - other.m[1],
                self.m[2] - other.m[2],
            ],
        }
    }

    pub fn max_abs_diff(&self, other: &SymMat) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let n = if self.dim == 1 { 1 } else { 3 };
        (0..n)
            .map(|k| (self.m[k] - other.m[k]).abs())
            .fold(0.0, f64::max)
    }

    /// Row-major nested representation, for serialization.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        match self.dim {
            1 => vec![vec![self.m[0]]],
            _ => vec![vec![self.m[0], self.m[1]], vec![self.m[1], self.m[2]]],
        }
    }

    /// Eigen-decomposition of a symmetric 2x2 matrix: returns
    /// `[(lambda_1, v_1), (lambda_2, v_2)]` with orthonormal eigenvectors,
    /// eigenvalues in descending order.
    pub fn eigen2(&self) -> [(f64, [f64; 2]); 2] {
        assert_eq!(self.dim, 2);
        let (a, b, c) = (self.m[0], self.m[1], self.m[2]);
        if b == 0.0 {
            return if a >= c {
                [(a, [1.0, 0.0]), (c, [0.0, 1.0])]
            } else {
                [(c, [0.0, 1.0]), (a, [1.0, 0.0])]
            };
        }
        let tr = a + c;
        let gap = ((a - c) * (a - c) + 4.0 * b * b).sqrt();
        let l1 = 0.5 * (tr + gap);
        let l2 = 0.5 * (tr - gap);
        let mut v1 = [b, l1 - a];
        let n1 = (v1[0] * v1[0] + v1[1] * v1[1]).sqrt();
        v1 = [v1[0] / n1, v1[1] / n1];
        let v2 = [-v1[1], v1[0]];
        [(l1, v1), (l2, v2)]
    }
}
