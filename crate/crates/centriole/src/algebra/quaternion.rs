//! Scalar quaternions and dense quaternion matrices.
//!
//! Quaternion matrices act on columns of ℍ^r from the left, while scalars
//! multiply vectors from the right; this makes every matrix an ℍ-linear map
//! of the right module ℍ^r. Heavy numerical work happens in the complex
//! 2r × 2r picture produced by [`QMat::to_complex`]; the quaternion-native
//! arithmetic here exists for constructing exact constants and for sanity
//! checks against that embedding.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::matrix::CMat;

/// A quaternion `a + b i + c j + d k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

impl Quaternion {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im, 0.0, 0.0)
    }

    /// The complex pair `(x, y)` with `q = x + j y` and `x, y ∈ ℂ`.
    ///
    /// Note `j(c + di) = c j + d k` requires the second component to be
    /// `c - d i` conjugated back: from `a + bi + cj + dk = (a + bi) + j(c - di)`.
    pub fn complex_pair(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.a, self.b),
            Complex64::new(self.c, -self.d),
        )
    }

    pub fn conj(self) -> Self {
        Self::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sq(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn inverse(self) -> Self {
        let n = self.norm_sq();
        let c = self.conj();
        Self::new(c.a / n, c.b / n, c.c / n, c.d / n)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
}

/// Hamilton product.
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion::new(
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Self) -> Self {
        quat_mul(self, rhs)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Self) -> Self {
        Self::new(self.a + r.a, self.b + r.b, self.c + r.c, self.d + r.d)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Self) -> Self {
        Self::new(self.a - r.a, self.b - r.b, self.c - r.c, self.d - r.d)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

/// Dense quaternion matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Quaternion>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Diagonal matrix with the same scalar in every slot.
    pub fn scalar(n: usize, q: Quaternion) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = q;
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// 2×2 block assembly `[[a, b], [c, d]]` of equally sized blocks.
    pub fn from_blocks(a: &QMat, b: &QMat, c: &QMat, d: &QMat) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for cc in 0..a.cols {
                m[(r, cc)] = a[(r, cc)];
            }
            for cc in 0..b.cols {
                m[(r, a.cols + cc)] = b[(r, cc)];
            }
        }
        for r in 0..c.rows {
            for cc in 0..c.cols {
                m[(a.rows + r, cc)] = c[(r, cc)];
            }
            for cc in 0..d.cols {
                m[(a.rows + r, c.cols + cc)] = d[(r, cc)];
            }
        }
        m
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> QMat {
        QMat::from_fn(rows, cols, |r, c| self[(row0 + r, col0 + c)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn neg(&self) -> QMat {
        QMat::from_fn(self.rows, self.cols, |r, c| -self[(r, c)])
    }

    pub fn mul(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.cols, rhs.rows, "quaternion matrix product shape");
        let mut out = QMat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self[(r, k)];
                if lhs == ZERO {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] = out[(r, c)] + quat_mul(lhs, rhs[(k, c)]);
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMat::from_fn(self.rows, self.cols, |r, c| self[(r, c)] - rhs[(r, c)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Write `M = A + j B` with complex `A`, `B` and return the 2r × 2r
    /// complex block matrix `[[A, -conj(B)], [B, conj(A)]]`.
    ///
    /// The map is an injective algebra homomorphism; unitary quaternion
    /// matrices land in the symplectic subgroup of `U_{2r}`.
    pub fn to_complex(&self) -> CMat {
        let (rows, cols) = (self.rows, self.cols);
        let mut out = CMat::zeros(2 * rows, 2 * cols);
        for r in 0..rows {
            for c in 0..cols {
                let (x, y) = self[(r, c)].complex_pair();
                out[(r, c)] = x;
                out[(r, cols + c)] = -y.conj();
                out[(rows + r, c)] = y;
                out[(rows + r, cols + c)] = x.conj();
            }
        }
        out
    }

    /// Inverse of [`QMat::to_complex`] on matrices of the symplectic block
    /// shape; the residual against that shape is returned alongside.
    pub fn from_complex(m: &CMat) -> (QMat, f64) {
        assert!(m.nrows().is_multiple_of(2) && m.ncols().is_multiple_of(2));
        let rows = m.nrows() / 2;
        let cols = m.ncols() / 2;
        let mut resid: f64 = 0.0;
        let q = QMat::from_fn(rows, cols, |r, c| {
            let x = m[(r, c)];
            let y = m[(rows + r, c)];
            resid = resid.max((m[(r, cols + c)] + y.conj()).norm());
            resid = resid.max((m[(rows + r, cols + c)] - x.conj()).norm());
            // q = x + j y with x = a+bi, y = c-di
            Quaternion::new(x.re, x.im, y.re, -y.im)
        });
        (q, resid)
    }

    /// Max-norm residual of `M Mᴴ - I`.
    pub fn unitary_residual(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        self.mul(&self.adjoint())
            .sub(&QMat::identity(self.rows))
            .max_abs()
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.cols + c]
    }
}
