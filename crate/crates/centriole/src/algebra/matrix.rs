//! Dense matrix carriers and group-membership predicates.
//!
//! The canonical computational form is a complex dense matrix ([`CMat`]);
//! real matrices are complex matrices with vanishing imaginary part and
//! quaternion matrices enter through the 2r × 2r block embedding. The tagged
//! [`Mat`] wrapper keeps track of which field a value came from so that
//! field-sensitive predicates can reject nonsensical queries.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::quaternion::QMat;
use crate::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type RMat = DMatrix<f64>;
pub type C = Complex64;

pub const C_ZERO: C = Complex64::new(0.0, 0.0);
pub const C_ONE: C = Complex64::new(1.0, 0.0);
pub const C_I: C = Complex64::new(0.0, 1.0);

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_real(m: &RMat) -> f64 {
    m.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Max-norm of `A - B`.
pub fn diff_norm(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "diff_norm shape");
    max_abs(&(a - b))
}

pub fn real_part(m: &CMat) -> RMat {
    RMat::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)].re)
}

pub fn imag_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}

pub fn to_complex(m: &RMat) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |r, c| C::new(m[(r, c)], 0.0))
}

pub fn conj(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

/// Residual of `M Mᴴ - I`.
pub fn unitary_residual(m: &CMat) -> f64 {
    let n = m.nrows();
    max_abs(&(m * m.adjoint() - CMat::identity(n, n)))
}

/// Residual of `M² + I`, the defining equation of a complex structure.
pub fn structure_residual(m: &CMat) -> f64 {
    let n = m.nrows();
    max_abs(&(m * m + CMat::identity(n, n)))
}

/// Residual of `MN + NM`.
pub fn anticommutator_norm(m: &CMat, n: &CMat) -> f64 {
    max_abs(&(m * n + n * m))
}

/// Residual of `MN - NM`.
pub fn commutator_norm(m: &CMat, n: &CMat) -> f64 {
    max_abs(&(m * n - n * m))
}

/// The skew-Hermitian part `(M - Mᴴ)/2`.
pub fn skew_part(m: &CMat) -> CMat {
    (m - m.adjoint()).scale(0.5)
}

/// `K_r = [[0, I_r], [-I_r, 0]]`, the matrix whose twisted conjugation cuts
/// the symplectic group out of `U_{2r}`.
pub fn k_block(r: usize) -> CMat {
    let mut k = CMat::zeros(2 * r, 2 * r);
    for i in 0..r {
        k[(i, r + i)] = C_ONE;
        k[(r + i, i)] = -C_ONE;
    }
    k
}

/// `A_r = diag(i I_r, -i I_r)`; its inner automorphism of `Sp_r` fixes `U_r`.
pub fn a_block(r: usize) -> CMat {
    let mut a = CMat::zeros(2 * r, 2 * r);
    for i in 0..r {
        a[(i, i)] = C_I;
        a[(r + i, r + i)] = -C_I;
    }
    a
}

/// Residual of the symplectic reality condition `K conj(M) K⁻¹ = M` on a
/// `2r × 2r` complex matrix.
pub fn symplectic_residual(m: &CMat) -> f64 {
    let r = m.nrows() / 2;
    let k = k_block(r);
    // K⁻¹ = -K = Kᵀ
    max_abs(&(&k * conj(m) * k.transpose() - m))
}

pub fn determinant(m: &CMat) -> C {
    m.clone().lu().determinant()
}

/// Inverse through LU; errors on numerically singular input.
pub fn inverse(m: &CMat) -> Result<CMat> {
    m.clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::Singular("matrix inverse".into()))
}

/// Scalar field a matrix is considered over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

/// A field-tagged matrix. Quaternion matrices are stored in the complex
/// block picture; `rows`/`cols` always refer to the stored complex shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub field: Field,
    pub m: CMat,
}

impl Mat {
    pub fn real(m: RMat) -> Self {
        Self {
            field: Field::Real,
            m: to_complex(&m),
        }
    }

    pub fn complex(m: CMat) -> Self {
        Self {
            field: Field::Complex,
            m,
        }
    }

    pub fn quaternion(q: &QMat) -> Self {
        Self {
            field: Field::Quaternion,
            m: q.to_complex(),
        }
    }

    pub fn c(&self) -> &CMat {
        &self.m
    }
}

/// Classical matrix groups recognised by [`is_in_group`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    O,
    SO,
    U,
    SU,
    Sp,
}

/// Tolerance test for membership in a classical group.
///
/// Orthogonal and unitary membership is `‖M Mᴴ - I‖∞ ≤ tol` plus a realness
/// check for O/SO and a determinant condition for SO/SU. The symplectic test
/// runs in the complex picture of an ℍ-linear map: unitarity together with
/// `K_r conj(M) K_r⁻¹ = M`.
pub fn is_in_group(m: &Mat, group: Group, tol: f64) -> Result<bool> {
    let mat = &m.m;
    if mat.nrows() != mat.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "group test needs a square matrix, got {}x{}",
            mat.nrows(),
            mat.ncols()
        )));
    }
    match group {
        Group::O | Group::SO => {
            if m.field != Field::Real {
                return Err(Error::FieldMismatch(format!(
                    "{group:?} test on a {:?} matrix",
                    m.field
                )));
            }
            let real_ok = imag_norm(mat) <= tol;
            let orth = unitary_residual(mat) <= tol;
            let det_ok = match group {
                Group::SO => (determinant(mat) - C_ONE).norm() <= tol.max(1e-9),
                _ => true,
            };
            Ok(real_ok && orth && det_ok)
        }
        Group::U | Group::SU => {
            if m.field == Field::Quaternion {
                return Err(Error::FieldMismatch(
                    "U test on a quaternion matrix; embed with quat_to_complex first".into(),
                ));
            }
            let unit = unitary_residual(mat) <= tol;
            let det_ok = match group {
                Group::SU => (determinant(mat) - C_ONE).norm() <= tol.max(1e-9),
                _ => true,
            };
            Ok(unit && det_ok)
        }
        Group::Sp => {
            if m.field == Field::Real {
                return Err(Error::FieldMismatch(
                    "Sp test on a real matrix; the test runs in the complex picture".into(),
                ));
            }
            if !mat.nrows().is_multiple_of(2) {
                return Err(Error::DimensionMismatch(
                    "Sp test needs an even complex dimension".into(),
                ));
            }
            Ok(unitary_residual(mat) <= tol && symplectic_residual(mat) <= tol)
        }
    }
}

/// JSON form of a matrix: a row-major array of rows with a field tag.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    /// Each entry is `[re, im]`.
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn of(m: &Mat) -> Self {
        Self::of_complex(&m.m, m.field)
    }

    pub fn of_complex(m: &CMat, field: Field) -> Self {
        let entries = (0..m.nrows())
            .map(|r| {
                (0..m.ncols())
                    .map(|c| [m[(r, c)].re, m[(r, c)].im])
                    .collect()
            })
            .collect();
        Self {
            field,
            rows: m.nrows(),
            cols: m.ncols(),
            entries,
        }
    }

    pub fn to_complex(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |r, c| {
            C::new(self.entries[r][c][0], self.entries[r][c][1])
        })
    }
}

/// Hermitian projection with a given column space.
pub fn projector_onto(columns: &CMat) -> CMat {
    columns * columns.adjoint()
}

/// Orthonormalize the columns of `m` by modified Gram-Schmidt, dropping
/// columns that fall below `tol` after projection.
pub fn orthonormal_columns(m: &CMat, tol: f64) -> CMat {
    let mut cols: Vec<DVector<C>> = Vec::new();
    for j in 0..m.ncols() {
        let mut v: DVector<C> = m.column(j).into();
        for u in &cols {
            let coef = u.dotc(&v);
            v -= u * coef;
        }
        let n = v.norm();
        if n > tol {
            cols.push(v / C::new(n, 0.0));
        }
    }
    let mut out = CMat::zeros(m.nrows(), cols.len());
    for (j, v) in cols.iter().enumerate() {
        out.set_column(j, v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quaternion::{self, QMat};

    #[test]
    fn identity_is_unitary() {
        let m = Mat::complex(CMat::identity(4, 4));
        assert!(is_in_group(&m, Group::U, 1e-10).unwrap());
    }

    #[test]
    fn rotation_is_special_orthogonal() {
        let r = RMat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let m = Mat::real(r);
        assert!(is_in_group(&m, Group::SO, 1e-10).unwrap());
    }

    #[test]
    fn diag_i_minus_i_is_symplectic() {
        // A_1 = diag(i, -i): K_1 conj(A_1) K_1⁻¹ = diag(i, -i) = A_1.
        let a = a_block(1);
        assert!(symplectic_residual(&a) < 1e-15);
        let m = Mat {
            field: Field::Complex,
            m: a,
        };
        assert!(is_in_group(&m, Group::Sp, 1e-10).unwrap());
    }

    #[test]
    fn sp_rejects_real_field() {
        let m = Mat::real(RMat::identity(2, 2));
        assert!(matches!(
            is_in_group(&m, Group::Sp, 1e-10),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn adjoint_is_antihomomorphism() {
        let a = QMat::from_fn(2, 2, |r, c| {
            quaternion::Quaternion::new(r as f64, c as f64 + 0.5, 1.0, -0.25)
        });
        let b = QMat::from_fn(2, 2, |r, c| {
            quaternion::Quaternion::new(1.0 - r as f64, 0.5, c as f64, 2.0)
        });
        let lhs = a.mul(&b).adjoint();
        let rhs = b.adjoint().mul(&a.adjoint());
        assert!(lhs.sub(&rhs).max_abs() < 1e-12);
        let back = a.adjoint().adjoint();
        assert!(back.sub(&a).max_abs() < 1e-15);
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = CMat::from_row_slice(2, 2, &[C_ONE, C_I, -C_I, C_ZERO]);
        let js = MatrixJson::of_complex(&m, Field::Complex);
        let txt = serde_json::to_string(&js).unwrap();
        let back: MatrixJson = serde_json::from_str(&txt).unwrap();
        assert_eq!(js, back);
        assert_eq!(back.to_complex(), m);
    }
}
