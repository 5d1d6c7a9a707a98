//! Field-change embeddings: ℝ → ℂ, ℂ → ℝ-doubled, ℂ → ℍ and back.

use crate::algebra::eigen;
use crate::algebra::matrix::{
    imag_norm, max_abs, structure_residual, to_complex, unitary_residual, CMat, RMat, C_I,
};
use crate::algebra::quaternion::{QMat, Quaternion};
use crate::{Error, Result};

/// Entrywise complexification of a real matrix. Orthogonal maps become
/// unitary because the extension acts as `A(u + iv) = A(u) + i A(v)`.
pub fn complexify_real(m: &RMat) -> CMat {
    to_complex(m)
}

/// Realification of a complex `r × r` matrix under `ℂ^r = ℝ^r ⊕ iℝ^r`,
/// with all real coordinates listed first:
/// `[[Re M, -Im M], [Im M, Re M]]`. Unitary maps land in `SO_{2r}`.
pub fn realify_complex(m: &CMat) -> RMat {
    let (r, c) = m.shape();
    let mut out = RMat::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = m[(i, j)];
            out[(i, j)] = z.re;
            out[(i, c + j)] = -z.im;
            out[(r + i, j)] = z.im;
            out[(r + i, c + j)] = z.re;
        }
    }
    out
}

/// The quaternion matrix realizing `A^h(v + jw) = Av + j(conj(A) w)` on
/// ℍ^r = ℂ^r ⊕ jℂ^r, for unitary `A`. Lands in `Sp_r`.
pub fn left_quat_rep(a: &CMat, tol: f64) -> Result<QMat> {
    let resid = unitary_residual(a);
    if resid > tol {
        return Err(Error::NotUnitary(resid));
    }
    Ok(QMat::from_fn(a.nrows(), a.ncols(), |r, c| {
        Quaternion::from_complex(a[(r, c)])
    }))
}

/// Complex picture of [`left_quat_rep`]: the block-diagonal `diag(A, conj A)`.
pub fn left_quat_rep_complex(a: &CMat, tol: f64) -> Result<CMat> {
    Ok(left_quat_rep(a, tol)?.to_complex())
}

/// The Hermitian projection `P = (I - iJ)/2` onto the `+i` eigenspace of a
/// complex structure `J`.
pub fn structure_to_projection(j: &CMat, tol: f64) -> Result<CMat> {
    let resid = structure_residual(j).max(unitary_residual(j));
    if resid > tol {
        return Err(Error::NotStructure(format!(
            "J² + I or unitarity residual {resid:.3e} exceeds {tol:.1e}"
        )));
    }
    let n = j.nrows();
    Ok((CMat::identity(n, n) - j * C_I).scale(0.5))
}

/// Inverse of [`structure_to_projection`]: `J = i(2P - I)`.
pub fn projection_to_structure(p: &CMat, tol: f64) -> Result<CMat> {
    let herm = max_abs(&(p - p.adjoint()));
    let idem = max_abs(&(p * p - p));
    if herm.max(idem) > tol {
        return Err(Error::NotStructure(format!(
            "projection residual {:.3e} exceeds {tol:.1e}",
            herm.max(idem)
        )));
    }
    let n = p.nrows();
    Ok((p.scale(2.0) - CMat::identity(n, n)) * C_I)
}

/// Matrix exponential of a skew matrix over any of the three fields.
///
/// Real input must be skew-symmetric and returns a real rotation (as a
/// complex matrix with vanishing imaginary part); quaternionic input is
/// routed through the complex block embedding.
pub fn exp_skew(x: &crate::algebra::matrix::Mat, tol: f64) -> Result<crate::algebra::matrix::Mat> {
    use crate::algebra::matrix::{Field, Mat};
    let e = eigen::exp_skew_hermitian(&x.m, tol)?;
    match x.field {
        Field::Real => {
            let ghost = imag_norm(&e);
            debug_assert!(ghost < 1e-10, "exp of a real skew matrix drifted complex");
            Ok(Mat {
                field: Field::Real,
                m: to_complex(&crate::algebra::matrix::real_part(&e)),
            })
        }
        f => Ok(Mat { field: f, m: e }),
    }
}

/// Eigenvalues of the complexification of a real rotation by `θ` are
/// `e^{±iθ}`; used as a cross-check oracle in tests.
pub fn rotation2(theta: f64) -> RMat {
    RMat::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::{determinant, diff_norm, C, C_ONE};
    use crate::algebra::{haar, quaternion};
    use crate::rng::stream;

    #[test]
    fn complexify_identity() {
        let m = complexify_real(&RMat::identity(2, 2));
        assert!(diff_norm(&m, &CMat::identity(2, 2)) < 1e-15);
    }

    #[test]
    fn complexified_rotation_is_unitary_with_expected_spectrum() {
        let theta = 0.73;
        let m = complexify_real(&rotation2(theta));
        assert!(unitary_residual(&m) < 1e-14);
        // Oracle: roots of λ² - 2cosθ λ + 1, i.e. e^{±iθ}.
        let angles = eigen::eigenangles(&m, 1e-12).unwrap();
        assert!((angles[0] + theta).abs() < 1e-12);
        assert!((angles[1] - theta).abs() < 1e-12);
    }

    #[test]
    fn realify_scalar_i() {
        let i1 = CMat::from_row_slice(1, 1, &[C_I]);
        let m = realify_complex(&i1);
        let expect = RMat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert!((m - expect).abs().max() < 1e-15);
    }

    #[test]
    fn realify_identity() {
        let m = realify_complex(&CMat::identity(3, 3));
        assert!((m - RMat::identity(6, 6)).abs().max() < 1e-15);
    }

    #[test]
    fn realified_unitaries_are_special_orthogonal() {
        for idx in 0..50u64 {
            let mut rng = stream(11, "realify-det", idx);
            let u = haar::random_unitary(4, &mut rng);
            let r = realify_complex(&u);
            let det = determinant(&to_complex(&r));
            assert!(
                (det - C_ONE).norm() < 1e-10,
                "det residual {} at sample {idx}",
                (det - C_ONE).norm()
            );
        }
    }

    #[test]
    fn left_quat_rep_of_scalar_i() {
        // A = (i): A^h(1) = i, A^h(j) = j·conj(i)·1 = k; left multiplication
        // by the unit quaternion i does exactly that.
        let a = CMat::from_row_slice(1, 1, &[C_I]);
        let rep = left_quat_rep(&a, 1e-12).unwrap();
        let one = quaternion::ONE;
        let jq = quaternion::J;
        let img1 = quaternion::quat_mul(rep[(0, 0)], one);
        let imgj = quaternion::quat_mul(rep[(0, 0)], jq);
        assert!((img1 - quaternion::I).norm() < 1e-15);
        assert!((imgj - quaternion::K).norm() < 1e-15);
    }

    #[test]
    fn left_quat_rep_of_identity() {
        let rep = left_quat_rep(&CMat::identity(3, 3), 1e-12).unwrap();
        assert!(rep.sub(&QMat::identity(3)).max_abs() < 1e-15);
    }

    #[test]
    fn left_quat_rep_lands_in_sp() {
        for idx in 0..10u64 {
            let mut rng = stream(3, "lqr-sp", idx);
            let a = haar::random_unitary(3, &mut rng);
            let c = left_quat_rep_complex(&a, 1e-10).unwrap();
            assert!(unitary_residual(&c) < 1e-10);
            assert!(crate::algebra::matrix::symplectic_residual(&c) < 1e-10);
        }
    }

    #[test]
    fn left_quat_rep_rejects_non_unitary() {
        let a = CMat::identity(2, 2) * C::new(3.0, 0.0);
        assert!(left_quat_rep(&a, 1e-10).is_err());
    }

    #[test]
    fn projection_round_trip_and_example() {
        let j = CMat::from_diagonal(&nalgebra::DVector::from_row_slice(&[C_I, -C_I]));
        let p = structure_to_projection(&j, 1e-12).unwrap();
        let expect = CMat::from_row_slice(
            2,
            2,
            &[C_ONE, C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)],
        );
        assert!(diff_norm(&p, &expect) < 1e-15);
        let back = projection_to_structure(&p, 1e-12).unwrap();
        assert!(diff_norm(&back, &j) < 1e-15);
    }

    #[test]
    fn projection_of_conjugated_block_structure() {
        // P(U A_q U⁻¹) = U diag(I_q, 0) U⁻¹
        let q = 3;
        let mut rng = stream(5, "proj-conj", 0);
        let u = haar::random_unitary(2 * q, &mut rng);
        let a = crate::algebra::matrix::a_block(q);
        let j = &u * &a * u.adjoint();
        let p = structure_to_projection(&j, 1e-10).unwrap();
        let mut d = CMat::zeros(2 * q, 2 * q);
        for i in 0..q {
            d[(i, i)] = C_ONE;
        }
        let expect = &u * d * u.adjoint();
        assert!(diff_norm(&p, &expect) < 1e-11);
    }

    #[test]
    fn structure_to_projection_rejects_non_structure() {
        let m = CMat::identity(2, 2);
        assert!(structure_to_projection(&m, 1e-10).is_err());
    }
}
