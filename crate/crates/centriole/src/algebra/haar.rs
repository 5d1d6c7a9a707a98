//! Random elements of the classical groups and their Lie algebras.
//!
//! Unitary and orthogonal samples come from QR of a Gaussian matrix with the
//! phase of the triangular factor absorbed, symplectic samples from a
//! quaternion Gram-Schmidt; all draw from caller-provided streams.

use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::matrix::{real_part, to_complex, CMat, RMat, C};
use crate::algebra::quaternion::{QMat, Quaternion, ZERO};

pub fn gaussian_complex(rows: usize, cols: usize, rng: &mut impl Rng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        C::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn gaussian_real(rows: usize, cols: usize, rng: &mut impl Rng) -> RMat {
    RMat::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

pub fn gaussian_quaternion(rows: usize, cols: usize, rng: &mut impl Rng) -> QMat {
    QMat::from_fn(rows, cols, |_, _| {
        Quaternion::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        )
    })
}

/// Haar-distributed unitary via QR with the diagonal phase fix.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> CMat {
    let g = gaussian_complex(n, n, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / C::new(d.norm(), 0.0)
        } else {
            C::new(1.0, 0.0)
        };
        let col = q.column(j) * phase;
        q.set_column(j, &col);
    }
    q
}

/// Haar-distributed special orthogonal matrix: real QR, sign fix, and a
/// final column flip when the determinant lands at -1.
pub fn random_special_orthogonal(n: usize, rng: &mut impl Rng) -> RMat {
    let g = gaussian_real(n, n, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            let col = -q.column(j);
            q.set_column(j, &col);
        }
    }
    if q.determinant() < 0.0 {
        let col = -q.column(0);
        q.set_column(0, &col);
    }
    q
}

/// Random element of `Sp_r` as a quaternion matrix: Gram-Schmidt on the
/// columns of a quaternion Gaussian, with coefficients acting from the right.
#[allow(clippy::needless_range_loop)]
pub fn random_symplectic(r: usize, rng: &mut impl Rng) -> QMat {
    let g = gaussian_quaternion(r, r, rng);
    let mut cols: Vec<Vec<Quaternion>> = (0..r)
        .map(|j| (0..r).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..r {
        for prev in 0..j {
            // coefficient <u, v> = Σ conj(u_i) v_i; subtract u * coef (right action)
            let mut coef = ZERO;
            for i in 0..r {
                coef = coef + cols[prev][i].conj() * cols[j][i];
            }
            for i in 0..r {
                let s = cols[prev][i] * coef;
                cols[j][i] = cols[j][i] - s;
            }
        }
        let norm: f64 = cols[j].iter().map(|q| q.norm_sq()).sum::<f64>().sqrt();
        for q in cols[j].iter_mut() {
            *q = q.scale(1.0 / norm);
        }
    }
    QMat::from_fn(r, r, |i, j| cols[j][i])
}

/// Random skew-Hermitian matrix, Frobenius-normalized to `scale`.
pub fn random_skew_hermitian(n: usize, scale: f64, rng: &mut impl Rng) -> CMat {
    let g = gaussian_complex(n, n, rng);
    let s = (&g - g.adjoint()).scale(0.5);
    let norm = s.norm();
    s.scale(scale / norm)
}

/// Random real skew-symmetric matrix, Frobenius-normalized to `scale`.
pub fn random_skew_symmetric(n: usize, scale: f64, rng: &mut impl Rng) -> RMat {
    let g = gaussian_real(n, n, rng);
    let s = (&g - g.transpose()).scale(0.5);
    let norm = s.norm();
    s.scale(scale / norm)
}

/// Random skew-Hermitian element of the symplectic Lie algebra in the
/// complex `2r × 2r` picture, Frobenius-normalized.
pub fn random_skew_symplectic(r: usize, scale: f64, rng: &mut impl Rng) -> CMat {
    use crate::algebra::matrix::{conj, k_block, skew_part};
    let g = gaussian_complex(2 * r, 2 * r, rng);
    let k = k_block(r);
    let s = skew_part(&g);
    let sym = (&s + &k * conj(&s) * k.transpose()).scale(0.5);
    let norm = sym.norm();
    sym.scale(scale / norm)
}

/// Real part view used when a nominally real complex matrix must be handed
/// to a real-only API.
pub fn as_real(m: &CMat) -> RMat {
    real_part(m)
}

pub fn as_complex(m: &RMat) -> CMat {
    to_complex(m)
}

/// Random unit tangent for a metric given by `‖X‖² = s·‖X‖_F²`.
pub fn unit_tangent(x: CMat, scale: f64) -> CMat {
    let norm = (scale.sqrt()) * x.norm();
    x.scale(1.0 / norm)
}

/// Random point on the unit sphere of ℂ^n (used for witness vectors).
pub fn random_unit_vector(n: usize, rng: &mut impl Rng) -> DVector<C> {
    let v = DVector::from_fn(n, |_, _| {
        C::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let norm = v.norm();
    v / C::new(norm, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::{symplectic_residual, unitary_residual};
    use crate::rng::stream;

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = stream(1, "haar-u", 0);
        let u = random_unitary(8, &mut rng);
        assert!(unitary_residual(&u) < 1e-12);
    }

    #[test]
    fn random_so_has_unit_determinant() {
        let mut rng = stream(1, "haar-so", 0);
        let q = random_special_orthogonal(7, &mut rng);
        assert!((q.determinant() - 1.0).abs() < 1e-10);
        assert!((q.transpose() * &q - RMat::identity(7, 7)).abs().max() < 1e-12);
    }

    #[test]
    fn random_sp_is_symplectic_unitary() {
        let mut rng = stream(1, "haar-sp", 0);
        let s = random_symplectic(3, &mut rng);
        assert!(s.unitary_residual() < 1e-12);
        let c = s.to_complex();
        assert!(unitary_residual(&c) < 1e-12);
        assert!(symplectic_residual(&c) < 1e-12);
    }

    #[test]
    fn symplectic_skew_lies_in_lie_algebra() {
        let mut rng = stream(1, "haar-sp-skew", 0);
        let x = random_skew_symplectic(3, 1.0, &mut rng);
        assert!(crate::algebra::eigen::skew_residual(&x) < 1e-12);
        use crate::algebra::matrix::{conj, k_block};
        let k = k_block(3);
        assert!(crate::algebra::matrix::max_abs(&(&k * conj(&x) * k.transpose() - &x)) < 1e-12);
    }
}
