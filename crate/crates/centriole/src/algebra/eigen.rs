//! Eigen-machinery for normal matrices, built on a Hermitian solver only.
//!
//! Skew-Hermitian matrices are diagonalized through `H = -iX`; unitary
//! matrices through the commuting Hermitian pair `(M + Mᴴ)/2, (M - Mᴴ)/(2i)`,
//! which is simultaneously diagonalized by clustering the first factor and
//! re-diagonalizing the second inside each cluster. This avoids a general
//! nonsymmetric eigensolver entirely.

use nalgebra::DVector;

use crate::algebra::matrix::{max_abs, unitary_residual, CMat, C, C_I};
use crate::{Error, Result};

/// Eigenvalues (ascending) and a deterministic orthonormal eigenbasis of a
/// Hermitian matrix.
///
/// The library solver is used as a warm start and then polished by cyclic
/// complex Jacobi rotations until the off-diagonal mass reaches machine
/// precision; the stock solver alone can leave residuals near `1e-8` on
/// matrices with repeated eigenvalues, far above the tolerances used here.
pub fn hermitian_eigen(h: &CMat) -> (Vec<f64>, CMat) {
    let n = h.nrows();
    let se = h.clone().symmetric_eigen();
    let mut v = se.eigenvectors;
    let mut b = v.adjoint() * h * &v;

    let scale = max_abs(h).max(1e-300);
    let thresh = 1e-15 * scale;
    for _sweep in 0..30 {
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                worst = worst.max(b[(p, q)].norm());
            }
        }
        if worst <= thresh {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = b[(p, q)];
                if g.norm() <= thresh {
                    continue;
                }
                // Unitary 2x2 rotation zeroing b[p][q].
                let app = b[(p, p)].re;
                let aqq = b[(q, q)].re;
                let phase = g / C::new(g.norm(), 0.0);
                let tau = (aqq - app) / (2.0 * g.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let cs = C::new(c, 0.0);
                let sp = phase * C::new(s, 0.0);
                // Columns p, q of B and V: right-multiply by R.
                for i in 0..n {
                    let bip = b[(i, p)];
                    let biq = b[(i, q)];
                    b[(i, p)] = bip * cs - biq * sp.conj();
                    b[(i, q)] = bip * sp + biq * cs;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * cs - viq * sp.conj();
                    v[(i, q)] = vip * sp + viq * cs;
                }
                // Rows p, q of B: left-multiply by Rᴴ.
                for jcol in 0..n {
                    let bpj = b[(p, jcol)];
                    let bqj = b[(q, jcol)];
                    b[(p, jcol)] = bpj * cs - bqj * sp;
                    b[(q, jcol)] = bpj * sp.conj() + bqj * cs;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &bb| b[(a, a)].re.total_cmp(&b[(bb, bb)].re));
    let mut vals = Vec::with_capacity(n);
    let mut vecs = CMat::zeros(n, n);
    for (j, &idx) in order.iter().enumerate() {
        vals.push(b[(idx, idx)].re);
        let col: DVector<C> = v.column(idx).into();
        vecs.set_column(j, &phase_fix(col));
    }
    (vals, vecs)
}

/// Rotate a unit vector so its largest-modulus entry is real positive;
/// ties break at the lowest index. Keeps eigenbases reproducible.
fn phase_fix(mut v: DVector<C>) -> DVector<C> {
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        let n = z.norm();
        if n > best_norm + 1e-14 {
            best_norm = n;
            best = i;
        }
    }
    if best_norm > 0.0 {
        let phase = v[best] / C::new(best_norm, 0.0);
        v /= phase;
    }
    v
}

/// Verify `X` is skew-Hermitian within `tol` and return the residual.
pub fn skew_residual(x: &CMat) -> f64 {
    max_abs(&(x + x.adjoint()))
}

/// Matrix exponential of a skew-Hermitian matrix via the Hermitian solver.
pub fn exp_skew_hermitian(x: &CMat, tol: f64) -> Result<CMat> {
    let resid = skew_residual(x);
    if resid > tol {
        return Err(Error::NotSkew(resid));
    }
    let h = x * (-C_I);
    let (vals, v) = hermitian_eigen(&h);
    let d = CMat::from_diagonal(&DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&t| (C_I * C::new(t, 0.0)).exp()),
    ));
    Ok(&v * d * v.adjoint())
}

/// Eigenangles `θ_j ∈ (-π, π]` and a joint eigenbasis of a unitary matrix.
///
/// Angles within `branch_tol` of `-π` are folded to `+π`, which pins the
/// logarithm branch at the antipode deterministically.
pub fn unitary_eigen(m: &CMat, tol: f64) -> Result<(Vec<f64>, CMat)> {
    let resid = unitary_residual(m);
    if resid > tol {
        return Err(Error::NotUnitary(resid));
    }
    let n = m.nrows();
    let adj = m.adjoint();
    let h = (m + &adj).scale(0.5);
    let k = (m - &adj) * C::new(0.0, -0.5);
    let (hvals, hvecs) = hermitian_eigen(&h);

    // Cluster equal cosine parts, then split each cluster by the sine part.
    let cluster_tol = (10.0 * tol).max(1e-8);
    let mut angles = vec![0.0f64; n];
    let mut basis = CMat::zeros(n, n);
    let mut start = 0usize;
    while start < n {
        let mut end = start + 1;
        while end < n && (hvals[end] - hvals[end - 1]).abs() <= cluster_tol {
            end += 1;
        }
        let width = end - start;
        let block = hvecs.columns(start, width).into_owned();
        let small = block.adjoint() * &k * &block;
        let (svals, svecs) = hermitian_eigen(&small);
        let refined = &block * &svecs;
        for j in 0..width {
            let col = refined.column(j).into_owned();
            let cos_part = {
                let hv = &h * &col;
                col.dotc(&hv).re
            };
            let mut theta = svals[j].atan2(cos_part);
            if theta <= -std::f64::consts::PI + 1e-9 {
                theta += 2.0 * std::f64::consts::PI;
            }
            angles[start + j] = theta;
            basis.set_column(start + j, &phase_fix(col));
        }
        start = end;
    }
    Ok((angles, basis))
}

/// Principal eigenangles of a unitary matrix, ascending.
pub fn eigenangles(m: &CMat, tol: f64) -> Result<Vec<f64>> {
    let (mut angles, _) = unitary_eigen(m, tol)?;
    angles.sort_by(f64::total_cmp);
    Ok(angles)
}

/// Principal logarithm of a unitary matrix: the unique skew-Hermitian `X`
/// with `exp(X) = M` and all eigenangles in `(-π, π]`.
pub fn log_unitary_principal(m: &CMat, tol: f64) -> Result<CMat> {
    let (angles, v) = unitary_eigen(m, tol)?;
    let d = CMat::from_diagonal(&DVector::from_iterator(
        angles.len(),
        angles.iter().map(|&t| C_I * C::new(t, 0.0)),
    ));
    Ok(&v * d * v.adjoint())
}

/// True when some eigenangle of `M` lies within `guard` of the `±π` branch
/// cut. Midpoint constructions resample in that case.
pub fn near_branch_cut(m: &CMat, tol: f64, guard: f64) -> Result<bool> {
    let angles = eigenangles(m, tol)?;
    Ok(angles
        .iter()
        .any(|&t| (t.abs() - std::f64::consts::PI).abs() < guard))
}
