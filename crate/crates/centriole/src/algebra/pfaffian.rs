//! Pfaffian signs through skew-symmetric Householder tridiagonalization.
//!
//! Conjugating a skew matrix by a Householder reflection multiplies the
//! Pfaffian by the reflection's determinant (-1), so the sign of the
//! original Pfaffian is the product of the tridiagonal superdiagonal signs
//! times `(-1)^reflections`. The sign tags the two connected components of
//! the space of orthogonal complex structures.

use crate::algebra::matrix::{max_abs_real, RMat};
use crate::{Error, Result};

/// Sign of the Pfaffian of an even-dimensional, nonsingular real
/// skew-symmetric matrix.
pub fn pfaffian_sign(a: &RMat, tol: f64) -> Result<i8> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "pfaffian of a {}x{} matrix",
            n,
            a.ncols()
        )));
    }
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    let skew_resid = max_abs_real(&(a + a.transpose()));
    let scale = max_abs_real(a).max(1.0);
    if skew_resid > tol * scale {
        return Err(Error::NotSkew(skew_resid));
    }
    if n == 0 {
        return Ok(1);
    }

    // Work on the skew-symmetrized copy.
    let mut w = (a - a.transpose()).scale(0.5);
    let mut flips = 0usize;

    for k in 0..n - 2 {
        let m = n - k - 1;
        let mut x = vec![0.0f64; m];
        for i in 0..m {
            x[i] = w[(k + 1 + i, k)];
        }
        let norm_x = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm_x <= tol * scale {
            continue; // column already reduced; a vanishing Pfaffian is
                      // caught by the final superdiagonal scan
        }
        // Householder vector sending x to ∓‖x‖ e₁.
        let mut v = x.clone();
        let alpha = if v[0] >= 0.0 { norm_x } else { -norm_x };
        v[0] += alpha;
        let vv: f64 = v.iter().map(|t| t * t).sum();
        if vv <= (tol * scale).powi(2) {
            continue; // already in position, no reflection applied
        }
        flips += 1;
        // Apply P = I - 2 v vᵀ / (vᵀv) to rows and columns k+1..n.
        // Rows: W ← P W  on the trailing block.
        for col in 0..n {
            let mut dot = 0.0;
            for i in 0..m {
                dot += v[i] * w[(k + 1 + i, col)];
            }
            let f = 2.0 * dot / vv;
            for i in 0..m {
                w[(k + 1 + i, col)] -= f * v[i];
            }
        }
        // Columns: W ← W P.
        for row in 0..n {
            let mut dot = 0.0;
            for i in 0..m {
                dot += w[(row, k + 1 + i)] * v[i];
            }
            let f = 2.0 * dot / vv;
            for i in 0..m {
                w[(row, k + 1 + i)] -= f * v[i];
            }
        }
    }

    let mut sign = if flips.is_multiple_of(2) { 1i8 } else { -1i8 };
    let mut i = 0;
    while i + 1 < n {
        let t = w[(i, i + 1)];
        if t.abs() <= tol * scale {
            return Err(Error::Singular(format!(
                "tridiagonal entry ({i},{}) is numerically zero",
                i + 1
            )));
        }
        if t < 0.0 {
            sign = -sign;
        }
        i += 2;
    }
    Ok(sign)
}
