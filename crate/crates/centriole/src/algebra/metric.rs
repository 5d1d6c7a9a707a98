//! Bi-invariant metrics `⟨X, Y⟩ = -s·tr(XY)` and geodesic distance.

use serde::{Deserialize, Serialize};

use crate::algebra::eigen::eigenangles;
use crate::algebra::matrix::CMat;
use crate::{Error, Result};

/// The scale `s` of the inner product `⟨X, Y⟩ = -s·tr(XY)` on a Lie algebra
/// of skew-Hermitian matrices (where it equals `s·‖X‖_F²`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSpec {
    pub scale: f64,
}

impl MetricSpec {
    pub const fn new(scale: f64) -> Self {
        Self { scale }
    }

    /// `-tr(XY)` on the orthogonal and unitary Lie algebras.
    pub const STANDARD: MetricSpec = MetricSpec::new(1.0);

    /// `-tr(XY)/2` on `u_{2r}`, whose restriction to the symplectic
    /// subalgebra is the standard metric of `Sp_r`.
    pub const SP_HALF_TRACE: MetricSpec = MetricSpec::new(0.5);

    /// Alternate reading of the symplectic normalization kept wired for
    /// cross-checks of the scaling factors.
    pub const SP_ALTERNATE: MetricSpec = MetricSpec::new(1.0);

    /// Squared norm of a skew-Hermitian tangent.
    pub fn norm_sq(&self, x: &CMat) -> f64 {
        self.scale * x.norm().powi(2)
    }

    pub fn norm(&self, x: &CMat) -> f64 {
        self.norm_sq(x).sqrt()
    }
}

/// Riemannian distance between two group elements under a bi-invariant
/// metric: `sqrt(s · Σ θ_j²)` over the principal eigenangles of `A⁻¹B`.
pub fn geodesic_distance(a: &CMat, b: &CMat, metric: MetricSpec, tol: f64) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "distance between {}x{} and {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let rel = a.adjoint() * b;
    let angles = eigenangles(&rel, tol)?;
    let sum: f64 = angles.iter().map(|t| t * t).sum();
    Ok((metric.scale * sum).sqrt())
}
