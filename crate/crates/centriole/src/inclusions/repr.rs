//! Matrix representations of the classical symmetric spaces that the
//! sixteen standard inclusions connect.
//!
//! Group quotients are carried as the concrete matrix sets they are usually
//! identified with: Grassmannians in both the structure picture (`J² = -I`)
//! and the Hermitian projection picture, real forms `U_r/O_r` as symmetric
//! unitaries, complex forms `Sp_r/U_r` as projections complementary to
//! their quaternionic twist. The quaternionic twist is the antilinear map
//! `Θ(x) = K conj(x)`; as a matrix condition it reads `K conj(P) K⁻¹`.

use rand::Rng;

use crate::algebra::haar;
use crate::algebra::matrix::{
    a_block, conj, imag_norm, k_block, max_abs, structure_residual, to_complex, unitary_residual,
    CMat, C_ONE,
};
use crate::algebra::realify_complex;
use crate::{Error, Result};

/// A representation space for inclusion domains and codomains. The `m`
/// parameters always give the stored matrix dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Repr {
    /// Real orthogonal `m × m`; `special` adds the determinant condition.
    OrthogonalGroup { m: usize, special: bool },
    /// Complex unitary `m × m`.
    UnitaryGroup { m: usize },
    /// `Sp_r` in its complex `2r × 2r` picture.
    SymplecticGroup { r: usize },
    /// Real orthogonal complex structures on ℝ^m (the space `O_m/U_{m/2}`).
    OrthStructure { m: usize },
    /// Real structures on ℝ^m anticommuting with the fixed structure
    /// `[[0, -I], [I, 0]]` (the space `U_{m/2}/Sp_{m/4}`).
    OrthStructureAnti { m: usize },
    /// Complex structures in `U_m` anticommuting with `A_{m/2}`
    /// (again `U_m/Sp_{m/2}`, in the complex picture).
    UnitStructureAnti { m: usize },
    /// Trace-zero complex structures in `U_m`: the Grassmannian
    /// `G_{m/2}(ℂ^m)` in the structure picture.
    GrassStructure { m: usize },
    /// Complex Hermitian projection of the given rank.
    ProjC { m: usize, rank: usize },
    /// Real symmetric projection.
    ProjR { m: usize, rank: usize },
    /// Projection commuting with the quaternionic twist: an ℍ-submodule,
    /// i.e. a point of a quaternionic Grassmannian.
    ProjQuatInvariant { m: usize, rank: usize },
    /// Projection with `Θ P Θ⁻¹ = I - P`: a complex form of ℍ^{m/2}
    /// (the space `Sp_{m/2}/U_{m/2}`).
    ComplexFormProj { m: usize },
    /// Symmetric unitaries `S = Sᵀ ∈ U_m`: the real forms `U_m/O_m`.
    SymmetricUnitary { m: usize },
}

impl Repr {
    pub fn dim(&self) -> usize {
        match *self {
            Repr::OrthogonalGroup { m, .. }
            | Repr::UnitaryGroup { m }
            | Repr::OrthStructure { m }
            | Repr::OrthStructureAnti { m }
            | Repr::UnitStructureAnti { m }
            | Repr::GrassStructure { m }
            | Repr::ProjC { m, .. }
            | Repr::ProjR { m, .. }
            | Repr::ProjQuatInvariant { m, .. }
            | Repr::ComplexFormProj { m }
            | Repr::SymmetricUnitary { m } => m,
            Repr::SymplecticGroup { r } => 2 * r,
        }
    }

    /// Max-norm residual of the defining predicate.
    pub fn residual(&self, x: &CMat) -> f64 {
        if x.nrows() != self.dim() || x.ncols() != self.dim() {
            return f64::INFINITY;
        }
        let m = x.nrows();
        let idem = || max_abs(&(x * x - x));
        let herm = || max_abs(&(x - x.adjoint()));
        let rank_resid = |rank: usize| (x.trace().re - rank as f64).abs().max(x.trace().im.abs());
        match *self {
            Repr::OrthogonalGroup { special, .. } => {
                let mut r = unitary_residual(x).max(imag_norm(x));
                if special {
                    r = r.max((crate::algebra::matrix::determinant(x) - C_ONE).norm());
                }
                r
            }
            Repr::UnitaryGroup { .. } => unitary_residual(x),
            Repr::SymplecticGroup { .. } => {
                unitary_residual(x).max(crate::algebra::matrix::symplectic_residual(x))
            }
            Repr::OrthStructure { .. } => structure_residual(x)
                .max(unitary_residual(x))
                .max(imag_norm(x)),
            Repr::OrthStructureAnti { .. } => {
                let j0 = to_complex(&realify_complex(
                    &(CMat::identity(m / 2, m / 2) * crate::algebra::matrix::C_I),
                ));
                structure_residual(x)
                    .max(unitary_residual(x))
                    .max(imag_norm(x))
                    .max(crate::algebra::matrix::anticommutator_norm(x, &j0))
            }
            Repr::UnitStructureAnti { .. } => {
                let a = a_block(m / 2);
                structure_residual(x)
                    .max(unitary_residual(x))
                    .max(crate::algebra::matrix::anticommutator_norm(x, &a))
            }
            Repr::GrassStructure { .. } => structure_residual(x)
                .max(unitary_residual(x))
                .max(x.trace().norm()),
            Repr::ProjC { rank, .. } => idem().max(herm()).max(rank_resid(rank)),
            Repr::ProjR { rank, .. } => idem().max(herm()).max(imag_norm(x)).max(rank_resid(rank)),
            Repr::ProjQuatInvariant { rank, .. } => {
                let k = k_block(m / 2);
                idem()
                    .max(herm())
                    .max(rank_resid(rank))
                    .max(max_abs(&(&k * conj(x) * k.transpose() - x)))
            }
            Repr::ComplexFormProj { .. } => {
                let k = k_block(m / 2);
                let compl = CMat::identity(m, m) - x;
                idem()
                    .max(herm())
                    .max(rank_resid(m / 2))
                    .max(max_abs(&(&k * conj(x) * k.transpose() - compl)))
            }
            Repr::SymmetricUnitary { .. } => unitary_residual(x).max(max_abs(&(x - x.transpose()))),
        }
    }

    pub fn validate(&self, x: &CMat, tol: f64) -> Result<()> {
        let r = self.residual(x);
        if r > tol {
            Err(Error::NotStructure(format!(
                "{self:?} predicate residual {r:.3e} exceeds {tol:.1e}"
            )))
        } else {
            Ok(())
        }
    }

    /// A deterministic random element of the representation space.
    pub fn sample(&self, rng: &mut impl Rng) -> CMat {
        let m = self.dim();
        match *self {
            Repr::OrthogonalGroup { .. } => to_complex(&haar::random_special_orthogonal(m, rng)),
            Repr::UnitaryGroup { .. } => haar::random_unitary(m, rng),
            Repr::SymplecticGroup { r } => haar::random_symplectic(r, rng).to_complex(),
            Repr::OrthStructure { .. } => {
                let base = to_complex(&realify_complex(
                    &(CMat::identity(m / 2, m / 2) * crate::algebra::matrix::C_I),
                ));
                let g = to_complex(&haar::random_special_orthogonal(m, rng));
                &g * base * g.adjoint()
            }
            Repr::OrthStructureAnti { .. } => {
                // Base: diag(A, -A) with A = [[0, -I], [I, 0]] on ℝ^{m/2},
                // anticommuting with J0 = [[0, -I_{m/2}], [I_{m/2}, 0]];
                // conjugate by the realified unitary stabilizer of J0.
                let h = m / 2;
                let a =
                    realify_complex(&(CMat::identity(h / 2, h / 2) * crate::algebra::matrix::C_I));
                let mut base = crate::algebra::matrix::RMat::zeros(m, m);
                base.view_mut((0, 0), (h, h)).copy_from(&a);
                base.view_mut((h, h), (h, h)).copy_from(&(-&a));
                let u = haar::random_unitary(h, rng);
                let g = to_complex(&realify_complex(&u));
                &g * to_complex(&base) * g.adjoint()
            }
            Repr::UnitStructureAnti { .. } => {
                let h = m / 2;
                let mut base = CMat::zeros(m, m);
                for i in 0..h {
                    base[(i, h + i)] = -C_ONE;
                    base[(h + i, i)] = C_ONE;
                }
                // Stabilizer of A_{m/2}: block-diagonal unitaries.
                let u1 = haar::random_unitary(h, rng);
                let u2 = haar::random_unitary(h, rng);
                let mut g = CMat::zeros(m, m);
                g.view_mut((0, 0), (h, h)).copy_from(&u1);
                g.view_mut((h, h), (h, h)).copy_from(&u2);
                &g * base * g.adjoint()
            }
            Repr::GrassStructure { .. } => {
                let g = haar::random_unitary(m, rng);
                &g * a_block(m / 2) * g.adjoint()
            }
            Repr::ProjC { rank, .. } => {
                let g = haar::random_unitary(m, rng);
                let mut p = CMat::zeros(m, m);
                for i in 0..rank {
                    p[(i, i)] = C_ONE;
                }
                &g * p * g.adjoint()
            }
            Repr::ProjR { rank, .. } => {
                let g = to_complex(&haar::random_special_orthogonal(m, rng));
                let mut p = CMat::zeros(m, m);
                for i in 0..rank {
                    p[(i, i)] = C_ONE;
                }
                &g * p * g.adjoint()
            }
            Repr::ProjQuatInvariant { rank, .. } => {
                let s = m / 2;
                let g = haar::random_symplectic(s, rng).to_complex();
                let mut p = CMat::zeros(m, m);
                for i in 0..rank / 2 {
                    p[(i, i)] = C_ONE;
                    p[(s + i, s + i)] = C_ONE;
                }
                &g * p * g.adjoint()
            }
            Repr::ComplexFormProj { .. } => {
                let s = m / 2;
                let g = haar::random_symplectic(s, rng).to_complex();
                let mut p = CMat::zeros(m, m);
                for i in 0..s {
                    p[(i, i)] = C_ONE;
                }
                &g * p * g.adjoint()
            }
            Repr::SymmetricUnitary { .. } => {
                let u = haar::random_unitary(m, rng);
                &u * u.transpose()
            }
        }
    }
}
