//! The involutions whose fixed point sets realize the chain inclusions.

use crate::algebra::matrix::{conj, diff_norm, CMat};
use crate::{Error, Result};

/// An involutive isometry of a matrix group.
#[derive(Debug, Clone)]
pub enum Involution {
    /// Entrywise complex conjugation `τ(X) = conj(X)`; fixes the real
    /// orthogonal subgroup.
    Conjugation,
    /// The inner automorphism `τ̄(X) = A X A⁻¹` by `A = diag(iI, -iI)`;
    /// on the symplectic group it fixes the unitary subgroup.
    InnerByBlock(CMat),
    /// Twisted conjugation `c(X) = A conj(X) A⁻¹` for a fixed unitary `A`.
    TwistedConjugation(CMat),
}

impl Involution {
    pub fn apply(&self, x: &CMat) -> CMat {
        match self {
            Involution::Conjugation => conj(x),
            Involution::InnerByBlock(a) => a * x * a.adjoint(),
            Involution::TwistedConjugation(a) => a * conj(x) * a.adjoint(),
        }
    }

    /// Residual of `σ(σ(x)) = x`.
    pub fn involutivity_residual(&self, x: &CMat) -> f64 {
        diff_norm(&self.apply(&self.apply(x)), x)
    }

    pub fn fixedness_residual(&self, x: &CMat) -> f64 {
        diff_norm(&self.apply(x), x)
    }
}

/// `apply_involution` with a tolerance check that the result stays in the
/// same shape as the input.
pub fn apply_involution(inv: &Involution, x: &CMat) -> Result<CMat> {
    let y = inv.apply(x);
    if y.shape() != x.shape() {
        return Err(Error::DimensionMismatch("involution changed shape".into()));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::haar;
    use crate::algebra::matrix::{a_block, to_complex};
    use crate::rng::stream;

    #[test]
    fn involutions_square_to_identity_on_samples() {
        let a = a_block(3);
        let invs = [
            Involution::Conjugation,
            Involution::InnerByBlock(a.clone()),
            Involution::TwistedConjugation(a),
        ];
        for idx in 0..100u64 {
            let mut rng = stream(47, "inv-square", idx);
            let x = haar::random_unitary(6, &mut rng);
            for inv in &invs {
                assert!(inv.involutivity_residual(&x) < 1e-12);
            }
        }
    }

    #[test]
    fn conjugation_fixes_real_matrices() {
        let mut rng = stream(47, "inv-real", 0);
        let x = to_complex(&haar::random_special_orthogonal(5, &mut rng));
        assert!(Involution::Conjugation.fixedness_residual(&x) < 1e-15);
    }

    #[test]
    fn inner_involution_fixes_block_diagonal_unitaries() {
        // diag(a, b) commutes with diag(iI, -iI).
        let mut rng = stream(47, "inv-block", 0);
        let a = haar::random_unitary(3, &mut rng);
        let b = haar::random_unitary(3, &mut rng);
        let mut x = CMat::zeros(6, 6);
        x.view_mut((0, 0), (3, 3)).copy_from(&a);
        x.view_mut((3, 3), (3, 3)).copy_from(&b);
        let inv = Involution::InnerByBlock(a_block(3));
        assert!(inv.fixedness_residual(&x) < 1e-12);
    }

    #[test]
    fn conjugation_negates_the_block_structure() {
        let a = a_block(4);
        let img = Involution::Conjugation.apply(&a);
        assert!(diff_norm(&img, &(-&a)) < 1e-15);
    }
}
