//! The sixteen standard inclusions between classical symmetric spaces.
//!
//! Each map is registered with its domain and codomain representation and
//! applied through [`apply_inclusion`], which validates both predicates on
//! every call. Size parameters follow the convention that `r` is the
//! domain's natural rank.

use crate::algebra::matrix::{conj, inverse, to_complex, CMat, C_ONE};
use crate::algebra::{realify_complex, structure_to_projection};
use crate::inclusions::repr::Repr;
use crate::{Error, Result};

/// Tags for the sixteen registered inclusions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[allow(non_camel_case_types)]
pub enum InclusionId {
    O_in_U,
    OU_in_GrC,
    USp_in_U,
    GrH_in_GrC,
    Sp_in_U,
    SpU_in_GrC,
    UO_in_U,
    GrR_in_GrC,
    U_in_Sp,
    GrC_in_SpU,
    U_in_UO,
    GrC_in_GrR,
    U_in_SO,
    GrC_in_OU,
    U_in_USp,
    GrC_in_GrH,
}

pub const ALL_INCLUSIONS: [InclusionId; 16] = [
    InclusionId::O_in_U,
    InclusionId::OU_in_GrC,
    InclusionId::USp_in_U,
    InclusionId::GrH_in_GrC,
    InclusionId::Sp_in_U,
    InclusionId::SpU_in_GrC,
    InclusionId::UO_in_U,
    InclusionId::GrR_in_GrC,
    InclusionId::U_in_Sp,
    InclusionId::GrC_in_SpU,
    InclusionId::U_in_UO,
    InclusionId::GrC_in_GrR,
    InclusionId::U_in_SO,
    InclusionId::GrC_in_OU,
    InclusionId::U_in_USp,
    InclusionId::GrC_in_GrH,
];

/// A registered inclusion with a fixed size parameter.
#[derive(Debug, Clone, Copy)]
pub struct InclusionMap {
    pub id: InclusionId,
    pub r: usize,
    pub domain: Repr,
    pub codomain: Repr,
}

/// Build the registry entry for a tag at size `r`.
pub fn inclusion(id: InclusionId, r: usize) -> InclusionMap {
    use InclusionId::*;
    let (domain, codomain) = match id {
        O_in_U => (
            Repr::OrthogonalGroup {
                m: r,
                special: false,
            },
            Repr::UnitaryGroup { m: r },
        ),
        OU_in_GrC => (
            Repr::OrthStructure { m: 2 * r },
            Repr::ProjC { m: 2 * r, rank: r },
        ),
        USp_in_U => (
            Repr::OrthStructureAnti { m: 4 * r },
            Repr::UnitaryGroup { m: 2 * r },
        ),
        GrH_in_GrC => (
            Repr::ProjQuatInvariant {
                m: 4 * r,
                rank: 2 * r,
            },
            Repr::ProjC {
                m: 4 * r,
                rank: 2 * r,
            },
        ),
        Sp_in_U => (Repr::SymplecticGroup { r }, Repr::UnitaryGroup { m: 2 * r }),
        SpU_in_GrC => (
            Repr::ComplexFormProj { m: 2 * r },
            Repr::ProjC { m: 2 * r, rank: r },
        ),
        UO_in_U => (Repr::SymmetricUnitary { m: r }, Repr::UnitaryGroup { m: r }),
        GrR_in_GrC => (
            Repr::ProjR { m: 2 * r, rank: r },
            Repr::ProjC { m: 2 * r, rank: r },
        ),
        U_in_Sp => (Repr::UnitaryGroup { m: r }, Repr::SymplecticGroup { r }),
        GrC_in_SpU => (
            Repr::ProjC { m: 2 * r, rank: r },
            Repr::ComplexFormProj { m: 4 * r },
        ),
        U_in_UO => (
            Repr::UnitaryGroup { m: r },
            Repr::SymmetricUnitary { m: 2 * r },
        ),
        GrC_in_GrR => (
            Repr::ProjC { m: 2 * r, rank: r },
            Repr::ProjR {
                m: 4 * r,
                rank: 2 * r,
            },
        ),
        U_in_SO => (
            Repr::UnitaryGroup { m: r },
            Repr::OrthogonalGroup {
                m: 2 * r,
                special: true,
            },
        ),
        GrC_in_OU => (
            Repr::GrassStructure { m: 2 * r },
            Repr::OrthStructure { m: 4 * r },
        ),
        U_in_USp => (
            Repr::UnitaryGroup { m: r },
            Repr::UnitStructureAnti { m: 2 * r },
        ),
        GrC_in_GrH => (
            Repr::ProjC { m: 2 * r, rank: r },
            Repr::ProjQuatInvariant {
                m: 4 * r,
                rank: 2 * r,
            },
        ),
    };
    InclusionMap {
        id,
        r,
        domain,
        codomain,
    }
}

/// Apply a registered inclusion, validating the domain predicate before and
/// the codomain predicate after.
pub fn apply_inclusion(map: &InclusionMap, x: &CMat, tol: f64) -> Result<CMat> {
    map.domain
        .validate(x, tol)
        .map_err(|e| Error::NotStructure(format!("{:?} domain: {e}", map.id)))?;
    let y = apply_raw(map, x)?;
    map.codomain
        .validate(&y, tol * 10.0)
        .map_err(|e| Error::NotStructure(format!("{:?} codomain: {e}", map.id)))?;
    Ok(y)
}

fn apply_raw(map: &InclusionMap, x: &CMat) -> Result<CMat> {
    use InclusionId::*;
    let m = x.nrows();
    Ok(match map.id {
        // Complex-linear extension of a real orthogonal map.
        O_in_U => x.clone(),
        // J ↦ the projection onto the +i eigenspace of its extension.
        OU_in_GrC => structure_to_projection(x, 1e-8)?,
        // J ↦ J^c restricted from V⁺ = E_i(J_0) to V⁻ = E_{-i}(J_0), in the
        // canonical bases (e_a ∓ i e_{h+a})/√2 of the two eigenspaces.
        USp_in_U => {
            let h = m / 2; // = 2r
            let mut bp = CMat::zeros(m, h);
            let mut bm = CMat::zeros(m, h);
            let s = C_ONE * (1.0 / 2.0f64.sqrt());
            for a in 0..h {
                bp[(a, a)] = s;
                bp[(h + a, a)] = -crate::algebra::matrix::C_I * s;
                bm[(a, a)] = s;
                bm[(h + a, a)] = crate::algebra::matrix::C_I * s;
            }
            bm.adjoint() * x * bp
        }
        // An ℍ-submodule is in particular a complex subspace.
        GrH_in_GrC => x.clone(),
        // An ℍ-linear isometry is in particular ℂ-linear: the complex
        // picture is the unitary matrix itself.
        Sp_in_U => x.clone(),
        // A complex form of ℍ^r is in particular a complex subspace.
        SpU_in_GrC => x.clone(),
        // The real form B₀A ↦ A with B₀ fixed to entrywise conjugation;
        // the carried matrix is already A.
        UO_in_U => x.clone(),
        // V ↦ V ⊗ ℂ.
        GrR_in_GrC => x.clone(),
        // A ↦ A^h acting on ℍ^r = ℂ^r ⊕ jℂ^r: diag(A, conj A).
        U_in_Sp => {
            let mut out = CMat::zeros(2 * m, 2 * m);
            out.view_mut((0, 0), (m, m)).copy_from(x);
            out.view_mut((m, m), (m, m)).copy_from(&conj(x));
            out
        }
        // V ↦ V ⊕ R_j V^⊥: in coordinates diag(P, I - conj P).
        GrC_in_SpU => {
            let mut out = CMat::zeros(2 * m, 2 * m);
            out.view_mut((0, 0), (m, m)).copy_from(x);
            out.view_mut((m, m), (m, m))
                .copy_from(&(CMat::identity(m, m) - conj(x)));
            out
        }
        // A ↦ the real form {v + R_j A v}: the symmetric unitary
        // [[0, Aᴴ], [conj A, 0]].
        U_in_UO => {
            let mut out = CMat::zeros(2 * m, 2 * m);
            out.view_mut((0, m), (m, m)).copy_from(&x.adjoint());
            out.view_mut((m, 0), (m, m)).copy_from(&conj(x));
            out
        }
        // A complex subspace viewed as a real one.
        GrC_in_GrR => to_complex(&realify_complex(x)),
        // ℂ-linear isometries are ℝ-linear.
        U_in_SO => to_complex(&realify_complex(x)),
        // A complex structure on ℂ^{2r} is one on ℝ^{4r}.
        GrC_in_OU => to_complex(&realify_complex(x)),
        // X ↦ [[0, -X⁻¹], [X, 0]], which squares to -I and anticommutes
        // with A_r.
        U_in_USp => {
            let xinv = inverse(x)?;
            let mut out = CMat::zeros(2 * m, 2 * m);
            out.view_mut((0, m), (m, m)).copy_from(&(-&xinv));
            out.view_mut((m, 0), (m, m)).copy_from(x);
            out
        }
        // V ↦ V ⊗_ℂ ℍ = {v + wj : v, w ∈ V}: diag(P, conj P).
        GrC_in_GrH => {
            let mut out = CMat::zeros(2 * m, 2 * m);
            out.view_mut((0, 0), (m, m)).copy_from(x);
            out.view_mut((m, m), (m, m)).copy_from(&conj(x));
            out
        }
    })
}

/// The complexification map from the real structure picture used by
/// `OU_in_GrC`; exposed so the eigenspace formula can be cross-checked
/// against an explicit eigenvector computation.
#[allow(clippy::needless_range_loop)]
pub fn plus_i_eigenprojector(j: &CMat, tol: f64) -> Result<CMat> {
    let herm = j * (-crate::algebra::matrix::C_I);
    let (vals, vecs) = crate::algebra::eigen::hermitian_eigen(&herm);
    let n = j.nrows();
    let mut p = CMat::zeros(n, n);
    for i in 0..n {
        if vals[i] > 0.0 {
            let col = vecs.column(i);
            p += col * col.adjoint();
        }
    }
    if crate::algebra::matrix::max_abs(&(&p * &p - &p)) > tol {
        return Err(Error::NotStructure("eigenprojector drifted".into()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::{a_block, diff_norm, max_abs, C_I};
    use crate::algebra::quaternion::{self, QMat};
    use crate::rng::stream;

    const TOL: f64 = 1e-10;

    #[test]
    fn all_sixteen_preserve_their_codomain_predicate() {
        for (i, id) in ALL_INCLUSIONS.iter().enumerate() {
            let map = inclusion(*id, 2);
            for idx in 0..5u64 {
                let mut rng = stream(23, "incl-codomain", (i as u64) * 100 + idx);
                let x = map.domain.sample(&mut rng);
                let y = apply_inclusion(&map, &x, TOL).unwrap();
                assert_eq!(y.nrows(), map.codomain.dim());
            }
        }
    }

    #[test]
    fn all_sixteen_are_injective_on_samples() {
        for (i, id) in ALL_INCLUSIONS.iter().enumerate() {
            let map = inclusion(*id, 2);
            let mut rng = stream(29, "incl-inject", i as u64);
            let x1 = map.domain.sample(&mut rng);
            let x2 = map.domain.sample(&mut rng);
            let sep_in = diff_norm(&x1, &x2);
            let y1 = apply_inclusion(&map, &x1, TOL).unwrap();
            let y2 = apply_inclusion(&map, &x2, TOL).unwrap();
            let sep_out = diff_norm(&y1, &y2);
            assert!(sep_in > 1e-3, "{id:?}: degenerate sample pair");
            assert!(
                sep_out > 1e-6,
                "{id:?}: distinct inputs collapsed ({sep_out:.3e})"
            );
        }
    }

    #[test]
    fn u_in_usp_block_example() {
        // X = I_r ↦ [[0, -I], [I, 0]], squaring to -I and anticommuting
        // with A_r.
        let r = 3;
        let map = inclusion(InclusionId::U_in_USp, r);
        let y = apply_inclusion(&map, &CMat::identity(r, r), TOL).unwrap();
        let a = a_block(r);
        assert!(crate::algebra::matrix::structure_residual(&y) < 1e-14);
        assert!(crate::algebra::matrix::anticommutator_norm(&y, &a) < 1e-14);
        for i in 0..r {
            assert!((y[(i, r + i)] + C_ONE).norm() < 1e-15);
            assert!((y[(r + i, i)] - C_ONE).norm() < 1e-15);
        }
    }

    #[test]
    fn sp_in_u_of_scalar_j_is_the_rotation_block() {
        let q = QMat::scalar(1, quaternion::J).to_complex();
        let map = inclusion(InclusionId::Sp_in_U, 1);
        let y = apply_inclusion(&map, &q, TOL).unwrap();
        let expect = CMat::from_row_slice(
            2,
            2,
            &[
                crate::algebra::matrix::C_ZERO,
                -C_ONE,
                C_ONE,
                crate::algebra::matrix::C_ZERO,
            ],
        );
        assert!(diff_norm(&y, &expect) < 1e-14);
    }

    #[test]
    fn grr_in_grc_on_a_coordinate_plane() {
        let mut p = CMat::zeros(2, 2);
        p[(0, 0)] = C_ONE;
        let map = inclusion(InclusionId::GrR_in_GrC, 1);
        let y = apply_inclusion(&map, &p, TOL).unwrap();
        assert!(diff_norm(&y, &p) < 1e-15);
    }

    #[test]
    fn composition_with_u_in_sp_is_the_complex_doubling() {
        // Sp_in_U ∘ U_in_Sp = A ↦ diag(A, conj A) on random unitaries.
        let r = 4;
        let into_sp = inclusion(InclusionId::U_in_Sp, r);
        let back = inclusion(InclusionId::Sp_in_U, r);
        for idx in 0..50u64 {
            let mut rng = stream(31, "incl-compose", idx);
            let a = crate::algebra::haar::random_unitary(r, &mut rng);
            let mid = apply_inclusion(&into_sp, &a, TOL).unwrap();
            let out = apply_inclusion(&back, &mid, TOL).unwrap();
            let mut expect = CMat::zeros(2 * r, 2 * r);
            expect.view_mut((0, 0), (r, r)).copy_from(&a);
            expect.view_mut((r, r), (r, r)).copy_from(&conj(&a));
            assert!(diff_norm(&out, &expect) < 1e-11);
        }
    }

    #[test]
    fn grassmannian_pictures_agree() {
        // The projection formula (I - iJ)/2 against an explicit eigenspace
        // projector of the complexified structure.
        let r = 3;
        let map = inclusion(InclusionId::OU_in_GrC, r);
        for idx in 0..10u64 {
            let mut rng = stream(37, "incl-two-pictures", idx);
            let j = map.domain.sample(&mut rng);
            let p1 = apply_inclusion(&map, &j, TOL).unwrap();
            let p2 = plus_i_eigenprojector(&j, 1e-9).unwrap();
            assert!(diff_norm(&p1, &p2) < 1e-10);
        }
    }

    #[test]
    fn u_in_uo_fixed_set_characterization() {
        // S = [[0, Aᴴ], [conj A, 0]] must be symmetric unitary, and its real
        // form {x : S conj(x) = x} must contain (v, conj(Av)).
        let r = 2;
        let map = inclusion(InclusionId::U_in_UO, r);
        let mut rng = stream(41, "incl-uo", 0);
        let a = crate::algebra::haar::random_unitary(r, &mut rng);
        let s = apply_inclusion(&map, &a, TOL).unwrap();
        let v = crate::algebra::haar::random_unit_vector(r, &mut rng);
        let av = &a * &v;
        let mut x = nalgebra::DVector::zeros(2 * r);
        for i in 0..r {
            x[i] = v[i];
            x[r + i] = av[i].conj();
        }
        let fixed = &s * x.map(|z| z.conj()) - &x;
        assert!(fixed.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);
    }

    #[test]
    fn domain_violation_is_rejected() {
        let map = inclusion(InclusionId::O_in_U, 3);
        let bad = CMat::identity(3, 3) * C_I; // not real
        assert!(apply_inclusion(&map, &bad, TOL).is_err());
        let map = inclusion(InclusionId::GrR_in_GrC, 2);
        let bad = CMat::identity(4, 4); // wrong rank
        assert!(apply_inclusion(&map, &bad, TOL).is_err());
    }

    #[test]
    fn usp_in_u_lands_in_the_unitary_group() {
        let r = 2;
        let map = inclusion(InclusionId::USp_in_U, r);
        for idx in 0..5u64 {
            let mut rng = stream(43, "incl-usp", idx);
            let j = map.domain.sample(&mut rng);
            let u = apply_inclusion(&map, &j, TOL).unwrap();
            assert_eq!(u.nrows(), 2 * r);
            assert!(crate::algebra::matrix::unitary_residual(&u) < 1e-10);
        }
    }

    #[test]
    fn tau_of_block_structure_flips_sign() {
        let a = a_block(4);
        assert!(max_abs(&(conj(&a) + &a)) < 1e-15);
    }
}
