//! Poles, centrosomes and midpoint-geodesics in the ambient groups.

use crate::algebra::eigen::{exp_skew_hermitian, log_unitary_principal, unitary_eigen};
use crate::algebra::matrix::{diff_norm, inverse, max_abs, CMat, C};
use crate::chains::Ambient;
use crate::{Error, Result};

/// The geodesic symmetry `s_g(x) = g x⁻¹ g` of a bi-invariant metric.
pub fn geodesic_symmetry(g: &CMat, x: &CMat) -> Result<CMat> {
    if g.shape() != x.shape() {
        return Err(Error::DimensionMismatch(format!(
            "geodesic symmetry of {}x{} at {}x{}",
            x.nrows(),
            x.ncols(),
            g.nrows(),
            g.ncols()
        )));
    }
    Ok(g * inverse(x)? * g)
}

/// Pole test: `p` is a pole of `(G, o)` exactly when `p ≠ o`, `p o⁻¹` is
/// central and `(p o⁻¹)² = I`. For the groups in scope the center is known,
/// so centrality reduces to being a scalar matrix; `is_pole_sampled` keeps
/// the sampling characterization as a cross-check.
pub fn is_pole(p: &CMat, o: &CMat, ambient: Ambient, tol: f64) -> bool {
    if p.shape() != o.shape() || !ambient.contains(p, tol) || !ambient.contains(o, tol) {
        return false;
    }
    let z = p * o.adjoint();
    let n = z.nrows();
    if diff_norm(&(&z * &z), &CMat::identity(n, n)) > tol {
        return false;
    }
    // Scalar test: z = ζI with ζ² = 1 and ζ ≠ 1 forces z = -I.
    let zeta = z[(0, 0)];
    let scalar_resid = max_abs(&(&z - CMat::identity(n, n) * zeta));
    scalar_resid <= tol && (zeta + C::new(1.0, 0.0)).norm() <= tol
}

/// Sampling cross-check of centrality: `p o⁻¹` must commute with random
/// group elements. Exact centers make this redundant for the groups in
/// scope; tests compare both routes.
pub fn is_pole_sampled(
    p: &CMat,
    o: &CMat,
    ambient: Ambient,
    samples: usize,
    seed: u64,
    tol: f64,
) -> bool {
    use crate::algebra::haar;
    use crate::rng::stream;
    if p.shape() != o.shape() || !ambient.contains(p, tol) || !ambient.contains(o, tol) {
        return false;
    }
    let z = p * o.adjoint();
    let n = z.nrows();
    if diff_norm(&(&z * &z), &CMat::identity(n, n)) > tol || diff_norm(&z, o) <= tol {
        return false;
    }
    if diff_norm(p, o) <= tol {
        return false;
    }
    for idx in 0..samples as u64 {
        let mut rng = stream(seed, "pole-centrality", idx);
        let g = match ambient {
            Ambient::SpecialOrthogonal { dim } => {
                crate::algebra::matrix::to_complex(&haar::random_special_orthogonal(dim, &mut rng))
            }
            Ambient::Unitary { dim } => haar::random_unitary(dim, &mut rng),
            Ambient::Symplectic { r } => haar::random_symplectic(r, &mut rng).to_complex(),
        };
        if max_abs(&(&z * &g - &g * &z)) > tol * 10.0 {
            return false;
        }
    }
    true
}

/// Classification of a candidate midpoint relative to `(o, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentrosomeClass {
    NotMember,
    MemberShortest,
    MemberNonshortest,
}

/// Membership of `j` in the centrosome of `(group, o)` relative to the pole
/// `p`: `(o⁻¹j)² = o⁻¹p` within a loosened tolerance `√tol` makes it a
/// midpoint of some geodesic from `o` to `p`; the midpoint lies on a
/// shortest one exactly when every eigenangle of `o⁻¹j` is `±π/2`, tested
/// at `100·tol`.
pub fn centrosome_membership(
    j: &CMat,
    o: &CMat,
    p: &CMat,
    ambient: Ambient,
    tol: f64,
) -> Result<CentrosomeClass> {
    if !is_pole(p, o, ambient, tol.max(1e-8)) {
        return Err(Error::NotAPole(format!(
            "pole residual {:.3e}",
            diff_norm(&(p * o.adjoint()), &(-CMat::identity(o.nrows(), o.nrows()))),
        )));
    }
    let w = o.adjoint() * j;
    let target = o.adjoint() * p;
    let member_resid = diff_norm(&(&w * &w), &target);
    let tol_member = tol.sqrt();
    if member_resid > tol_member {
        return Ok(CentrosomeClass::NotMember);
    }
    let (angles, _) = unitary_eigen(&w, tol_member.max(1e-8))?;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let worst = angles
        .iter()
        .map(|t| (t.abs() - half_pi).abs())
        .fold(0.0f64, f64::max);
    if worst <= 100.0 * tol {
        Ok(CentrosomeClass::MemberShortest)
    } else {
        Ok(CentrosomeClass::MemberNonshortest)
    }
}

/// A geodesic `γ(t) = start · exp(t · velocity)` with skew velocity.
#[derive(Debug, Clone)]
pub struct GeodesicSegment {
    pub start: CMat,
    pub velocity: CMat,
}

impl GeodesicSegment {
    pub fn at(&self, t: f64) -> CMat {
        if t == 0.0 {
            return self.start.clone();
        }
        let e = exp_skew_hermitian(&(&self.velocity * C::new(t, 0.0)), 1e-9)
            .expect("velocity is skew by construction");
        &self.start * e
    }
}

/// The geodesic from `o` to its pole `-o` whose midpoint is the shortest
/// centrosome member `j`: velocity `2·log(o⁻¹ j)` on the principal branch.
pub fn midpoint_to_geodesic(
    j: &CMat,
    o: &CMat,
    ambient: Ambient,
    tol: f64,
) -> Result<GeodesicSegment> {
    let pole = o * C::new(-1.0, 0.0);
    match centrosome_membership(j, o, &pole, ambient, tol)? {
        CentrosomeClass::MemberShortest => {}
        other => {
            return Err(Error::NotShortestMidpoint(format!("classified {other:?}")));
        }
    }
    let w = o.adjoint() * j;
    let velocity = log_unitary_principal(&w, tol.sqrt().max(1e-8))? * C::new(2.0, 0.0);
    let seg = GeodesicSegment {
        start: o.clone(),
        velocity,
    };
    let end_resid = diff_norm(&seg.at(1.0), &pole);
    if end_resid > tol.sqrt() {
        return Err(Error::NotShortestMidpoint(format!(
            "endpoint residual {end_resid:.3e}"
        )));
    }
    Ok(seg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::{a_block, to_complex, C_ONE};
    use crate::algebra::{haar, TOL_PREDICATE};
    use crate::rng::stream;
    use nalgebra::DVector;

    fn u(dim: usize) -> Ambient {
        Ambient::Unitary { dim }
    }

    #[test]
    fn symmetry_at_identity_inverts() {
        let mut rng = stream(9, "sym", 0);
        let x = haar::random_unitary(4, &mut rng);
        let id = CMat::identity(4, 4);
        let s = geodesic_symmetry(&id, &x).unwrap();
        assert!(diff_norm(&s, &x.adjoint().into_owned()) < 1e-12);
    }

    #[test]
    fn symmetry_fixes_its_center() {
        let mut rng = stream(9, "sym-fix", 0);
        let g = haar::random_unitary(4, &mut rng);
        let s = geodesic_symmetry(&g, &g).unwrap();
        assert!(diff_norm(&s, &g) < 1e-12);
    }

    #[test]
    fn symmetry_of_antipodal_center_agrees() {
        // s_{-I} = s_I on any group containing -I.
        let mut rng = stream(9, "sym-anti", 0);
        let x = haar::random_unitary(6, &mut rng);
        let id = CMat::identity(6, 6);
        let minus = &id * C::new(-1.0, 0.0);
        let a = geodesic_symmetry(&id, &x).unwrap();
        let b = geodesic_symmetry(&minus, &x).unwrap();
        assert!(diff_norm(&a, &b) < 1e-12);
    }

    #[test]
    fn pole_examples() {
        let id4 = CMat::identity(4, 4);
        let minus = &id4 * C::new(-1.0, 0.0);
        assert!(is_pole(&minus, &id4, u(4), TOL_PREDICATE));
        // iI squares to -I, not I.
        let i_scal = &id4 * crate::algebra::matrix::C_I;
        assert!(!is_pole(&i_scal, &id4, u(4), TOL_PREDICATE));
        // -I has determinant -1 in odd orthogonal dimension.
        let id3 = CMat::identity(3, 3);
        let m3 = &id3 * C::new(-1.0, 0.0);
        assert!(!is_pole(
            &m3,
            &id3,
            Ambient::SpecialOrthogonal { dim: 3 },
            TOL_PREDICATE
        ));
        // Sampled centrality agrees.
        assert!(is_pole_sampled(&minus, &id4, u(4), 20, 5, TOL_PREDICATE));
        assert!(!is_pole_sampled(&i_scal, &id4, u(4), 20, 5, TOL_PREDICATE));
    }

    #[test]
    fn block_structure_is_a_shortest_midpoint() {
        let q = 4;
        let a = a_block(q);
        let id = CMat::identity(2 * q, 2 * q);
        let minus = &id * C::new(-1.0, 0.0);
        let class = centrosome_membership(&a, &id, &minus, u(2 * q), TOL_PREDICATE).unwrap();
        assert_eq!(class, CentrosomeClass::MemberShortest);
    }

    #[test]
    fn identity_is_not_a_midpoint() {
        let id = CMat::identity(4, 4);
        let minus = &id * C::new(-1.0, 0.0);
        let class = centrosome_membership(&id, &id, &minus, u(4), TOL_PREDICATE).unwrap();
        assert_eq!(class, CentrosomeClass::NotMember);
    }

    #[test]
    fn perturbed_eigenangle_grades_down() {
        // diag(i e^{iε}, -i, i, -i): member within √tol but not shortest.
        let eps = 1e-6;
        let entries = [
            crate::algebra::matrix::C_I * C::new(0.0, eps).exp(),
            -crate::algebra::matrix::C_I,
            crate::algebra::matrix::C_I,
            -crate::algebra::matrix::C_I,
        ];
        let j = CMat::from_diagonal(&DVector::from_row_slice(&entries));
        let id = CMat::identity(4, 4);
        let minus = &id * C::new(-1.0, 0.0);
        let class = centrosome_membership(&j, &id, &minus, u(4), TOL_PREDICATE).unwrap();
        assert_eq!(class, CentrosomeClass::MemberNonshortest);
        // A larger detuning leaves the centrosome entirely.
        let eps = 1e-3;
        let entries = [
            crate::algebra::matrix::C_I * C::new(0.0, eps).exp(),
            -crate::algebra::matrix::C_I,
            crate::algebra::matrix::C_I,
            -crate::algebra::matrix::C_I,
        ];
        let j = CMat::from_diagonal(&DVector::from_row_slice(&entries));
        let class = centrosome_membership(&j, &id, &minus, u(4), TOL_PREDICATE).unwrap();
        assert_eq!(class, CentrosomeClass::NotMember);
    }

    #[test]
    fn geodesic_through_grassmannian_midpoint() {
        // From A_q to -A_q through [[0, I], [-I, 0]]; both the endpoint and
        // the midpoint reconstruct, and the path matches the one-parameter
        // conjugation form e^{tY} A_q with Y = iπ/2 [[0, I], [I, 0]].
        let q = 4;
        let a = a_block(q);
        let mut mid = CMat::zeros(2 * q, 2 * q);
        for i in 0..q {
            mid[(i, q + i)] = C_ONE;
            mid[(q + i, i)] = -C_ONE;
        }
        let seg = midpoint_to_geodesic(&mid, &a, u(2 * q), TOL_PREDICATE).unwrap();
        assert!(diff_norm(&seg.at(0.5), &mid) < 1e-11);
        assert!(diff_norm(&seg.at(1.0), &(&a * C::new(-1.0, 0.0))) < 1e-11);
        // Conjugation form of the same path.
        let mut s = CMat::zeros(2 * q, 2 * q);
        for i in 0..q {
            s[(i, q + i)] = C_ONE;
            s[(q + i, i)] = C_ONE;
        }
        for &t in &[0.25, 0.5, 0.75] {
            let y = &s * C::new(0.0, t * std::f64::consts::PI);
            let exp_y = exp_skew_hermitian(&y, 1e-10).unwrap();
            let paper_point = &exp_y * &a;
            assert!(
                diff_norm(&seg.at(t), &paper_point) < 1e-11,
                "paths disagree at t = {t}"
            );
        }
    }

    #[test]
    fn midpoint_round_trip_on_random_conjugates() {
        let q = 3;
        let id = CMat::identity(2 * q, 2 * q);
        for idx in 0..5u64 {
            let mut rng = stream(21, "midpoint-rt", idx);
            let g = haar::random_unitary(2 * q, &mut rng);
            let j = &g * a_block(q) * g.adjoint();
            let seg = midpoint_to_geodesic(&j, &id, u(2 * q), TOL_PREDICATE).unwrap();
            assert!(diff_norm(&seg.at(0.5), &j) < 1e-11);
        }
    }

    #[test]
    fn non_midpoint_is_rejected() {
        let id = CMat::identity(4, 4);
        let near =
            to_complex(&crate::algebra::convert::rotation2(0.3)).kronecker(&CMat::identity(2, 2));
        assert!(matches!(
            midpoint_to_geodesic(&near, &id, u(4), TOL_PREDICATE),
            Err(Error::NotShortestMidpoint(_))
        ));
    }
}
