//! Metric pullback factors of the registered inclusions.
//!
//! Every inclusion here is a homothety: it multiplies squared tangent norms
//! by a constant. The factor is measured with a fourth-order central
//! difference of `t ↦ ι(γ(t))` along unit-speed curves through a base
//! point, and the spread across tangents is required to vanish.

use rand::Rng;

use crate::algebra::haar;
use crate::algebra::matrix::{conj, k_block, real_part, skew_part, to_complex, CMat, C};
use crate::inclusions::maps::{apply_inclusion, InclusionMap};
use crate::inclusions::repr::Repr;
use crate::rng::stream;
use crate::{Error, Result};

/// Fourth-order central difference step.
pub const FD_STEP: f64 = 1e-4;

/// Derivative at 0 of a matrix curve via the five-point stencil.
pub fn fd_derivative(curve: &mut dyn FnMut(f64) -> Result<CMat>, h: f64) -> Result<CMat> {
    let m2 = curve(-2.0 * h)?;
    let m1 = curve(-h)?;
    let p1 = curve(h)?;
    let p2 = curve(2.0 * h)?;
    Ok((&m2 - &p2 + (&p1 - &m1) * C::new(8.0, 0.0)) * C::new(1.0 / (12.0 * h), 0.0))
}

/// Measured homothety factor together with its spread across tangents.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct HomothetyFactor {
    pub ratio: f64,
    pub relative_spread: f64,
    pub tangents: usize,
}

/// Generic ratio measurement: `curves(i)` yields, for the i-th random
/// tangent, a unit-speed curve in the domain together with the squared-norm
/// functional of codomain velocities.
pub fn measure_ratio(
    tangents: usize,
    mut curve_at: impl FnMut(usize, f64) -> Result<CMat>,
    codomain_norm_sq: impl Fn(&CMat) -> f64,
) -> Result<HomothetyFactor> {
    if tangents == 0 {
        return Err(Error::Config("need at least one tangent".into()));
    }
    let mut ratios = Vec::with_capacity(tangents);
    for i in 0..tangents {
        let mut c = |t: f64| curve_at(i, t);
        let d = fd_derivative(&mut c, FD_STEP)?;
        ratios.push(codomain_norm_sq(&d));
    }
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mid = 0.5 * (lo + hi);
    let spread = (hi - lo) / mid.abs().max(1e-300);
    if spread > 1e-4 {
        return Err(Error::NonHomothety {
            spread,
            count: tangents,
        });
    }
    Ok(HomothetyFactor {
        ratio: mid,
        relative_spread: spread,
        tangents,
    })
}

/// Squared tangent norm in a representation space, normalized so that group
/// elements carry `-s·tr(XY)` and Grassmannian projections the norm they
/// inherit from the structure picture (`‖J̇‖ = 2‖Ṗ‖`).
pub fn repr_norm_sq(repr: &Repr, v: &CMat) -> f64 {
    let f2 = v.norm().powi(2);
    match repr {
        Repr::OrthogonalGroup { .. }
        | Repr::UnitaryGroup { .. }
        | Repr::OrthStructure { .. }
        | Repr::OrthStructureAnti { .. }
        | Repr::UnitStructureAnti { .. }
        | Repr::GrassStructure { .. }
        | Repr::SymmetricUnitary { .. } => f2,
        Repr::SymplecticGroup { .. } => 0.5 * f2,
        Repr::ProjC { .. } | Repr::ProjR { .. } => 4.0 * f2,
        Repr::ProjQuatInvariant { .. } | Repr::ComplexFormProj { .. } => 2.0 * f2,
    }
}

/// A unit-speed curve through a sampled base point of a representation.
///
/// Group elements move by right translation `b·exp(tX)`; structures,
/// projections and real forms by the conjugation flows that preserve their
/// defining predicate.
fn repr_curve(
    repr: &Repr,
    base: &CMat,
    rng: &mut impl Rng,
) -> Result<Box<dyn Fn(f64) -> Result<CMat>>> {
    let m = repr.dim();
    match repr {
        Repr::OrthogonalGroup { .. } => {
            let x = to_complex(&haar::random_skew_symmetric(m, 1.0, rng));
            let b = base.clone();
            Ok(Box::new(move |t| {
                Ok(&b * crate::algebra::eigen::exp_skew_hermitian(&(&x * C::new(t, 0.0)), 1e-9)?)
            }))
        }
        Repr::UnitaryGroup { .. } => {
            let x = haar::random_skew_hermitian(m, 1.0, rng);
            let b = base.clone();
            Ok(Box::new(move |t| {
                Ok(&b * crate::algebra::eigen::exp_skew_hermitian(&(&x * C::new(t, 0.0)), 1e-9)?)
            }))
        }
        Repr::SymplecticGroup { r } => {
            // Unit speed in the -tr/2 convention.
            let x = haar::random_skew_symplectic(*r, 2.0f64.sqrt(), rng);
            let b = base.clone();
            Ok(Box::new(move |t| {
                Ok(&b * crate::algebra::eigen::exp_skew_hermitian(&(&x * C::new(t, 0.0)), 1e-9)?)
            }))
        }
        Repr::SymmetricUnitary { .. } => {
            // S(t) = e^{tX} S e^{tXᵀ} stays symmetric unitary.
            let x = haar::random_skew_hermitian(m, 1.0, rng);
            let b = base.clone();
            // Normalize the realized velocity XS + SXᵀ to unit norm.
            let v = &x * &b + &b * x.transpose();
            let scale = 1.0 / v.norm();
            let xs = x.scale(scale);
            Ok(Box::new(move |t| {
                let e1 = crate::algebra::eigen::exp_skew_hermitian(&(&xs * C::new(t, 0.0)), 1e-9)?;
                Ok(&e1 * &b * e1.transpose())
            }))
        }
        _ => {
            // Conjugation flow for structures and projections, with the
            // generator restricted to the symmetry algebra of the
            // representation and normalized to unit realized speed.
            let mut x = match repr {
                Repr::OrthStructure { .. } | Repr::ProjR { .. } => {
                    to_complex(&haar::random_skew_symmetric(m, 1.0, rng))
                }
                Repr::OrthStructureAnti { .. } => {
                    // Stabilizer of J0: realified unitaries.
                    let u = haar::random_skew_hermitian(m / 2, 1.0, rng);
                    to_complex(&crate::algebra::realify_complex(&u))
                }
                Repr::UnitStructureAnti { .. } => {
                    // Stabilizer of A_{m/2}: block-diagonal skew.
                    let h = m / 2;
                    let mut x = CMat::zeros(m, m);
                    x.view_mut((0, 0), (h, h))
                        .copy_from(&haar::random_skew_hermitian(h, 1.0, rng));
                    x.view_mut((h, h), (h, h))
                        .copy_from(&haar::random_skew_hermitian(h, 1.0, rng));
                    x
                }
                Repr::ProjQuatInvariant { .. } | Repr::ComplexFormProj { .. } => {
                    let k = k_block(m / 2);
                    let g = haar::gaussian_complex(m, m, rng);
                    let s = skew_part(&g);
                    (&s + &k * conj(&s) * k.transpose()).scale(0.5)
                }
                _ => haar::random_skew_hermitian(m, 1.0, rng),
            };
            let bracket = &x * base - base * &x;
            let speed_sq = repr_norm_sq(repr, &bracket);
            if speed_sq < 1e-20 {
                return Err(Error::Singular("degenerate tangent direction".into()));
            }
            x.scale_mut(1.0 / speed_sq.sqrt());
            let b = base.clone();
            Ok(Box::new(move |t| {
                let e = crate::algebra::eigen::exp_skew_hermitian(&(&x * C::new(t, 0.0)), 1e-9)?;
                Ok(&e * &b * e.adjoint())
            }))
        }
    }
}

/// Pullback factor of a registered inclusion at a sampled base point.
pub fn metric_pullback_scale(
    map: &InclusionMap,
    base: &CMat,
    tangents: usize,
    seed: u64,
    tol: f64,
) -> Result<HomothetyFactor> {
    map.domain.validate(base, tol)?;
    let mut curves: Vec<Box<dyn Fn(f64) -> Result<CMat>>> = Vec::with_capacity(tangents);
    for i in 0..tangents as u64 {
        let mut rng = stream(seed, &format!("metric/{:?}", map.id), i);
        curves.push(repr_curve(&map.domain, base, &mut rng)?);
    }
    measure_ratio(
        tangents,
        |i, t| {
            let x = curves[i](t)?;
            apply_inclusion(map, &x, 1e-6)
        },
        |v| repr_norm_sq(&map.codomain, v),
    )
}

/// The doubling curve `C ↦ diag(C, C⁻¹)`: the composite of two consecutive
/// unitary-chain steps, with pullback factor 2.
pub fn unitary_step_ratio(q: usize, tangents: usize, seed: u64) -> Result<HomothetyFactor> {
    let mut xs = Vec::with_capacity(tangents);
    for i in 0..tangents as u64 {
        let mut rng = stream(seed, "metric/u-step", i);
        xs.push(haar::random_skew_hermitian(q, 1.0, &mut rng));
    }
    measure_ratio(
        tangents,
        |i, t| {
            let c = crate::algebra::eigen::exp_skew_hermitian(&(&xs[i] * C::new(t, 0.0)), 1e-9)?;
            let cinv = c.adjoint();
            let mut out = CMat::zeros(2 * q, 2 * q);
            out.view_mut((0, 0), (q, q)).copy_from(&c);
            out.view_mut((q, q), (q, q)).copy_from(&cinv);
            Ok(out)
        },
        |v| v.norm().powi(2),
    )
}

/// Real part helper for the orthogonal-codomain measurements.
pub fn so_norm_sq(v: &CMat) -> f64 {
    real_part(v).norm().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inclusions::maps::{inclusion, InclusionId, ALL_INCLUSIONS};

    #[test]
    fn doubling_curve_has_factor_two() {
        let f = unitary_step_ratio(4, 20, 3).unwrap();
        assert!((f.ratio - 2.0).abs() < 1e-4 * 2.0, "{f:?}");
    }

    #[test]
    fn field_extension_is_isometric() {
        let map = inclusion(InclusionId::O_in_U, 4);
        let mut rng = stream(53, "metric-base", 0);
        let base = map.domain.sample(&mut rng);
        let f = metric_pullback_scale(&map, &base, 20, 5, 1e-9).unwrap();
        assert!((f.ratio - 1.0).abs() < 1e-4, "{f:?}");
    }

    #[test]
    fn quaternion_embedding_doubles_under_the_half_trace_convention() {
        let map = inclusion(InclusionId::Sp_in_U, 3);
        let mut rng = stream(53, "metric-base", 1);
        let base = map.domain.sample(&mut rng);
        let f = metric_pullback_scale(&map, &base, 20, 5, 1e-9).unwrap();
        assert!((f.ratio - 2.0).abs() < 2.0 * 1e-4, "{f:?}");
    }

    #[test]
    fn every_registered_inclusion_is_homothetic() {
        for (i, id) in ALL_INCLUSIONS.iter().enumerate() {
            let map = inclusion(*id, 2);
            let mut rng = stream(59, "metric-base-all", i as u64);
            let base = map.domain.sample(&mut rng);
            let f = metric_pullback_scale(&map, &base, 8, 11, 1e-8).unwrap();
            assert!(
                f.relative_spread <= 1e-4,
                "{id:?} spread {:.3e}",
                f.relative_spread
            );
            assert!(f.ratio > 0.1, "{id:?} ratio {:.3}", f.ratio);
        }
    }
}
