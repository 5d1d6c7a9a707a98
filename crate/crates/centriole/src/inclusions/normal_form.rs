//! Block normal forms of the half-way and final chain nodes, and the
//! isometry consequences they pin down.
//!
//! In the gauge of the explicit Clifford system, `B_{2n}·(J_3 J)` is a
//! block-diagonal pair `(C, C⁻¹)` over `Sp_{2n}` for every node-4 point
//! `J`, and the inner tower does the same at node 8 with `SO_n` blocks;
//! both identifications rescale the metric by the factors 8 and 16. The
//! unitary chain's node charts trade a node point `m` for the small unitary
//! `F^*(J_k⁻¹ m)F` on the nested tower frame `F`, and the fixed-point
//! structure downstairs is recovered by solving for the twisted-conjugation
//! matrix `A` with `A conj(u) A⁻¹ = u` on orthogonal-chain samples: its
//! reality type `A·conj(A) = ±I` decides whether the small fixed set is an
//! orthogonal or a symplectic form, and the symmetric square root of `A`
//! rotates the samples into literal real matrices.

use serde::Serialize;

use crate::algebra::eigen::{exp_skew_hermitian, hermitian_eigen, unitary_eigen};
use crate::algebra::matrix::{
    conj, imag_norm, max_abs, real_part, to_complex, unitary_residual, CMat, RMat, C, C_I,
};
use crate::algebra::quaternion::QMat;
use crate::chains::clifford::{b_block_quat, inner_towers, left_action};
use crate::chains::sample::{sample_node_points, stabilizer_tangent};
use crate::chains::{BottChain, ChainKind};
use crate::inclusions::metric_scale::{fd_derivative, measure_ratio, HomothetyFactor, FD_STEP};
use crate::rng::stream;
use crate::{Error, Result};

/// Which normal-form statement to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum NormalFormCheck {
    /// Node 4 of the orthogonal chain: `Sp_{2n}` blocks, factor 8.
    P4,
    /// Node 8 via the inner tower: `SO_n` blocks, factor 16.
    P8,
    /// Node 8 of the unitary chain: `U_n` chart, factor 16, and the
    /// orthogonal fixed set landing in a conjugated `O_n`.
    P8Tilde,
    /// Node 4 of the unitary chain: `U_{4n}` chart, factor 4, and the
    /// orthogonal-chain fixed set landing in a symplectic form.
    P4Pair,
}

/// Residuals of one normal-form verification.
#[derive(Debug, Clone, Serialize)]
pub struct NormalFormReport {
    pub which: NormalFormCheck,
    pub n: usize,
    pub samples: usize,
    /// Worst residual of the block identification across samples.
    pub max_block_residual: f64,
    pub metric_ratio: HomothetyFactor,
    /// Residual of `A·conj(A) ∓ I` for the chart checks, when applicable.
    pub reality_type_residual: Option<f64>,
    pub ok: bool,
}

/// Read the quaternion matrix `Q` with `left_action(Q) = m`, with the
/// residual against ℍ-linearity.
pub fn quat_view(m: &RMat) -> (QMat, f64) {
    let h = m.nrows() / 4;
    let q = QMat::from_fn(h, h, |r, c| {
        crate::algebra::quaternion::Quaternion::new(
            m[(r, c)],
            m[(h + r, c)],
            m[(2 * h + r, c)],
            m[(3 * h + r, c)],
        )
    });
    let resid = (left_action(&q) - m).abs().max();
    (q, resid)
}

/// `[[0, -C⁻¹], [C, 0]]` for unitary quaternion `C`.
fn antidiag_block(c: &QMat) -> QMat {
    let z = QMat::zeros(c.rows, c.cols);
    let minus_cinv = c.adjoint().neg();
    QMat::from_blocks(&z, &minus_cinv, c, &z)
}

fn off_diagonal_residual(d: &QMat, half: usize) -> f64 {
    d.block(0, half, half, half)
        .max_abs()
        .max(d.block(half, 0, half, half).max_abs())
}

/// Node-4 identification: forward block-extraction on samples and reverse
/// construction from random `Sp_{2n}` elements, plus the factor 8.
pub fn verify_p4(
    chains: &[BottChain; 3],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<NormalFormReport> {
    let so = &chains[0];
    let n = so.n;
    let j3 = real_part(so.base(3));
    let b2n = b_block_quat(4 * n);
    let node = so.node(4);

    let mut worst = 0.0f64;
    // Forward: samples land on Sp_{2n} block pairs after translation.
    for m in sample_node_points(node, samples, seed ^ 0xb4) {
        let prod = &j3 * real_part(&m);
        let (khat, qresid) = quat_view(&prod);
        worst = worst.max(qresid);
        let d = b2n.mul(&khat);
        worst = worst.max(off_diagonal_residual(&d, 2 * n));
        let c = d.block(0, 0, 2 * n, 2 * n);
        let cinv = d.block(2 * n, 2 * n, 2 * n, 2 * n);
        worst = worst.max(c.mul(&cinv).sub(&QMat::identity(2 * n)).max_abs());
        worst = worst.max(c.unitary_residual());
    }
    // Reverse: every Sp_{2n} element produces a node-4 point.
    for idx in 0..samples as u64 {
        let mut rng = stream(seed, "p4-reverse", idx);
        let c = crate::algebra::haar::random_symplectic(2 * n, &mut rng);
        let j = -(&j3 * left_action(&antidiag_block(&c)));
        let mem = node.membership(&to_complex(&j), tol.max(1e-9));
        worst = worst
            .max(mem.matrix_residual)
            .max(mem.tag_residual.unwrap_or(0.0));
    }

    // Factor 8 against the standard symplectic metric.
    let mut tangents = Vec::new();
    for idx in 0..20u64 {
        let mut rng = stream(seed, "p4-metric", idx);
        // Unit tangent in the -tr/2 convention of sp_{2n}.
        tangents.push(crate::algebra::haar::random_skew_symplectic(
            2 * n,
            2.0f64.sqrt(),
            &mut rng,
        ));
    }
    let metric_ratio = measure_ratio(
        tangents.len(),
        |i, t| {
            let cc = exp_skew_hermitian(&(&tangents[i] * C::new(t, 0.0)), 1e-9)?;
            let (cq, resid) = QMat::from_complex(&cc);
            if resid > 1e-8 {
                return Err(Error::NotStructure(
                    "tangent left the symplectic group".into(),
                ));
            }
            Ok(to_complex(&-(&j3 * left_action(&antidiag_block(&cq)))))
        },
        |v| v.norm().powi(2),
    )?;

    let ok = worst <= tol && (metric_ratio.ratio - 8.0).abs() <= 8.0 * 1e-4;
    Ok(NormalFormReport {
        which: NormalFormCheck::P4,
        n,
        samples,
        max_block_residual: worst,
        metric_ratio,
        reality_type_residual: None,
        ok,
    })
}

/// Node-8 identification through the inner tower: `SO_n` blocks and the
/// factor 16.
pub fn verify_p8(
    chains: &[BottChain; 3],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<NormalFormReport> {
    let so = &chains[0];
    let n = so.n;
    let towers = inner_towers(n);
    let bn = b_block_quat(2 * n);
    let mut worst = 0.0f64;

    // The tower itself: anticommuting symplectic structures.
    for (a, ta) in towers.iter().enumerate() {
        let tc = ta.to_complex();
        worst = worst.max(crate::algebra::matrix::structure_residual(&tc));
        worst = worst.max(unitary_residual(&tc));
        worst = worst.max(crate::algebra::matrix::symplectic_residual(&tc));
        for tb in towers.iter().skip(a + 1) {
            worst = worst.max(crate::algebra::matrix::anticommutator_norm(
                &tc,
                &tb.to_complex(),
            ));
        }
    }

    let t7 = &towers[2];
    let t8 = &towers[3];

    // Forward: conjugate the base by the inner stabilizer SO_n × SO_n and
    // extract the orthogonal block.
    for idx in 0..samples as u64 {
        let mut rng = stream(seed, "p8-forward", idx);
        let g1 = crate::algebra::haar::random_special_orthogonal(n, &mut rng);
        let g2 = crate::algebra::haar::random_special_orthogonal(n, &mut rng);
        let g = QMat::from_fn(2 * n, 2 * n, |r, c| {
            let v = if r < n && c < n {
                g1[(r, c)]
            } else if r >= n && c >= n {
                g2[(r - n, c - n)]
            } else {
                0.0
            };
            crate::algebra::quaternion::Quaternion::new(v, 0.0, 0.0, 0.0)
        });
        let jp = g.mul(t8).mul(&g.adjoint());
        let e = bn.mul(&t7.mul(&jp));
        worst = worst.max(off_diagonal_residual(&e, n));
        let d = e.block(0, 0, n, n);
        let dinv = e.block(n, n, n, n);
        worst = worst.max(d.mul(&dinv).sub(&QMat::identity(n)).max_abs());
        // D must be real special orthogonal.
        let mut dr = RMat::zeros(n, n);
        let mut quat_ghost = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let q = d[(r, c)];
                dr[(r, c)] = q.a;
                quat_ghost = quat_ghost.max(q.b.abs()).max(q.c.abs()).max(q.d.abs());
            }
        }
        worst = worst.max(quat_ghost);
        worst = worst.max((dr.determinant() - 1.0).abs());
    }
    // Reverse: every SO_n block produces an inner node-8 point.
    for idx in 0..samples as u64 {
        let mut rng = stream(seed, "p8-reverse", idx);
        let d = crate::algebra::haar::random_special_orthogonal(n, &mut rng);
        let dq = QMat::from_fn(n, n, |r, c| {
            crate::algebra::quaternion::Quaternion::new(d[(r, c)], 0.0, 0.0, 0.0)
        });
        let jp = t7.mul(&antidiag_block(&dq)).neg();
        let jc = jp.to_complex();
        worst = worst.max(crate::algebra::matrix::structure_residual(&jc));
        worst = worst.max(unitary_residual(&jc));
        worst = worst.max(crate::algebra::matrix::symplectic_residual(&jc));
        for t in &towers[..3] {
            worst = worst.max(crate::algebra::matrix::anticommutator_norm(
                &jc,
                &t.to_complex(),
            ));
        }
    }

    // Factor 16: the composite SO_m → Sp_{2m} → SO_{16m}. The factor does
    // not depend on the size, and SO_1 has no tangents, so the measurement
    // runs at m = max(n, 2).
    let m = n.max(2);
    let (mj3, mt7) = if m == n {
        (real_part(so.base(3)), t7.clone())
    } else {
        let cliff = crate::chains::make_clifford_system(m)?;
        (cliff.j(3).clone(), inner_towers(m)[2].clone())
    };
    let mut tangents = Vec::new();
    for idx in 0..20u64 {
        let mut rng = stream(seed, "p8-metric", idx);
        tangents.push(crate::algebra::haar::random_skew_symmetric(
            m, 1.0, &mut rng,
        ));
    }
    let metric_ratio = measure_ratio(
        tangents.len(),
        |i, t| {
            let d = exp_skew_hermitian(&(to_complex(&tangents[i]) * C::new(t, 0.0)), 1e-9)?;
            let dq = QMat::from_fn(m, m, |r, c| {
                crate::algebra::quaternion::Quaternion::new(d[(r, c)].re, 0.0, 0.0, 0.0)
            });
            let c_of_d = mt7.mul(&antidiag_block(&dq)).neg();
            Ok(to_complex(&-(&mj3 * left_action(&antidiag_block(&c_of_d)))))
        },
        |v| v.norm().powi(2),
    )?;

    let ok = worst <= tol && (metric_ratio.ratio - 16.0).abs() <= 16.0 * 1e-4;
    Ok(NormalFormReport {
        which: NormalFormCheck::P8,
        n,
        samples,
        max_block_residual: worst,
        metric_ratio,
        reality_type_residual: None,
        ok,
    })
}

/// Chart of an even unitary-chain node on its tower frame.
pub struct NodeChart<'a> {
    chain: &'a BottChain,
    k: usize,
    frame: &'a CMat,
}

impl<'a> NodeChart<'a> {
    pub fn new(chain: &'a BottChain, k: usize) -> Result<Self> {
        let frame = match k {
            4 => chain.refined_frame(1),
            8 => chain.refined_frame(3),
            _ => return Err(Error::Config("charts exist at nodes 4 and 8".into())),
        };
        Ok(Self { chain, k, frame })
    }

    /// Small unitary coordinate of a node point.
    pub fn apply(&self, m: &CMat) -> CMat {
        self.frame.adjoint() * (self.chain.base(self.k).adjoint() * m) * self.frame
    }

    pub fn small_dim(&self) -> usize {
        self.frame.ncols()
    }
}

/// Solve for a unitary `A` with `A conj(u_i) A⁻¹ = u_i` across samples.
/// Returns `A` and the worst per-sample residual.
pub fn solve_twist(us: &[CMat]) -> Result<(CMat, f64)> {
    let d = us[0].nrows();
    let dd = d * d;
    let mut h = CMat::zeros(dd, dd);
    for u in us {
        // vec(A conj(u)) = (conj(u)ᵀ ⊗ I) vec(A); vec(u A) = (I ⊗ u) vec(A).
        let mut m = CMat::zeros(dd, dd);
        let cu = conj(u);
        // (conj(u)ᵀ ⊗ I)
        for bc in 0..d {
            for br in 0..d {
                let coeff = cu[(br, bc)]; // (cuᵀ)[bc][br]
                for i in 0..d {
                    m[(bc * d + i, br * d + i)] += coeff;
                }
            }
        }
        // -(I ⊗ u)
        for b in 0..d {
            for r in 0..d {
                for c in 0..d {
                    m[(b * d + r, b * d + c)] -= u[(r, c)];
                }
            }
        }
        h += m.adjoint() * &m;
    }
    let (_vals, vecs) = hermitian_eigen(&h);
    let a_vec = vecs.column(0);
    let mut a = CMat::zeros(d, d);
    for col in 0..d {
        for row in 0..d {
            a[(row, col)] = a_vec[col * d + row];
        }
    }
    // Unitarize by the polar factor.
    let (vals, v) = hermitian_eigen(&(a.adjoint() * &a));
    if vals[0] <= 1e-12 {
        return Err(Error::Singular("twist solve produced a singular A".into()));
    }
    let inv_sqrt = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&t| C::new(1.0 / t.sqrt(), 0.0)),
    ));
    let a = &a * (&v * inv_sqrt * v.adjoint());
    let mut worst = 0.0f64;
    for u in us {
        worst = worst.max(max_abs(&(&a * conj(u) * a.adjoint() - u)));
    }
    Ok((a, worst))
}

/// Principal square root of a unitary matrix.
fn unitary_sqrt(a: &CMat) -> Result<CMat> {
    let (angles, v) = unitary_eigen(a, 1e-8)?;
    let d = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        angles.len(),
        angles.iter().map(|&t| (C_I * C::new(t / 2.0, 0.0)).exp()),
    ));
    Ok(&v * d * v.adjoint())
}

/// Chart-level verification at node 4 or 8 of the unitary chain.
///
/// Checks chart unitarity on samples, the metric factor, and the reality
/// type of the twisted conjugation induced by the orthogonal chain:
/// `A conj(A) = I` at node 8 (orthogonal form; the conjugated samples
/// become real orthogonal matrices) and `A conj(A) = -I` at node 4
/// (symplectic form).
pub fn verify_chart(
    which: NormalFormCheck,
    chains: &[BottChain; 3],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<NormalFormReport> {
    let (k, expected_ratio, real_type) = match which {
        NormalFormCheck::P8Tilde => (8usize, 16.0, true),
        NormalFormCheck::P4Pair => (4usize, 4.0, false),
        _ => return Err(Error::Config("chart checks are P8Tilde and P4Pair".into())),
    };
    let u_chain = &chains[1];
    let so_chain = &chains[0];
    assert_eq!(u_chain.kind, ChainKind::U);
    let chart = NodeChart::new(u_chain, k)?;
    let node = u_chain.node(k);

    let mut worst = 0.0f64;
    // Chart unitarity on unitary-node samples, and base normalization.
    worst = worst.max(max_abs(
        &(chart.apply(u_chain.base(k)) - CMat::identity(chart.small_dim(), chart.small_dim())),
    ));
    for m in sample_node_points(node, samples, seed ^ 0xc4a7) {
        worst = worst.max(unitary_residual(&chart.apply(&m)));
    }

    // Metric factor: ambient speed over chart speed along node curves.
    let mut ratio_tangents = Vec::new();
    let mut idx = 0u64;
    while ratio_tangents.len() < 20 && idx < 200 {
        let mut rng = stream(seed, "chart-metric", idx);
        idx += 1;
        if let Some(x) = stabilizer_tangent(node, &mut rng) {
            // Require a non-degenerate bracket with the base.
            let bracket = &x * &node.base - &node.base * &x;
            if bracket.norm() > 1e-6 {
                ratio_tangents.push(x);
            }
        }
    }
    if ratio_tangents.len() < 2 {
        return Err(Error::Singular("no usable chart tangents".into()));
    }
    let count = ratio_tangents.len();
    let base = node.base.clone();
    let metric_ratio = {
        let mut ratios = Vec::with_capacity(count);
        for x in &ratio_tangents {
            let curve = |t: f64| -> Result<CMat> {
                let g = exp_skew_hermitian(&(x * C::new(t, 0.0)), 1e-9)?;
                Ok(&g * &base * g.adjoint())
            };
            let mut ambient_curve = curve;
            let d_ambient = fd_derivative(&mut ambient_curve, FD_STEP)?;
            let mut chart_curve = |t: f64| -> Result<CMat> {
                let g = exp_skew_hermitian(&(x * C::new(t, 0.0)), 1e-9)?;
                Ok(chart.apply(&(&g * &base * g.adjoint())))
            };
            let d_chart = fd_derivative(&mut chart_curve, FD_STEP)?;
            let down = d_chart.norm().powi(2);
            if down < 1e-16 {
                continue;
            }
            ratios.push(u_chain.metric.scale * d_ambient.norm().powi(2) / down);
        }
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mid = 0.5 * (lo + hi);
        let spread = (hi - lo) / mid.abs().max(1e-300);
        if spread > 1e-4 {
            return Err(Error::NonHomothety {
                spread,
                count: ratios.len(),
            });
        }
        HomothetyFactor {
            ratio: mid,
            relative_spread: spread,
            tangents: ratios.len(),
        }
    };

    // Orthogonal-chain samples through the chart: solve the twist.
    let so_node = so_chain.node(k);
    let us: Vec<CMat> = sample_node_points(so_node, samples.max(4), seed ^ 0x50c4)
        .iter()
        .map(|m| chart.apply(m))
        .collect();
    let (a, twist_resid) = solve_twist(&us)?;
    worst = worst.max(twist_resid);
    let type_target = if real_type {
        CMat::identity(a.nrows(), a.nrows())
    } else {
        CMat::identity(a.nrows(), a.nrows()) * C::new(-1.0, 0.0)
    };
    let reality = max_abs(&(&a * conj(&a) - type_target));

    // For the orthogonal type, rotate the samples into literal real
    // orthogonal matrices by the symmetric square root of A.
    if real_type {
        let b = unitary_sqrt(&a)?;
        for u in &us {
            let psi = b.adjoint() * u * &b;
            worst = worst.max(imag_norm(&psi)).max(unitary_residual(&psi));
        }
    } else {
        // Symplectic type: A conj(u) A⁻¹ = u is the defining reality
        // condition; additionally A must be skew-symmetric.
        worst = worst.max(max_abs(&(&a + a.transpose())));
    }

    let ok = worst <= tol.max(1e-9)
        && reality <= 1e-8
        && (metric_ratio.ratio - expected_ratio).abs() <= expected_ratio * 1e-4;
    Ok(NormalFormReport {
        which,
        n: u_chain.n,
        samples,
        max_block_residual: worst,
        metric_ratio,
        reality_type_residual: Some(reality),
        ok,
    })
}

/// Entry point covering all four normal-form statements.
pub fn verify_isometry_normal_form(
    which: NormalFormCheck,
    chains: &[BottChain; 3],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<NormalFormReport> {
    match which {
        NormalFormCheck::P4 => verify_p4(chains, samples, seed, tol),
        NormalFormCheck::P8 => verify_p8(chains, samples, seed, tol),
        NormalFormCheck::P8Tilde | NormalFormCheck::P4Pair => {
            verify_chart(which, chains, samples, seed, tol)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::build_all_chains;

    #[test]
    fn p4_blocks_and_factor_eight() {
        let chains = build_all_chains(1).unwrap();
        let rep = verify_p4(&chains, 10, 3, 1e-10).unwrap();
        assert!(rep.ok, "{rep:?}");
        assert!((rep.metric_ratio.ratio - 8.0).abs() < 8.0 * 1e-4);
    }

    #[test]
    fn p8_blocks_and_factor_sixteen() {
        let chains = build_all_chains(1).unwrap();
        let rep = verify_p8(&chains, 10, 3, 1e-10).unwrap();
        assert!(rep.ok, "{rep:?}");
        assert!((rep.metric_ratio.ratio - 16.0).abs() < 16.0 * 1e-4);
    }

    #[test]
    fn unitary_chart_at_node_eight() {
        let chains = build_all_chains(1).unwrap();
        let rep = verify_chart(NormalFormCheck::P8Tilde, &chains, 10, 3, 1e-9).unwrap();
        assert!(rep.ok, "{rep:?}");
    }

    #[test]
    fn unitary_chart_at_node_four() {
        let chains = build_all_chains(1).unwrap();
        let rep = verify_chart(NormalFormCheck::P4Pair, &chains, 10, 3, 1e-9).unwrap();
        assert!(rep.ok, "{rep:?}");
    }

    #[test]
    fn quat_view_round_trips() {
        let q = QMat::from_fn(2, 2, |r, c| {
            crate::algebra::quaternion::Quaternion::new(r as f64, 1.0, c as f64, -0.5)
        });
        let m = left_action(&q);
        let (back, resid) = quat_view(&m);
        assert!(resid < 1e-14);
        assert!(back.sub(&q).max_abs() < 1e-14);
    }
}
