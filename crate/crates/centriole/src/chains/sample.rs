//! Deterministic sampling of chain-node points.
//!
//! A node is an orbit of the identity component of the stabilizer of its
//! defining structures, so samples are conjugates of the base point by
//! `exp(X)` with `X` a random skew element of the stabilizer algebra. The
//! projection onto that algebra averages a Gaussian over the finite group
//! generated by `J_1, …, J_{k-1}` (a Reynolds operator); because the
//! conjugation operators commute, the subset-product average factors into
//! one `X ↦ (X + J X J⁻¹)/2` step per generator. Exponentiating keeps every
//! sample exactly inside the identity component at every node.

use rand::Rng;

use crate::algebra::eigen::exp_skew_hermitian;
use crate::algebra::haar::gaussian_complex;
use crate::algebra::matrix::{conj, k_block, real_part, skew_part, to_complex, CMat};
use crate::chains::{Ambient, ChainNode};
use crate::rng::stream;

/// A random element of the node's stabilizer Lie algebra (skew, in the
/// ambient Lie algebra, commuting with the prior structures), normalized to
/// unit Frobenius norm. Returns `None` when the algebra is trivial.
pub fn stabilizer_tangent(node: &ChainNode, rng: &mut impl Rng) -> Option<CMat> {
    let n = node.ambient.dim();
    let mut g = gaussian_complex(n, n, rng);
    match node.ambient {
        Ambient::SpecialOrthogonal { .. } => {
            g = to_complex(&real_part(&g));
        }
        Ambient::Unitary { .. } => {}
        Ambient::Symplectic { r } => {
            let k = k_block(r);
            g = (&g + &k * conj(&g) * k.transpose()).scale(0.5);
        }
    }
    let mut x = skew_part(&g);
    for j in node.stabilized() {
        x = (&x + j * &x * j.adjoint()).scale(0.5);
    }
    let norm = x.norm();
    if norm < 1e-9 {
        return None;
    }
    x.scale_mut(1.0 / norm);
    Some(x)
}

/// A random element of the identity component of the node's stabilizer.
pub fn sample_stabilizer(node: &ChainNode, rng: &mut impl Rng) -> CMat {
    let n = node.ambient.dim();
    match stabilizer_tangent(node, rng) {
        None => CMat::identity(n, n),
        Some(mut x) => {
            let scale: f64 = rng.gen_range(0.3..2.0);
            x.scale_mut(scale);
            exp_skew_hermitian(&x, 1e-9).expect("projected tangent is skew")
        }
    }
}

/// `count` points of the node, deterministic in `(seed, index)`.
///
/// Node 0 is the ambient group itself, so its samples are Haar-style group
/// elements; deeper nodes are stabilizer conjugates of the base structure.
pub fn sample_node_points(node: &ChainNode, count: usize, seed: u64) -> Vec<CMat> {
    let label = format!("node-sample/{}/{}", node.chain.label(), node.k);
    (0..count as u64)
        .map(|idx| {
            let mut rng = stream(seed, &label, idx);
            if node.k == 0 {
                return match node.ambient {
                    Ambient::SpecialOrthogonal { dim } => to_complex(
                        &crate::algebra::haar::random_special_orthogonal(dim, &mut rng),
                    ),
                    Ambient::Unitary { dim } => crate::algebra::haar::random_unitary(dim, &mut rng),
                    Ambient::Symplectic { r } => {
                        crate::algebra::haar::random_symplectic(r, &mut rng).to_complex()
                    }
                };
            }
            let g = sample_stabilizer(node, &mut rng);
            &g * &node.base * g.adjoint()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::{diff_norm, C};
    use crate::algebra::pfaffian::pfaffian_sign;
    use crate::algebra::TOL_PREDICATE;
    use crate::chains::{build_all_chains, ChainKind};

    #[test]
    fn samples_satisfy_membership_everywhere() {
        for chain in build_all_chains(1).unwrap() {
            for node in &chain.nodes {
                for (i, m) in sample_node_points(node, 4, 42).iter().enumerate() {
                    let check = node.membership(m, TOL_PREDICATE);
                    assert!(
                        check.ok,
                        "{:?} node {} sample {i}: {:?}",
                        chain.kind, node.k, check
                    );
                }
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let chains = build_all_chains(1).unwrap();
        let node = chains[1].node(3);
        let a = sample_node_points(node, 3, 7);
        let b = sample_node_points(node, 3, 7);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(diff_norm(x, y), 0.0);
        }
        let c = sample_node_points(node, 3, 8);
        assert!(
            diff_norm(&a[0], &c[0]) > 1e-6,
            "different seeds must differ"
        );
    }

    #[test]
    fn so_node1_pfaffian_is_constant_across_samples() {
        let chains = build_all_chains(1).unwrap();
        let node = chains[0].node(1);
        let expected = pfaffian_sign(&real_part(&node.base), 1e-10).unwrap();
        for m in sample_node_points(node, 100, 11) {
            let s = pfaffian_sign(&real_part(&m), 1e-8).unwrap();
            assert_eq!(s, expected);
        }
    }

    #[test]
    fn negation_stays_in_the_node_below_the_top() {
        // X ↦ -X preserves nodes 1..=7 of every chain.
        for chain in build_all_chains(1).unwrap() {
            for k in 1..=7 {
                let node = chain.node(k);
                for m in sample_node_points(node, 2, 3) {
                    let neg = &m * C::new(-1.0, 0.0);
                    let check = node.membership(&neg, TOL_PREDICATE);
                    assert!(check.ok, "{:?} node {k} rejected -X", chain.kind);
                }
            }
        }
    }

    #[test]
    fn stabilizer_fixes_prior_structures() {
        let chains = build_all_chains(1).unwrap();
        for kind_idx in 0..3 {
            let node = chains[kind_idx].node(5);
            let mut rng = stream(13, "stab-check", kind_idx as u64);
            let g = sample_stabilizer(node, &mut rng);
            assert!(node.ambient.contains(&g, 1e-9));
            for a in 1..5 {
                let j = chains[kind_idx].base(a);
                assert!(
                    crate::algebra::matrix::commutator_norm(&g, j) < 1e-9,
                    "{:?} stabilizer must commute with J_{a}",
                    ChainKind::SO
                );
            }
        }
    }
}
