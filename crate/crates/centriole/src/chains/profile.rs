//! Distance profiles along a chain.
//!
//! Entry `k ≤ 7` is the length of the explicit geodesic from `J_k` to
//! `-J_k` whose midpoint is `J_{k+1}`; the geodesic is verified to stay
//! inside node `k` before its length is reported. For `k = 8` the unitary
//! chain still owns an honest midpoint, `i·J_1⋯J_8`, which anticommutes
//! with all eight structures; no such real or quaternionic structure exists
//! (the Hurwitz-Radon bound is 8 on ℝ^16), so the orthogonal and symplectic
//! entries report the ambient pole distance of `J_8`, which is what the
//! equal-distance statement degenerates to at a zero-dimensional node.

use crate::algebra::eigen::log_unitary_principal;
use crate::algebra::matrix::{anticommutator_norm, structure_residual, CMat, C, C_I};
use crate::chains::{midpoint_to_geodesic, BottChain, ChainKind};
use crate::{Error, Result};

/// Lengths of the nine base-to-pole geodesics of a chain, in the ambient
/// metric. All entries agree for a well-formed chain.
pub fn chain_distance_profile(chain: &BottChain) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(9);
    for k in 0..=7 {
        let node = chain.node(k);
        let seg = midpoint_to_geodesic(chain.base(k + 1), chain.base(k), chain.ambient, 1e-10)
            .map_err(|e| Error::MalformedChain(format!("node {k}: {e}")))?;
        // The whole geodesic must lie in node k, not just its endpoints.
        for &t in &[0.25, 0.75] {
            let point = seg.at(t);
            let m = node.membership(&point, 1e-8);
            if !m.ok {
                return Err(Error::MalformedChain(format!(
                    "geodesic leaves node {k} at t = {t}: residual {:.3e}",
                    m.matrix_residual
                )));
            }
        }
        out.push(chain.metric.norm(&seg.velocity));
    }
    out.push(final_entry(chain)?);
    Ok(out)
}

fn final_entry(chain: &BottChain) -> Result<f64> {
    match chain.kind {
        ChainKind::U => {
            // J_9 = i · J_1⋯J_8 anticommutes with every J_k and squares to
            // -I, so it is a genuine shortest midpoint for node 8.
            let dim = chain.ambient.dim();
            let mut prod = CMat::identity(dim, dim);
            for k in 1..=8 {
                prod *= chain.base(k);
            }
            let j9 = prod * C_I;
            if structure_residual(&j9) > 1e-10 {
                return Err(Error::MalformedChain("i·J_1⋯J_8 is not a structure".into()));
            }
            for k in 1..=8 {
                if anticommutator_norm(&j9, chain.base(k)) > 1e-10 {
                    return Err(Error::MalformedChain(format!(
                        "i·J_1⋯J_8 fails to anticommute with J_{k}"
                    )));
                }
            }
            let seg = midpoint_to_geodesic(&j9, chain.base(8), chain.ambient, 1e-10)?;
            Ok(chain.metric.norm(&seg.velocity))
        }
        ChainKind::SO | ChainKind::Sp => {
            // Ambient pole distance of J_8: the velocity of a shortest
            // ambient geodesic from J_8 to -J_8.
            let rel = chain.base(8).adjoint() * (chain.base(8) * C::new(-1.0, 0.0));
            let v = log_unitary_principal(&rel, 1e-9)?;
            Ok(chain.metric.norm(&v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::build_all_chains;
    use std::f64::consts::PI;

    #[test]
    fn all_nine_entries_agree_at_four_pi() {
        for chain in build_all_chains(1).unwrap() {
            let profile = chain_distance_profile(&chain).unwrap();
            assert_eq!(profile.len(), 9);
            for (k, &d) in profile.iter().enumerate() {
                assert!(
                    (d - 4.0 * PI).abs() < 1e-9,
                    "{:?} entry {k}: {d} vs {}",
                    chain.kind,
                    4.0 * PI
                );
            }
        }
    }
}
