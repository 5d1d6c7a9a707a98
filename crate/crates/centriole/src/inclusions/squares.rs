//! Commuting squares: midpoint geodesics computed in the smaller chain and
//! in the bigger chain must coincide after embedding.

use serde::Serialize;

use crate::algebra::eigen::log_unitary_principal;
use crate::algebra::matrix::{diff_norm, imag_norm, real_part, to_complex, C};
use crate::chains::BottChain;
use crate::chains::{sample_node_points, CentrosomeClass, ChainKind, GeodesicSegment};
use crate::inclusions::fixed_points::{ChainPair, PairContext};
use crate::{Error, Result};

/// Report of one commuting-square verification between nodes `k` and `k+1`.
#[derive(Debug, Clone, Serialize)]
pub struct SquareReport {
    pub pair: ChainPair,
    pub k: usize,
    pub samples: usize,
    pub max_deviation: f64,
    /// Midpoints that failed to be shortest in the bigger node; the
    /// equal-distance statement forbids any.
    pub counterexamples: usize,
    pub ok: bool,
}

const SAMPLE_TIMES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Verify that including a midpoint and then taking its geodesic equals
/// taking the geodesic first and including it, pointwise at five times.
pub fn verify_square_commutes(
    k: usize,
    pair: ChainPair,
    chains: &[BottChain; 3],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<SquareReport> {
    if k > 7 {
        return Err(Error::Config("squares need k in 0..=7".into()));
    }
    let ctx = PairContext::new(pair, chains)?;
    let mid_node = ctx.small.node(k + 1);
    let small_base = ctx.small.base(k);
    let big_base = ctx.big.base(k);

    let mut max_dev = 0.0f64;
    let mut counterexamples = 0usize;

    for m in sample_node_points(mid_node, samples, seed ^ 0x5c5c) {
        // The embedded midpoint must still be a shortest midpoint upstairs.
        let embedded = ctx.embed(&m);
        let class = crate::chains::centrosome_membership(
            &embedded,
            big_base,
            &(big_base * C::new(-1.0, 0.0)),
            ctx.big.ambient,
            tol,
        )?;
        if class != CentrosomeClass::MemberShortest {
            counterexamples += 1;
            continue;
        }

        // Small-side geodesic. For the orthogonal chain the velocity is
        // computed through the complexification and pinned back to the
        // reals, which is an independent route from the big side.
        let w_small = small_base.adjoint() * &m;
        let mut v_small = log_unitary_principal(&w_small, 1e-8)? * C::new(2.0, 0.0);
        if ctx.small.kind == ChainKind::SO {
            let ghost = imag_norm(&v_small);
            max_dev = max_dev.max(ghost);
            v_small = to_complex(&real_part(&v_small));
        }
        let seg_small = GeodesicSegment {
            start: small_base.clone(),
            velocity: v_small,
        };

        // Big-side geodesic, computed entirely upstairs.
        let w_big = big_base.adjoint() * &embedded;
        let v_big = log_unitary_principal(&w_big, 1e-8)? * C::new(2.0, 0.0);
        let seg_big = GeodesicSegment {
            start: big_base.clone(),
            velocity: v_big,
        };

        for &t in &SAMPLE_TIMES {
            let dev = diff_norm(&ctx.embed(&seg_small.at(t)), &seg_big.at(t));
            max_dev = max_dev.max(dev);
        }
    }

    Ok(SquareReport {
        pair,
        k,
        samples,
        max_deviation: max_dev,
        counterexamples,
        ok: counterexamples == 0 && max_dev <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::build_all_chains;

    #[test]
    fn squares_commute_at_the_first_step() {
        let chains = build_all_chains(1).unwrap();
        for pair in [ChainPair::SoU, ChainPair::USp] {
            let rep = verify_square_commutes(0, pair, &chains, 5, 7, 1e-9).unwrap();
            assert!(rep.ok, "{rep:?}");
        }
    }

    #[test]
    fn squares_commute_mid_chain() {
        let chains = build_all_chains(1).unwrap();
        let rep = verify_square_commutes(4, ChainPair::USp, &chains, 5, 7, 1e-9).unwrap();
        assert!(rep.ok, "{rep:?}");
        assert_eq!(rep.counterexamples, 0);
    }
}
