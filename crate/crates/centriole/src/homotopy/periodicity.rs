//! Periodicity of the inclusion-induced maps, and the shifted lookups for
//! the maps induced between chain nodes.

use serde::Serialize;

use crate::homotopy::exact::{check_exactness, ExactSequence};
use crate::homotopy::{derive::derive_quotient_tables, HomotopyTables, MapPair, StableHom};
use crate::{Error, Result};

/// Outcome of the periodicity sweep.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodicityReport {
    pub range_max: usize,
    /// Structural comparisons `map(i) ≡ map(i+8)` that failed.
    pub structural_failures: Vec<(MapPair, usize)>,
    /// Degrees where the tabulated map does not make its window exact or is
    /// not among the forced solutions.
    pub forcing_failures: Vec<(MapPair, usize)>,
    pub ok: bool,
}

/// Check `f_{i+8} = f_i` and `g_{i+8} = g_i` structurally for all four map
/// rows, and additionally re-force the first two rows from their exact
/// sequences at every degree: the tabulated map must make its window exact
/// and must lie in the solution set of the window with the map masked.
pub fn verify_periodicity(tables: &HomotopyTables, range_max: usize) -> Result<PeriodicityReport> {
    if range_max < 8 {
        return Err(Error::Config("periodicity needs range_max >= 8".into()));
    }
    let mut structural = Vec::new();
    for pair in [MapPair::OToU, MapPair::UToSp, MapPair::SpToU, MapPair::UToO] {
        for i in 0..=range_max - 8 {
            let a = tables.stable_map(pair, i)?;
            let b = tables.stable_map(pair, i + 8)?;
            if !a.equivalent_up_to_sign(&b) {
                structural.push((pair, i));
            }
        }
    }

    // Forcing sweep through the bundle windows against the quotient rows
    // (cached ones if present, freshly derived otherwise). At each degree,
    // the set of maps admitting connecting homs that make the window exact
    // must contain the tabulated map.
    let (u_mod_o, sp_mod_u) = match (tables.u_mod_o, tables.sp_mod_u) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            let d = derive_quotient_tables(tables)?;
            (d.u_mod_o, d.sp_mod_u)
        }
    };
    let mut forcing = Vec::new();
    for i in 1..=range_max {
        for (pair, quotient_row) in [(MapPair::OToU, &u_mod_o), (MapPair::UToSp, &sp_mod_u)] {
            let tabulated = tables.stable_map(pair, i)?;
            let prev = tables.stable_map(pair, i + 7)?; // ≡ i - 1 mod 8
            let middle = quotient_row[i % 8];
            let mut forced: Vec<StableHom> = Vec::new();
            for cand in crate::homotopy::homs_between(
                tabulated.domain,
                tabulated.codomain,
                crate::homotopy::exact::FORCING_MUL_BOUND,
            ) {
                let mut admissible = false;
                'search: for q in crate::homotopy::homs_between(tabulated.codomain, middle, 4) {
                    for d in crate::homotopy::homs_between(middle, prev.domain, 4) {
                        let seq = ExactSequence::known(
                            vec![
                                tabulated.domain,
                                tabulated.codomain,
                                middle,
                                prev.domain,
                                prev.codomain,
                            ],
                            vec![cand, q, d, prev],
                        )?;
                        if check_exactness(&seq)?.exact {
                            admissible = true;
                            break 'search;
                        }
                    }
                }
                if admissible {
                    forced.push(cand);
                }
            }
            if !forced.iter().any(|h| h.equivalent_up_to_sign(&tabulated)) {
                forcing.push((pair, i % 8));
            }
        }
    }
    forcing.sort();
    forcing.dedup();

    let ok = structural.is_empty() && forcing.is_empty();
    Ok(PeriodicityReport {
        range_max,
        structural_failures: structural,
        forcing_failures: forcing,
        ok,
    })
}

/// Vertical inclusions between chain nodes, for the shifted lookups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerticalPair {
    /// `P_k ⊂ P̃_k`.
    SmallInMid,
    /// `P̃_k ⊂ P̄_k`.
    MidInBig,
}

/// The map `π_i(P_k) → π_i(P̃_k)` (or its symplectic analogue) as a shifted
/// table lookup; the node-1 inclusion at degrees ≡ 0 mod 8 lands in a
/// trivial group and returns the zero map.
pub fn inclusion_induced_map(
    tables: &HomotopyTables,
    pair: VerticalPair,
    k: usize,
    i: usize,
) -> Result<StableHom> {
    let map_pair = match pair {
        VerticalPair::SmallInMid => MapPair::OToU,
        VerticalPair::MidInBig => MapPair::UToSp,
    };
    let shifted = tables.stable_map(map_pair, i + k)?;
    if k % 8 == 1 && i.is_multiple_of(8) {
        return Ok(StableHom::zero(shifted.domain, shifted.codomain));
    }
    Ok(shifted)
}
