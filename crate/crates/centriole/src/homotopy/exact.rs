//! Exact sequences over `{0, ℤ, ℤ₂}`: image/kernel case analysis, the
//! exactness decision, and forcing of a single unknown map.

use serde::Serialize;

use crate::homotopy::{homs_between, StableGroup, StableHom};
use crate::{Error, Result};

/// A subgroup of one of the three groups, in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subgroup {
    Trivial,
    /// `mℤ` inside ℤ, with `m ≥ 2`.
    Multiples(u64),
    Whole,
}

fn canonical(sub: Subgroup, of: StableGroup) -> Subgroup {
    match (of, sub) {
        (StableGroup::Zero, _) => Subgroup::Trivial,
        (_, Subgroup::Multiples(1)) => Subgroup::Whole,
        (_, s) => s,
    }
}

/// Image of a hom as a subgroup of its codomain.
pub fn image(h: &StableHom) -> Subgroup {
    use crate::homotopy::HomKind::*;
    canonical(
        match h.kind {
            Zero => Subgroup::Trivial,
            Identity | IsoZ2 => Subgroup::Whole,
            Mul(m) => Subgroup::Multiples(m.unsigned_abs()),
            Mod2 => Subgroup::Whole,
        },
        h.codomain,
    )
}

/// Kernel of a hom as a subgroup of its domain.
pub fn kernel(h: &StableHom) -> Subgroup {
    use crate::homotopy::HomKind::*;
    canonical(
        match h.kind {
            Zero => Subgroup::Whole,
            Identity | IsoZ2 => Subgroup::Trivial,
            Mul(_) => Subgroup::Trivial,
            Mod2 => Subgroup::Multiples(2),
        },
        h.domain,
    )
}

/// An exact sequence candidate: groups and the maps between consecutive
/// ones, some possibly unknown.
#[derive(Debug, Clone)]
pub struct ExactSequence {
    pub groups: Vec<StableGroup>,
    pub homs: Vec<Option<StableHom>>,
}

impl ExactSequence {
    pub fn new(groups: Vec<StableGroup>, homs: Vec<Option<StableHom>>) -> Result<Self> {
        if homs.len() + 1 != groups.len() {
            return Err(Error::HomMismatch(format!(
                "{} groups need {} maps, got {}",
                groups.len(),
                groups.len() - 1,
                homs.len()
            )));
        }
        for (i, h) in homs.iter().enumerate() {
            if let Some(h) = h {
                h.validate()?;
                if h.domain != groups[i] || h.codomain != groups[i + 1] {
                    return Err(Error::HomMismatch(format!(
                        "map {i} has endpoints {} -> {}, expected {} -> {}",
                        h.domain,
                        h.codomain,
                        groups[i],
                        groups[i + 1]
                    )));
                }
            }
        }
        Ok(Self { groups, homs })
    }

    /// Convenience constructor for a fully known sequence.
    pub fn known(groups: Vec<StableGroup>, homs: Vec<StableHom>) -> Result<Self> {
        Self::new(groups, homs.into_iter().map(Some).collect())
    }
}

/// The verdict of an exactness check, with the first violating interior
/// position as a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactnessOutcome {
    pub exact: bool,
    pub first_violation: Option<usize>,
}

/// Decide `image = kernel` at every interior node.
pub fn check_exactness(seq: &ExactSequence) -> Result<ExactnessOutcome> {
    let homs: Vec<&StableHom> = seq
        .homs
        .iter()
        .map(|h| h.as_ref().ok_or(Error::UnknownCount(1)))
        .collect::<std::result::Result<_, _>>()?;
    for pos in 1..seq.groups.len() - 1 {
        let im = image(homs[pos - 1]);
        let ker = kernel(homs[pos]);
        if canonical(im, seq.groups[pos]) != canonical(ker, seq.groups[pos]) {
            return Ok(ExactnessOutcome {
                exact: false,
                first_violation: Some(pos),
            });
        }
    }
    Ok(ExactnessOutcome {
        exact: true,
        first_violation: None,
    })
}

/// Multiplier bound for candidate enumeration; exactness in this universe
/// never forces larger factors.
pub const FORCING_MUL_BOUND: i64 = 12;

/// All homs completing a sequence with exactly one unknown to an exact one.
pub fn solve_forced_map(seq: &ExactSequence) -> Result<Vec<StableHom>> {
    let unknowns: Vec<usize> = seq
        .homs
        .iter()
        .enumerate()
        .filter_map(|(i, h)| h.is_none().then_some(i))
        .collect();
    if unknowns.len() != 1 {
        return Err(Error::UnknownCount(unknowns.len()));
    }
    let slot = unknowns[0];
    let mut out = Vec::new();
    for cand in homs_between(seq.groups[slot], seq.groups[slot + 1], FORCING_MUL_BOUND) {
        let mut trial = seq.clone();
        trial.homs[slot] = Some(cand);
        if check_exactness(&trial)?.exact {
            out.push(cand);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::HomKind::{self, Identity, Mod2, Mul};
    use StableGroup::*;

    fn hom(d: StableGroup, c: StableGroup, k: crate::homotopy::HomKind) -> StableHom {
        StableHom::new(d, c, k).unwrap()
    }

    #[test]
    fn doubling_sequence_is_exact() {
        // 0 -> Z --2--> Z --mod 2--> Z2 -> 0
        let seq = ExactSequence::known(
            vec![Zero, Z, Z, Z2, Zero],
            vec![
                StableHom::zero(Zero, Z),
                hom(Z, Z, Mul(2)),
                hom(Z, Z2, Mod2),
                StableHom::zero(Z2, Zero),
            ],
        )
        .unwrap();
        assert!(check_exactness(&seq).unwrap().exact);
    }

    #[test]
    fn identity_sequence_is_exact() {
        // 0 -> Z --id--> Z -> 0
        let seq = ExactSequence::known(
            vec![Zero, Z, Z, Zero],
            vec![
                StableHom::zero(Zero, Z),
                hom(Z, Z, Identity),
                StableHom::zero(Z, Zero),
            ],
        )
        .unwrap();
        assert!(check_exactness(&seq).unwrap().exact);
    }

    #[test]
    fn tripling_fails_with_witness() {
        // image 3Z differs from kernel 2Z at the middle Z.
        let seq = ExactSequence::known(
            vec![Zero, Z, Z, Z2, Zero],
            vec![
                StableHom::zero(Zero, Z),
                hom(Z, Z, Mul(3)),
                hom(Z, Z2, Mod2),
                StableHom::zero(Z2, Zero),
            ],
        )
        .unwrap();
        let out = check_exactness(&seq).unwrap();
        assert!(!out.exact);
        assert_eq!(out.first_violation, Some(2));
    }

    #[test]
    fn forcing_the_doubling_map() {
        // 0 -> Z --?--> Z --mod 2--> Z2 -> 0 forces k ↦ ±2k.
        let seq = ExactSequence::new(
            vec![Zero, Z, Z, Z2, Zero],
            vec![
                Some(StableHom::zero(Zero, Z)),
                None,
                Some(hom(Z, Z2, Mod2)),
                Some(StableHom::zero(Z2, Zero)),
            ],
        )
        .unwrap();
        let sols = solve_forced_map(&seq).unwrap();
        let kinds: Vec<_> = sols.iter().map(|h| h.kind).collect();
        assert_eq!(kinds.len(), 2);
        assert!(kinds.contains(&Mul(2)));
        assert!(kinds.contains(&Mul(-2)));
    }

    #[test]
    fn forcing_the_identity() {
        // 0 -> Z --?--> Z -> 0 forces k ↦ ±k.
        let seq = ExactSequence::new(
            vec![Zero, Z, Z, Zero],
            vec![
                Some(StableHom::zero(Zero, Z)),
                None,
                Some(StableHom::zero(Z, Zero)),
            ],
        )
        .unwrap();
        let sols = solve_forced_map(&seq).unwrap();
        let kinds: Vec<_> = sols.iter().map(|h| h.normalized().kind).collect();
        assert_eq!(kinds, vec![Identity, Identity]);
    }

    #[test]
    fn forcing_onto_the_trivial_group() {
        // Z2 --?--> 0 (boundary zeros carry no interior constraint): the
        // only candidate is the zero map.
        let seq = ExactSequence::new(vec![Z2, Zero], vec![None]).unwrap();
        let sols = solve_forced_map(&seq).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].kind, HomKind::Zero);
    }

    #[test]
    fn more_than_one_unknown_is_rejected() {
        let seq = ExactSequence::new(vec![Zero, Z, Z, Zero], vec![None, None, None]).unwrap();
        assert!(matches!(
            solve_forced_map(&seq),
            Err(Error::UnknownCount(3))
        ));
    }

    // Brute-force oracle on the truncated groups: elements of ℤ are cut to
    // [-N, N] and exactness is compared window-to-window.
    mod oracle {
        use super::*;

        const N: i64 = 12;

        fn elements(g: StableGroup) -> Vec<i64> {
            match g {
                Zero => vec![0],
                Z => (-N..=N).collect(),
                Z2 => vec![0, 1],
            }
        }

        fn apply(h: &StableHom, x: i64) -> i64 {
            match h.kind {
                crate::homotopy::HomKind::Zero => 0,
                crate::homotopy::HomKind::Identity => x,
                crate::homotopy::HomKind::Mul(m) => m * x,
                crate::homotopy::HomKind::Mod2 => x.rem_euclid(2),
                crate::homotopy::HomKind::IsoZ2 => x,
            }
        }

        /// Exactness at the node between f and g, inside the safe window.
        fn exact_at(f: &StableHom, g: &StableHom, node: StableGroup) -> bool {
            let mid = elements(node);
            let dom = elements(f.domain);
            // image ⊆ kernel
            for &y in &dom {
                let fy = apply(f, y);
                if fy.abs() <= N && mid.contains(&fy) && apply(g, fy) != 0 {
                    return false;
                }
            }
            // kernel ∩ safe window ⊆ image
            for &x in &mid {
                if x.abs() > N / 2 {
                    continue;
                }
                if apply(g, x) == 0 && !dom.iter().any(|&y| apply(f, y) == x) {
                    return false;
                }
            }
            true
        }

        #[test]
        fn oracle_agrees_with_the_case_analysis() {
            let groups = [Zero, Z, Z2];
            for a in groups {
                for b in groups {
                    for c in groups {
                        for f in homs_between(a, b, 4) {
                            for g in homs_between(b, c, 4) {
                                let seq = ExactSequence::known(vec![a, b, c], vec![f, g]).unwrap();
                                let sym = check_exactness(&seq).unwrap().exact;
                                let brute = exact_at(&f, &g, b);
                                assert_eq!(sym, brute, "disagreement for {f:?} then {g:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}
