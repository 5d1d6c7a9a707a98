//! Stable homotopy bookkeeping over the groups `{0, ℤ, ℤ₂}`.
//!
//! The classical groups have eight-periodic stable homotopy, and the maps
//! induced by the standard inclusions are pinned down by the long exact
//! sequences of the bundles `O → U → U/O` and `U → Sp → Sp/U`. This module
//! stores the tables, derives the quotient rows by exactness, and exposes
//! the forcing arguments as checkable operations.

pub mod derive;
pub mod exact;
pub mod periodicity;

pub use derive::{derive_quotient_tables, QuotientDerivation};
pub use exact::{check_exactness, solve_forced_map, ExactSequence, ExactnessOutcome, Subgroup};
pub use periodicity::{inclusion_induced_map, verify_periodicity, PeriodicityReport, VerticalPair};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A stable homotopy group: trivial, infinite cyclic, or order two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StableGroup {
    Zero,
    Z,
    Z2,
}

impl std::fmt::Display for StableGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StableGroup::Zero => write!(f, "0"),
            StableGroup::Z => write!(f, "Z"),
            StableGroup::Z2 => write!(f, "Z2"),
        }
    }
}

/// The shape of a homomorphism between stable groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomKind {
    Zero,
    Identity,
    /// `k ↦ m·k` on ℤ, `m ≠ 0`.
    Mul(i64),
    /// Reduction ℤ → ℤ₂.
    Mod2,
    /// The canonical isomorphism between two copies of ℤ₂.
    IsoZ2,
}

impl std::fmt::Display for HomKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HomKind::Zero => write!(f, "0"),
            HomKind::Identity => write!(f, "id"),
            HomKind::Mul(m) => write!(f, "k -> {m}k"),
            HomKind::Mod2 => write!(f, "k -> k mod 2"),
            HomKind::IsoZ2 => write!(f, "iso"),
        }
    }
}

/// A homomorphism with explicit endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableHom {
    pub domain: StableGroup,
    pub codomain: StableGroup,
    pub kind: HomKind,
}

impl StableHom {
    pub fn new(domain: StableGroup, codomain: StableGroup, kind: HomKind) -> Result<Self> {
        let h = Self {
            domain,
            codomain,
            kind,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn zero(domain: StableGroup, codomain: StableGroup) -> Self {
        Self {
            domain,
            codomain,
            kind: HomKind::Zero,
        }
    }

    pub fn validate(&self) -> Result<()> {
        use StableGroup::{Z, Z2};
        let ok = match self.kind {
            HomKind::Zero => true,
            HomKind::Identity => self.domain == self.codomain,
            HomKind::Mul(m) => self.domain == Z && self.codomain == Z && m != 0,
            HomKind::Mod2 => self.domain == Z && self.codomain == Z2,
            HomKind::IsoZ2 => self.domain == Z2 && self.codomain == Z2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::HomMismatch(format!(
                "{:?}: {} -> {}",
                self.kind, self.domain, self.codomain
            )))
        }
    }

    /// Composition `self` followed by `then`.
    pub fn then(&self, then: &StableHom) -> Result<StableHom> {
        if self.codomain != then.domain {
            return Err(Error::HomMismatch(format!(
                "composing {} -> {} with {} -> {}",
                self.domain, self.codomain, then.domain, then.codomain
            )));
        }
        use HomKind::*;
        let kind = match (self.kind, then.kind) {
            (Zero, _) | (_, Zero) => Zero,
            (Identity, k) => k,
            (k, Identity) => k,
            (Mul(a), Mul(b)) => Mul(a * b),
            (Mul(m), Mod2) => {
                if m % 2 == 0 {
                    Zero
                } else {
                    Mod2
                }
            }
            (Mod2, IsoZ2) => Mod2,
            (IsoZ2, IsoZ2) => IsoZ2,
            (a, b) => {
                return Err(Error::HomMismatch(format!(
                    "no composite for {a:?} then {b:?}"
                )))
            }
        };
        StableHom::new(self.domain, then.codomain, kind)
    }

    /// Structural equality with `Mul(m) ≡ Mul(-m)` (basis choice),
    /// `Mul(±1) ≡ Identity` and `IsoZ2 ≡ Identity` on ℤ₂.
    pub fn equivalent_up_to_sign(&self, other: &StableHom) -> bool {
        if self.domain != other.domain || self.codomain != other.codomain {
            return false;
        }
        normalize_kind(self.kind) == normalize_kind(other.kind)
    }

    /// Nonnegative-multiplier normal form for reports.
    pub fn normalized(&self) -> StableHom {
        StableHom {
            domain: self.domain,
            codomain: self.codomain,
            kind: normalize_kind(self.kind),
        }
    }
}

pub(crate) fn normalize_kind(kind: HomKind) -> HomKind {
    match kind {
        HomKind::Mul(1) | HomKind::Mul(-1) => HomKind::Identity,
        HomKind::Mul(m) => HomKind::Mul(m.abs()),
        HomKind::IsoZ2 => HomKind::Identity,
        k => k,
    }
}

/// Series whose stable groups the engine knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Series {
    O,
    U,
    Sp,
    UModO,
    SpModU,
}

/// The four tabulated map rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MapPair {
    OToU,
    UToSp,
    SpToU,
    UToO,
}

/// The mod-8 tables of groups and maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomotopyTables {
    pub o: [StableGroup; 8],
    pub u: [StableGroup; 8],
    pub sp: [StableGroup; 8],
    pub u_mod_o: Option<[StableGroup; 8]>,
    pub sp_mod_u: Option<[StableGroup; 8]>,
    pub f_o_to_u: [HomKind; 8],
    pub g_u_to_sp: [HomKind; 8],
    pub sp_to_u: [HomKind; 8],
    pub u_to_o: [HomKind; 8],
}

impl HomotopyTables {
    /// The tabulated values, with the quotient rows left underived.
    pub fn bare() -> Self {
        use HomKind::{Identity, Mod2, Mul};
        use StableGroup::{Z, Z2};
        const G0: StableGroup = StableGroup::Zero;
        const H0: HomKind = HomKind::Zero;
        Self {
            o: [Z2, Z2, G0, Z, G0, G0, G0, Z],
            u: [G0, Z, G0, Z, G0, Z, G0, Z],
            sp: [G0, G0, G0, Z, Z2, Z2, G0, Z],
            u_mod_o: None,
            sp_mod_u: None,
            f_o_to_u: [H0, H0, H0, Mul(2), H0, H0, H0, Identity],
            g_u_to_sp: [H0, H0, H0, Mul(2), H0, Mod2, H0, Identity],
            sp_to_u: [H0, H0, H0, Identity, H0, H0, H0, Mul(2)],
            u_to_o: [H0, Mod2, H0, Identity, H0, H0, H0, Mul(2)],
        }
    }

    /// Tables with the quotient rows derived by exactness.
    pub fn standard() -> Result<Self> {
        let mut t = Self::bare();
        let d = derive::derive_quotient_tables(&t)?;
        t.u_mod_o = Some(d.u_mod_o);
        t.sp_mod_u = Some(d.sp_mod_u);
        Ok(t)
    }

    /// Group of a series at homotopy degree `i` (mod 8).
    pub fn stable_group(&self, series: Series, i: usize) -> Result<StableGroup> {
        let idx = i % 8;
        Ok(match series {
            Series::O => self.o[idx],
            Series::U => self.u[idx],
            Series::Sp => self.sp[idx],
            Series::UModO => self.u_mod_o.ok_or_else(|| {
                Error::Inconsistent("U/O row not derived yet; call derive_quotient_tables".into())
            })?[idx],
            Series::SpModU => self.sp_mod_u.ok_or_else(|| {
                Error::Inconsistent("Sp/U row not derived yet; call derive_quotient_tables".into())
            })?[idx],
        })
    }

    /// Tabulated map at degree `i` with endpoints filled in.
    pub fn stable_map(&self, pair: MapPair, i: usize) -> Result<StableHom> {
        let idx = i % 8;
        let (dom_series, cod_series, kind) = match pair {
            MapPair::OToU => (Series::O, Series::U, self.f_o_to_u[idx]),
            MapPair::UToSp => (Series::U, Series::Sp, self.g_u_to_sp[idx]),
            MapPair::SpToU => (Series::Sp, Series::U, self.sp_to_u[idx]),
            MapPair::UToO => (Series::U, Series::O, self.u_to_o[idx]),
        };
        StableHom::new(
            self.stable_group(dom_series, i)?,
            self.stable_group(cod_series, i)?,
            kind,
        )
    }

    /// Corrupt the degree-3 map of the first row; a falsifiability fixture
    /// that exactness checking must catch.
    pub fn corrupt_f3_to_identity(&mut self) {
        self.f_o_to_u[3] = HomKind::Identity;
    }

    /// Corrupt a quotient entry; derivation cross-checks must catch it.
    pub fn corrupt_u_mod_o_entry(&mut self, i: usize, value: StableGroup) {
        if let Some(row) = &mut self.u_mod_o {
            row[i % 8] = value;
        }
    }
}

/// Row-by-row JSON export: one record per `(series, degree)` and one per
/// `(pair, degree)`, with multipliers split out for the map rows.
pub fn export_tables(tables: &HomotopyTables) -> Result<serde_json::Value> {
    let mut groups = Vec::new();
    for series in [
        Series::O,
        Series::U,
        Series::Sp,
        Series::UModO,
        Series::SpModU,
    ] {
        for i in 0..8 {
            groups.push(serde_json::json!({
                "series": series,
                "i_mod_8": i,
                "group": tables.stable_group(series, i)?,
            }));
        }
    }
    let mut maps = Vec::new();
    for pair in [MapPair::OToU, MapPair::UToSp, MapPair::SpToU, MapPair::UToO] {
        for i in 0..8 {
            let h = tables.stable_map(pair, i)?;
            let multiplier = match h.kind {
                HomKind::Mul(m) => Some(m.abs()),
                HomKind::Identity | HomKind::IsoZ2 => Some(1),
                _ => None,
            };
            maps.push(serde_json::json!({
                "pair": pair,
                "i_mod_8": i,
                "hom_kind": h.normalized().kind,
                "multiplier": multiplier,
            }));
        }
    }
    Ok(serde_json::json!({ "groups": groups, "maps": maps }))
}

/// All homs between two groups with multipliers bounded by `max_mul`.
pub fn homs_between(domain: StableGroup, codomain: StableGroup, max_mul: i64) -> Vec<StableHom> {
    use HomKind::{IsoZ2, Mod2, Mul};
    use StableGroup::{Z, Z2};
    let mut out = vec![StableHom::zero(domain, codomain)];
    match (domain, codomain) {
        (Z, Z) => {
            for m in 1..=max_mul {
                out.push(StableHom::new(Z, Z, Mul(m)).unwrap());
                out.push(StableHom::new(Z, Z, Mul(-m)).unwrap());
            }
        }
        (Z, Z2) => out.push(StableHom::new(Z, Z2, Mod2).unwrap()),
        (Z2, Z2) => out.push(StableHom::new(Z2, Z2, IsoZ2).unwrap()),
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use StableGroup::*;

    #[test]
    fn table_lookups_match_the_published_rows() {
        let t = HomotopyTables::standard().unwrap();
        assert_eq!(t.stable_group(Series::O, 3).unwrap(), Z);
        assert_eq!(t.stable_group(Series::U, 2).unwrap(), Zero);
        assert_eq!(t.stable_group(Series::UModO, 3).unwrap(), Z2);
        assert_eq!(t.stable_group(Series::UModO, 4).unwrap(), Zero);
        assert_eq!(
            t.stable_map(MapPair::OToU, 3).unwrap().kind,
            HomKind::Mul(2)
        );
        assert_eq!(t.stable_map(MapPair::UToSp, 5).unwrap().kind, HomKind::Mod2);
        assert_eq!(t.stable_map(MapPair::OToU, 0).unwrap().kind, HomKind::Zero);
    }

    #[test]
    fn four_shift_relations_between_the_rows() {
        // π_i(Sp) = π_{i+4}(O) and the map rows shift accordingly, which is
        // how the second and fourth rows arise from the half-way node.
        let t = HomotopyTables::bare();
        for i in 0..8 {
            assert_eq!(t.sp[i], t.o[(i + 4) % 8], "group shift at {i}");
            assert_eq!(
                normalize_kind(t.sp_to_u[i]),
                normalize_kind(t.f_o_to_u[(i + 4) % 8]),
                "Sp -> U row must be the 4-shift of the O -> U row at {i}"
            );
            assert_eq!(
                normalize_kind(t.u_to_o[i]),
                normalize_kind(t.g_u_to_sp[(i + 4) % 8]),
                "U -> O row must be the 4-shift of the U -> Sp row at {i}"
            );
        }
    }

    #[test]
    fn composition_is_associative_and_identity_neutral() {
        let groups = [Zero, Z, Z2];
        let mut homs = Vec::new();
        for d in groups {
            for c in groups {
                homs.extend(homs_between(d, c, 3));
            }
        }
        for f in &homs {
            let idl = StableHom::new(f.domain, f.domain, HomKind::Identity).unwrap();
            let idr = StableHom::new(f.codomain, f.codomain, HomKind::Identity).unwrap();
            assert_eq!(idl.then(f).unwrap(), *f);
            assert_eq!(f.then(&idr).unwrap(), *f);
            for g in &homs {
                if f.codomain != g.domain {
                    continue;
                }
                for h in &homs {
                    if g.codomain != h.domain {
                        continue;
                    }
                    let left = f.then(g).unwrap().then(h).unwrap();
                    let right = f.then(&g.then(h).unwrap()).unwrap();
                    assert_eq!(
                        normalize_kind(left.kind),
                        normalize_kind(right.kind),
                        "associativity violated for {f:?}, {g:?}, {h:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn exported_tables_have_the_published_shape() {
        let t = HomotopyTables::standard().unwrap();
        let v = export_tables(&t).unwrap();
        assert_eq!(v["groups"].as_array().unwrap().len(), 40);
        assert_eq!(v["maps"].as_array().unwrap().len(), 32);
        let f3 = &v["maps"][3];
        assert_eq!(f3["pair"], "OToU");
        assert_eq!(f3["i_mod_8"], 3);
        assert_eq!(f3["multiplier"], 2);
    }

    #[test]
    fn invalid_homs_are_rejected() {
        assert!(StableHom::new(Z, Z2, HomKind::Identity).is_err());
        assert!(StableHom::new(Z, Z, HomKind::Mul(0)).is_err());
        assert!(StableHom::new(Z2, Z, HomKind::Mod2).is_err());
    }
}
