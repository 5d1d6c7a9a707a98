//! The SO-, U- and Sp-Bott chains.
//!
//! Each chain is the nested sequence `P_0 ⊃ P_1 ⊃ … ⊃ P_8` obtained by
//! repeatedly passing to the space of midpoints of shortest geodesics from a
//! base point to its pole. In matrix terms node `k ≥ 1` consists of the
//! complex structures in the ambient group that anticommute with the chosen
//! `J_1, …, J_{k-1}`, restricted to the connected component of `J_k`; the
//! component is pinned by integer-quantized invariants (a relative trace on
//! a nested eigenspace tower, plus the Pfaffian sign for the first
//! orthogonal step).
//!
//! All three chains share one set of base structures: the Clifford system
//! lives in `SO_{16n}`, is reused verbatim in `U_{16n}`, and embeds into
//! `Sp_{16n}` through `A ↦ diag(A, conj A)`.

pub mod clifford;
pub mod geodesic;
pub mod profile;
pub mod sample;

pub use clifford::{make_clifford_system, CliffordSystem};
pub use geodesic::{
    centrosome_membership, geodesic_symmetry, is_pole, midpoint_to_geodesic, CentrosomeClass,
    GeodesicSegment,
};
pub use profile::chain_distance_profile;
pub use sample::sample_node_points;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::matrix::{
    anticommutator_norm, conj, determinant, imag_norm, max_abs, real_part, structure_residual,
    symplectic_residual, to_complex, unitary_residual, CMat, C, C_I, C_ONE,
};
use crate::algebra::metric::MetricSpec;
use crate::algebra::pfaffian::pfaffian_sign;
use crate::{Error, Result};

/// Which of the three chains a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainKind {
    SO,
    U,
    Sp,
}

impl ChainKind {
    pub fn label(self) -> &'static str {
        match self {
            ChainKind::SO => "so",
            ChainKind::U => "u",
            ChainKind::Sp => "sp",
        }
    }
}

/// Ambient classical group, carried in the complex picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    /// `SO_m`: real entries, orthogonal, unit determinant.
    SpecialOrthogonal { dim: usize },
    /// `U_m`.
    Unitary { dim: usize },
    /// `Sp_r` as the subgroup of `U_{2r}` fixed by `X ↦ K_r conj(X) K_r⁻¹`.
    Symplectic { r: usize },
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match *self {
            Ambient::SpecialOrthogonal { dim } | Ambient::Unitary { dim } => dim,
            Ambient::Symplectic { r } => 2 * r,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Ambient::SpecialOrthogonal { dim } => format!("SO({dim})"),
            Ambient::Unitary { dim } => format!("U({dim})"),
            Ambient::Symplectic { r } => format!("Sp({r})"),
        }
    }

    /// Max-norm residual against membership in the group.
    pub fn residual(&self, m: &CMat) -> f64 {
        if m.nrows() != self.dim() || m.ncols() != self.dim() {
            return f64::INFINITY;
        }
        let mut r = unitary_residual(m);
        match *self {
            Ambient::SpecialOrthogonal { .. } => {
                r = r.max(imag_norm(m));
                r = r.max((determinant(m) - C_ONE).norm());
            }
            Ambient::Unitary { .. } => {}
            Ambient::Symplectic { .. } => {
                r = r.max(symplectic_residual(m));
            }
        }
        r
    }

    pub fn contains(&self, m: &CMat, tol: f64) -> bool {
        self.residual(m) <= tol
    }
}

/// Integer-quantized component invariant of a node: the trace of the
/// relative structure `J_{k-1}⁻¹ J` compressed onto a nested eigenspace
/// tower built from the odd relative words `J_0⁻¹J_1, J_2⁻¹J_3, …`.
#[derive(Debug, Clone)]
struct NodeTag {
    /// Columns span the tower subspace the trace is taken over; `None`
    /// means the full space.
    frame: Option<CMat>,
    /// Tag value of the base point `J_k`.
    expected: C,
}

/// Outcome of a node membership test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub ok: bool,
    /// Largest residual among the matrix-equation constraints.
    pub matrix_residual: f64,
    /// Distance of the component tag from the base component's value
    /// (quantization gap is 2), when the node carries a tag.
    pub tag_residual: Option<f64>,
}

/// One space `P_k` of a chain: ambient group, base point `J_k`, pole
/// `-J_k`, membership predicate and metric scale.
#[derive(Debug, Clone)]
pub struct ChainNode {
    pub chain: ChainKind,
    pub k: usize,
    pub ambient: Ambient,
    pub metric: MetricSpec,
    pub base: CMat,
    pub pole: CMat,
    /// `J_0..J_8` of the chain, in the ambient picture.
    bases: Arc<Vec<CMat>>,
    tag: Option<NodeTag>,
    /// Pfaffian sign of the base component, first orthogonal step only.
    pf_expected: Option<i8>,
}

/// Quantization threshold for component tags; genuine members sit at
/// numerical-noise distance while neighbouring components differ by 2.
const TAG_GAP: f64 = 0.25;

impl ChainNode {
    pub fn base_structure(&self) -> ComplexStructure {
        ComplexStructure {
            matrix: self.base.clone(),
            ambient: self.ambient,
            component_tag: self.pf_expected,
        }
    }

    /// The structures a stabilizer element must commute with.
    pub(crate) fn stabilized(&self) -> &[CMat] {
        &self.bases[1..self.k.max(1)]
    }

    /// Value of the component tag on a candidate.
    fn tag_value(&self, m: &CMat) -> Option<C> {
        let tag = self.tag.as_ref()?;
        let rel = self.bases[self.k - 1].adjoint() * m;
        Some(match &tag.frame {
            None => rel.trace(),
            Some(f) => (f.adjoint() * rel * f).trace(),
        })
    }

    /// Serializable summary for reports.
    pub fn descriptor(&self) -> NodeDescriptor {
        let tr = self.base.trace();
        NodeDescriptor {
            chain: self.chain,
            k: self.k,
            ambient: self.ambient.label(),
            base_trace: [tr.re, tr.im],
            component_tag: self.pf_expected,
            residuals: self.membership(&self.base, 1e-9),
        }
    }

    /// Membership test against every defining constraint of the node.
    pub fn membership(&self, m: &CMat, tol: f64) -> Membership {
        let mut resid = self.ambient.residual(m);
        if self.k >= 1 {
            resid = resid.max(structure_residual(m));
            for jb in &self.bases[1..self.k] {
                resid = resid.max(anticommutator_norm(m, jb));
            }
        }
        let mut tag_residual = None;
        if let Some(tag) = &self.tag {
            let value = self.tag_value(m).unwrap();
            tag_residual = Some((value - tag.expected).norm());
        }
        if let Some(expected) = self.pf_expected {
            // The sign only makes sense for real candidates; realness is
            // already part of the ambient residual.
            let sign = pfaffian_sign(&real_part(m), 1e-8).unwrap_or(0);
            let pf_resid = if sign == expected { 0.0 } else { 2.0 };
            tag_residual = Some(tag_residual.unwrap_or(0.0).max(pf_resid));
        }
        Membership {
            ok: resid <= tol && tag_residual.unwrap_or(0.0) <= TAG_GAP,
            matrix_residual: resid,
            tag_residual,
        }
    }
}

/// JSON-facing description of a node: ambient, base trace, component tag
/// and the residuals of the base point against the node's own predicate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeDescriptor {
    pub chain: ChainKind,
    pub k: usize,
    pub ambient: String,
    pub base_trace: [f64; 2],
    pub component_tag: Option<i8>,
    pub residuals: Membership,
}

/// A matrix `J` with `J² = -I` inside a named ambient group.
#[derive(Debug, Clone)]
pub struct ComplexStructure {
    pub matrix: CMat,
    pub ambient: Ambient,
    /// Pfaffian sign for orthogonal structures, when meaningful.
    pub component_tag: Option<i8>,
}

impl ComplexStructure {
    pub fn residual(&self) -> f64 {
        structure_residual(&self.matrix).max(self.ambient.residual(&self.matrix))
    }
}

/// One of the three chains with its nine nodes.
#[derive(Debug, Clone)]
pub struct BottChain {
    pub kind: ChainKind,
    pub n: usize,
    pub ambient: Ambient,
    pub metric: MetricSpec,
    pub nodes: Vec<ChainNode>,
    bases: Arc<Vec<CMat>>,
    /// Tower frames after refining by C_1, C_3, C_5, C_7 (in that order).
    refined_frames: Vec<CMat>,
}

impl BottChain {
    pub fn node(&self, k: usize) -> &ChainNode {
        &self.nodes[k]
    }

    /// `J_k` in the ambient picture (`J_0 = I`).
    pub fn base(&self, k: usize) -> &CMat {
        &self.bases[k]
    }

    pub fn bases(&self) -> &Arc<Vec<CMat>> {
        &self.bases
    }

    /// The nested tower frame after `j + 1` refinements: index 0 is the
    /// `+i` eigenspace of `J_1`, index 3 the full tower used by the chart
    /// at node 8.
    pub fn refined_frame(&self, j: usize) -> &CMat {
        &self.refined_frames[j]
    }
}

/// Embed a `U_m` element into the complex picture of `Sp_m`.
pub fn sp_embed(m: &CMat) -> CMat {
    let d = m.nrows();
    let mut out = CMat::zeros(2 * d, 2 * d);
    out.view_mut((0, 0), (d, d)).copy_from(m);
    out.view_mut((d, d), (d, d)).copy_from(&conj(m));
    out
}

/// Extract the `U_m` element from an `Sp` picture matrix of the embedded
/// form, together with the residual against that form.
pub fn sp_extract(m: &CMat) -> (CMat, f64) {
    let d = m.nrows() / 2;
    let a = m.view((0, 0), (d, d)).into_owned();
    let resid = max_abs(&(m - sp_embed(&a)));
    (a, resid)
}

/// Build a chain from a Clifford system.
///
/// The chain's nodes share the system's structures: `SO` and `U` use them
/// as real/complex `16n × 16n` matrices, `Sp` through the embedding into
/// its `32n × 32n` complex picture.
pub fn build_chain(kind: ChainKind, n: usize, cliff: &CliffordSystem) -> Result<BottChain> {
    if cliff.n != n {
        return Err(Error::MalformedChain(format!(
            "Clifford system built for n = {}, chain requested n = {n}",
            cliff.n
        )));
    }
    if cliff.structures.len() != 8 || cliff.max_residual() > 1e-12 {
        return Err(Error::MalformedChain(
            "Clifford system fails its defining relations".into(),
        ));
    }
    let dim = 16 * n;
    let (ambient, metric) = match kind {
        ChainKind::SO => (Ambient::SpecialOrthogonal { dim }, MetricSpec::STANDARD),
        ChainKind::U => (Ambient::Unitary { dim }, MetricSpec::STANDARD),
        ChainKind::Sp => (Ambient::Symplectic { r: dim }, MetricSpec::SP_HALF_TRACE),
    };
    let adim = ambient.dim();

    let mut raw: Vec<CMat> = Vec::with_capacity(9);
    raw.push(CMat::identity(adim, adim));
    for jk in &cliff.structures {
        let c = to_complex(jk);
        raw.push(match kind {
            ChainKind::Sp => sp_embed(&c),
            _ => c,
        });
    }
    let bases = Arc::new(raw);

    // Nested eigenspace tower from the odd relative words C_1, C_3, C_5, C_7.
    let mut frame: Option<CMat> = None;
    let mut refined_frames: Vec<CMat> = Vec::with_capacity(4);
    let mut nodes = Vec::with_capacity(9);

    for k in 0..=8 {
        let tag = if k >= 1 && k % 2 == 1 {
            let rel = bases[k - 1].adjoint() * &bases[k];
            let expected = match &frame {
                None => rel.trace(),
                Some(f) => (f.adjoint() * &rel * f).trace(),
            };
            Some(NodeTag {
                frame: frame.clone(),
                expected,
            })
        } else {
            None
        };

        let pf_expected = if kind == ChainKind::SO && k == 1 {
            Some(pfaffian_sign(&real_part(&bases[1]), 1e-12)?)
        } else {
            None
        };

        let node = ChainNode {
            chain: kind,
            k,
            ambient,
            metric,
            base: bases[k].clone(),
            pole: &bases[k] * C::new(-1.0, 0.0),
            bases: Arc::clone(&bases),
            tag,
            pf_expected,
        };

        // Node invariants: the base must pass its own membership and the
        // pole must be the ambient pole of the base.
        let check = node.membership(&node.base, 1e-9);
        if !check.ok {
            return Err(Error::MalformedChain(format!(
                "base of node {k} fails membership: residual {:.3e}, tag {:?}",
                check.matrix_residual, check.tag_residual
            )));
        }
        if !is_pole(&node.pole, &node.base, ambient, 1e-9) {
            return Err(Error::MalformedChain(format!(
                "-J_{k} is not the ambient pole of J_{k}"
            )));
        }
        nodes.push(node);

        // Refine the tower for the next nodes.
        if (1..8).contains(&k) && k % 2 == 1 {
            let rel = bases[k - 1].adjoint() * &bases[k];
            let refined = refine_frame(frame.as_ref(), &rel);
            refined_frames.push(refined.clone());
            frame = Some(refined);
        }
    }

    Ok(BottChain {
        kind,
        n,
        ambient,
        metric,
        nodes,
        bases,
        refined_frames,
    })
}

/// Restrict `frame` to the `+i` eigenspace of the structure `rel`.
fn refine_frame(frame: Option<&CMat>, rel: &CMat) -> CMat {
    let small = match frame {
        None => rel.clone(),
        Some(f) => f.adjoint() * rel * f,
    };
    let herm = &small * (-C_I);
    let (vals, vecs) = crate::algebra::eigen::hermitian_eigen(&herm);
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > 0.0).collect();
    let mut cols = CMat::zeros(small.nrows(), keep.len());
    for (j, &i) in keep.iter().enumerate() {
        cols.set_column(j, &vecs.column(i));
    }
    match frame {
        None => cols,
        Some(f) => f * cols,
    }
}

/// Build all three chains at once.
pub fn build_all_chains(n: usize) -> Result<[BottChain; 3]> {
    let cliff = make_clifford_system(n)?;
    Ok([
        build_chain(ChainKind::SO, n, &cliff)?,
        build_chain(ChainKind::U, n, &cliff)?,
        build_chain(ChainKind::Sp, n, &cliff)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::a_block;
    use crate::algebra::TOL_PREDICATE;

    #[test]
    fn all_bases_pass_their_nodes() {
        for chain in build_all_chains(1).unwrap() {
            for node in &chain.nodes {
                let m = node.membership(&node.base, TOL_PREDICATE);
                assert!(
                    m.ok,
                    "{:?} node {} base rejected: {m:?}",
                    chain.kind, node.k
                );
            }
        }
    }

    #[test]
    fn so_node1_accepts_both_signs() {
        // The component is preserved by X ↦ -X (Pf(-J) = Pf(J) in dim 16).
        let chains = build_all_chains(1).unwrap();
        let node = chains[0].node(1);
        let minus = &node.base * C::new(-1.0, 0.0);
        assert!(node.membership(&minus, TOL_PREDICATE).ok);
    }

    #[test]
    fn u_node1_base_is_conjugate_to_the_half_trace_block() {
        // Trace zero and eigenvalues ±i with equal multiplicity, the same
        // invariants as the block diag(i I_8, -i I_8).
        let chains = build_all_chains(1).unwrap();
        let base = chains[1].base(1);
        assert!(base.trace().norm() < 1e-12);
        let angles = crate::algebra::eigen::eigenangles(base, 1e-10).unwrap();
        let plus = angles.iter().filter(|t| **t > 0.0).count();
        assert_eq!(plus, 8);
        assert!(a_block(8).trace().norm() < 1e-12);
    }

    #[test]
    fn product_of_consecutive_bases_is_rejected() {
        // J_{k+1} J_k commutes with J_{k-1}, so it fails node k for k >= 2.
        for chain in build_all_chains(1).unwrap() {
            for k in 2..=7 {
                let cand = chain.base(k + 1) * chain.base(k);
                let m = chain.node(k).membership(&cand, TOL_PREDICATE);
                assert!(!m.ok, "{:?} node {k} accepted J_(k+1) J_k", chain.kind);
            }
        }
    }

    #[test]
    fn wrong_component_is_rejected_by_the_tag() {
        // diag(i, …, i) is a complex structure in U_16 but lies in the
        // trace-16i component, not the top-dimensional one.
        let chains = build_all_chains(1).unwrap();
        let scalar = CMat::identity(16, 16) * C_I;
        let m = chains[1].node(1).membership(&scalar, TOL_PREDICATE);
        assert!(!m.ok);
        assert!(
            m.matrix_residual <= TOL_PREDICATE,
            "only the tag should fail"
        );
        assert!(m.tag_residual.unwrap() > 1.0);
    }

    #[test]
    fn sp_embedding_round_trips() {
        let m = CMat::from_fn(3, 3, |r, c| C::new(r as f64, c as f64));
        let e = sp_embed(&m);
        let (back, resid) = sp_extract(&e);
        assert!(max_abs(&(back - m)) < 1e-15);
        assert!(resid < 1e-15);
    }
}
