//! Numerical verification of the geometry behind real Bott periodicity.
//!
//! The library builds, at desk scale, the three nested chains of compact
//! symmetric spaces obtained by iterating the "space of midpoints of shortest
//! geodesics" construction inside `SO_{16n}`, `U_{16n}` and `Sp_{16n}`, and
//! then checks the structure that makes the construction periodic:
//!
//! * [`algebra`]: field-generic dense matrix algebra over ℝ, ℂ and ℍ:
//!   group-membership predicates, the matrix exponential/logarithm on the
//!   skew/unitary pair, bi-invariant geodesic distance, Pfaffian signs and
//!   the structure ↔ projection dictionary for Grassmannians.
//! * [`chains`]: Clifford systems `J_1, …, J_8`, pole and centrosome
//!   predicates, geodesic midpoint machinery and the distance profile along
//!   each chain.
//! * [`inclusions`]: the sixteen standard inclusions between classical
//!   symmetric spaces, the involutions whose fixed point sets realize them,
//!   commuting-square checks and the metric scaling factors 2, 8 and 16.
//! * [`homotopy`]: a small exact-sequence engine over the groups
//!   `{0, ℤ, ℤ₂}` that reproduces the stable homotopy tables of the classical
//!   groups and forces the inclusion-induced maps.
//! * [`suites`]: the registered verification checks behind the `centriole`
//!   command line runner, including deliberately corrupted fixtures that the
//!   detectors must catch.
//!
//! Everything is pure and deterministic: random sampling is driven by a
//! counter-based generator seeded per `(seed, check, sample)`.

pub mod algebra;
pub mod chains;
pub mod homotopy;
pub mod inclusions;
pub mod report;
pub mod rng;
pub mod suites;

#[cfg(doctest)]
mod book;

use thiserror::Error;

/// Errors shared across the verification engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("matrix is not skew within tolerance (residual {0:.3e})")]
    NotSkew(f64),
    #[error("matrix is not unitary within tolerance (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("matrix is not a complex structure: {0}")]
    NotStructure(String),
    #[error("Pfaffian requires an even dimension, got {0}")]
    OddDimension(usize),
    #[error("singular input: {0}")]
    Singular(String),
    #[error("{0} is not a pole of the given base point")]
    NotAPole(String),
    #[error("midpoint is not on a shortest geodesic ({0})")]
    NotShortestMidpoint(String),
    #[error("malformed chain: {0}")]
    MalformedChain(String),
    #[error("embedding is not homothetic: ratio spread {spread:.3e} over {count} tangents")]
    NonHomothety { spread: f64, count: usize },
    #[error("incompatible homomorphism endpoints: {0}")]
    HomMismatch(String),
    #[error("exact sequence has {0} unknown maps, expected exactly one")]
    UnknownCount(usize),
    #[error("table derivation is inconsistent: {0}")]
    Inconsistent(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("dimension cap exceeded: 16*n = {0} > {1}")]
    DimensionCap(usize, usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
