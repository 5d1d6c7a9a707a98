//! Field-generic dense matrix algebra over ℝ, ℂ and ℍ.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so the layer is safe to call from concurrent verification
//! tasks.

pub mod convert;
pub mod eigen;
pub mod haar;
pub mod matrix;
pub mod metric;
pub mod pfaffian;
pub mod quaternion;

pub use convert::{
    complexify_real, exp_skew, left_quat_rep, left_quat_rep_complex, projection_to_structure,
    realify_complex, structure_to_projection,
};
pub use eigen::{eigenangles, exp_skew_hermitian, log_unitary_principal, unitary_eigen};
pub use matrix::{is_in_group, CMat, Field, Group, Mat, MatrixJson, RMat};
pub use metric::{geodesic_distance, MetricSpec};
pub use pfaffian::pfaffian_sign;
pub use quaternion::{quat_mul, QMat, Quaternion};

/// Default tolerance for algebraic predicates.
pub const TOL_PREDICATE: f64 = 1e-10;
/// Default tolerance for distances and other accumulated quantities.
pub const TOL_DISTANCE: f64 = 1e-9;
