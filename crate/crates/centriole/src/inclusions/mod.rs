//! The sixteen standard inclusions, their involutions, and the fixed-point,
//! commuting-square and metric-scaling verifications they support.

pub mod fixed_points;
pub mod involution;
pub mod maps;
pub mod metric_scale;
pub mod normal_form;
pub mod repr;
pub mod squares;

pub use fixed_points::{verify_fixed_point_node, ChainPair, FixedPointReport, PairContext};
pub use involution::{apply_involution, Involution};
pub use maps::{apply_inclusion, inclusion, InclusionId, InclusionMap, ALL_INCLUSIONS};
pub use metric_scale::{metric_pullback_scale, unitary_step_ratio, HomothetyFactor};
pub use normal_form::{verify_isometry_normal_form, NormalFormCheck, NormalFormReport};
pub use repr::Repr;
pub use squares::{verify_square_commutes, SquareReport};
