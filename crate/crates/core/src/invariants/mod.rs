//! Characteristic-polynomial invariants, their bi-homogeneous components
//! with respect to `g = p + n_-`, restrictions to the slice `e + p_-`, and
//! the probes for invariance, independence and the Kostant equality.
//!
//! Nothing is expanded symbolically. Every function is evaluated at exact
//! points and components are pulled out by exact interpolation in an
//! auxiliary scaling parameter.

mod family;
mod highest;
mod levi;
mod probe;
mod slice;

pub use family::{eval_invariant, parity_sign, InvariantFamily, Kind, Mode};
pub use highest::{
    adjoint_components, bicomponent_values, bicomponents, eval_adjoint_lowered, eval_highest, n_minus_degree,
    n_minus_degrees, split_point, AdjointLoweredFamily, BiComponentProfile, HighestFamily,
};
pub use levi::LeviInvariants;
pub use probe::{
    directional_derivative, invariance_probe, jacobian_rank, kostant_probe, unit_directions, Action,
    CoordinateFunction, KostantRecord, Member, PolyFamily, PolyFn, ProbeFailure, ProbeReport,
};
pub use slice::{
    eval_slice, normalized_y, slice_degree, slodowy_min_index, slodowy_slice_eval, SliceFamily,
};
