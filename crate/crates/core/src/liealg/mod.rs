//! Matrix models of the classical Lie algebras, their parabolic
//! decompositions and trace-form duality.
//!
//! `sl` and `gl` use elementary matrices. `sp` and `so` are realized with an
//! anti-diagonal form so the standard Borel is upper triangular and every
//! parabolic is block upper triangular.

mod algebra;
mod parabolic;
mod types;

pub use algebra::{build_algebra, trace_pairing, AlgebraBasis, Entries, Triangle};
pub use parabolic::{
    build_parabolic, format_levi, levi_invariant_degrees, LeviBlock, ParabolicDecomposition,
    ParabolicSpec, Part,
};
pub use types::{Family, LieType};
