//! Exact rational arithmetic and the dense linear-algebra kernels everything
//! else is built on.
//!
//! Rationals come from `num-rational` and are normalized on every operation.
//! Rank and kernel computations clear denominators row by row and run
//! fraction-free (Bareiss) elimination over the integers.

mod charpoly;
mod interp;
mod matrix;
mod pfaffian;
mod rat;

pub use charpoly::{charpoly, charpoly_with_adjugates, elementary_symmetric, CharPoly};
pub use interp::{default_nodes, evaluate_poly, interpolate, Interpolator};
pub use matrix::QMatrix;
pub use pfaffian::{pfaffian, pfaffian_gradient, pfaffian_naive};
pub use rat::{fmt_rat, frac, int, is_zero_vec, lcm_of_denominators, parse_rat, Rat};
