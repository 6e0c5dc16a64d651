//! Dense `2ⁿ`-amplitude oracle under the Jordan–Wigner map
//! `γ_j = X_j Z_{<j}`, `γ_{j+n} = Y_j Z_{<j}`, with mode 1 as the most
//! significant bit of the basis index.
//!
//! The circuit compiled by `flo_florep` fixes the projective phase of `Φ(Q)`;
//! all comparisons with other modules are phase-invariant.

mod dense;
mod distance;
mod error;
mod wick;

pub use dense::{
    apply_majorana, dense_apply, exact_quantities, fock_unitary, DenseState, ExactQuantities, Oracle,
    DEFAULT_CAP,
};
pub use distance::{diamond_distance, diamond_distance_with, hull_distance_from_origin, trace_distance};
pub use error::OracleError;
pub use wick::{moment_bounds_check, wick_four_point, wick_two_point, MomentBounds, TwoPointTable};

pub type Result<T> = std::result::Result<T, OracleError>;
