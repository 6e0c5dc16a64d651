//! Randomized-measurement estimators of one-body data.
//!
//! U(n) shadows estimate the 1-RDM `D` and SO(2n) shadows the covariance
//! `Γ` of a Gaussian state. Sampling is addressed by `(seed, index)` streams
//! and reduced through exact fixed-point accumulators, so a run produces the
//! same bits with any thread count or with the `parallel` feature off.

mod accum;
mod error;
mod estimate;
mod sample_size;
mod sampler;

pub use accum::MeanAccumulator;
pub use error::ShadowError;
pub use estimate::{
    e_matrix, j_matrix, so_estimate, so_rotation, un_estimate, un_rotation, SoShadowSample,
    UnShadowSample,
};
pub use sample_size::{sample_size, SampleKind, SINGLE_PARTICLE_CONSTANT};
pub use sampler::{
    draw_so_sample, draw_un_sample, so_shadows, un_shadows, ShadowOutcome, ShadowRun,
};

pub type Result<T> = std::result::Result<T, ShadowError>;
