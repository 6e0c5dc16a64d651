//! Pure fermionic Gaussian states as covariance matrices
//! `Γ_pq = −(i/2)⟨[γ_p, γ_q]⟩`, so that `⟨γ_p γ_q⟩ = δ_pq + iΓ_pq` and the
//! vacuum is `J = [[0, I], [−I, 0]]`.
//!
//! `Φ(Q)` maps `Γ ↦ QΓQᵀ`. Occupations follow from
//! `n_j = (1 + iγ_j γ_{j+n})/2`, i.e. `⟨n_j⟩ = (1 − Γ_{j,j+n})/2`.

mod choi;
mod error;
mod measure;
mod observable;
mod state;

pub use choi::{block_layout, choi_block, fepr_covariance_of, fepr_preparation, fepr_state, sign_matrix};
pub use error::GsimError;
pub use measure::{measure_fock, measure_modes, outcome_probability};
pub use observable::{quadratic_expectation, quadrature_rotation, QuadraticObservable};
pub use state::{
    append_vacuum_modes, apply_flo, fock_basis_state, rdm_from_covariance, t_map, vacuum_state,
    GaussianState, Rdm, StateJson,
};

pub type Result<T> = std::result::Result<T, GsimError>;
