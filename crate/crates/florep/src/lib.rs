//! One-body representations of fermionic linear optics (FLO).
//!
//! An active FLO `Φ(Q)` is fixed by `Q ∈ O(2n)` through
//! `Φ(Q)† γ_p Φ(Q) = Σ_q Q_pq γ_q`, with Majoranas ordered
//! `γ_1..γ_n, γ_{n+1}..γ_{2n}` and `a_j = (γ_j + iγ_{j+n})/2`. A passive FLO
//! `Φ_pas(U)` is fixed by `U ∈ U(n)` through `Φ_pas(U)† a_j Φ_pas(U) = Σ_k U_jk a_k`.
//! Products compose in the same order as the unitaries: `Φ(A)Φ(B) = Φ(AB)`.
//!
//! Indices are zero-based throughout the code.

mod bogoliubov;
mod error;
mod flo;
mod gates;

pub use bogoliubov::{from_bogoliubov, omega, to_bogoliubov, BogoliubovForm};
pub use error::FloError;
pub use flo::{
    dft_matrix, embed_passive, extend_index, extend_modes, extend_q, extract_passive, passive_alignment,
    ActiveFlo, PassiveFlo,
};
pub use gates::{
    compile_active, compile_passive, compile_to_gates, passive_one_body, Flo, Gate, GateList, GateRecord,
};

pub type Result<T> = std::result::Result<T, FloError>;
