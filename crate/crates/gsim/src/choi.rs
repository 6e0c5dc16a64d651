//! Fermionic EPR and Choi states on `2n` modes (system modes first).
//!
//! The construction is written in the block layout where the system
//! Majoranas `γ_1..γ_{2n}` come first (mode `j` pairs `j` with `j+n`) and the
//! auxiliary Majoranas follow; [`to_global`] maps it to the simulator's
//! `(γ_1..γ_{2n}, γ_{2n+1}..γ_{4n})` layout.

use crate::{apply_flo, vacuum_state, GaussianState};
use flo_florep::ActiveFlo;
use flo_matlin::RealMatrix;
use nalgebra::DMatrix;

/// Simulator index of block-layout Majorana `x` for `n` system modes.
fn global_index(x: usize, n: usize) -> usize {
    let nt = 2 * n;
    if x < 2 * n {
        x % n + (x / n) * nt
    } else {
        let y = x - 2 * n;
        n + y % n + (y / n) * nt
    }
}

fn to_global(m: &RealMatrix, n: usize) -> RealMatrix {
    let d = 4 * n;
    let mut out = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            out[(global_index(i, n), global_index(j, n))] = m[(i, j)];
        }
    }
    out
}

fn to_block(m: &RealMatrix, n: usize) -> RealMatrix {
    let d = 4 * n;
    DMatrix::from_fn(d, d, |i, j| m[(global_index(i, n), global_index(j, n))])
}

fn swap(p: &mut RealMatrix, a: usize, b: usize) {
    p.swap_rows(a, b);
}

/// `S = diag(−1, 1, −1, …, 1)` of size `2n`.
pub fn sign_matrix(n: usize) -> RealMatrix {
    DMatrix::from_fn(2 * n, 2 * n, |i, j| if i != j { 0.0 } else if i % 2 == 0 { -1.0 } else { 1.0 })
}

/// `P_σ P_π` in the simulator layout, where `π` swaps `j+n ↔ j+2n` and `σ`
/// swaps `j ↔ j+2n` for odd `j` (one-based, block layout). Determinant +1.
pub fn fepr_preparation(n: usize) -> ActiveFlo {
    let d = 4 * n;
    let mut p_pi = DMatrix::identity(d, d);
    for j in 0..n {
        swap(&mut p_pi, j + n, j + 2 * n);
    }
    let mut p_sigma = DMatrix::identity(d, d);
    for j in (0..2 * n).step_by(2) {
        swap(&mut p_sigma, j, j + 2 * n);
    }
    ActiveFlo::from_unchecked(to_global(&(p_sigma * p_pi), n))
}

/// `|fEPR⟩ = Φ(P_σ P_π)|0^{2n}⟩`.
pub fn fepr_state(n: usize) -> GaussianState {
    apply_flo(&vacuum_state(2 * n), &fepr_preparation(n)).expect("matching sizes")
}

/// Covariance of `Φ(Q ⊕ I)|fEPR⟩`: `[[0, QS], [−(QS)ᵀ, 0]]` in block layout.
pub fn fepr_covariance_of(q: &ActiveFlo) -> GaussianState {
    let n = q.n();
    let qs = q.matrix() * sign_matrix(n);
    let mut g = DMatrix::zeros(4 * n, 4 * n);
    g.view_mut((0, 2 * n), (2 * n, 2 * n)).copy_from(&qs);
    g.view_mut((2 * n, 0), (2 * n, 2 * n)).copy_from(&(-qs.transpose()));
    GaussianState::from_unchecked(to_global(&g, n))
}

/// Top-right `2n×2n` block (system × auxiliary) of a `2n`-mode covariance in
/// block layout.
pub fn choi_block(gamma: &RealMatrix) -> RealMatrix {
    let n = gamma.nrows() / 4;
    to_block(gamma, n).view((0, 2 * n), (2 * n, 2 * n)).into_owned()
}

/// A `2n`-mode covariance rearranged into block layout.
pub fn block_layout(gamma: &RealMatrix) -> RealMatrix {
    to_block(gamma, gamma.nrows() / 4)
}
