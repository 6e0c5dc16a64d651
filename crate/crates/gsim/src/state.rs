use crate::{GsimError, Result};
use flo_florep::{extend_index, ActiveFlo};
use flo_matlin::{c, op_norm, symplectic_form, ComplexMatrix, RealMatrix, I};
use flo_matlin::json::MatrixJson;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Pure Gaussian state on `n` modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct GaussianState {
    n: usize,
    gamma: RealMatrix,
}

impl GaussianState {
    /// Validates skewness (`1e-9`) and purity `ΓΓᵀ = I` (`1e-8`).
    pub fn new(gamma: RealMatrix) -> Result<Self> {
        let d = gamma.nrows();
        if !gamma.is_square() || d == 0 || d % 2 == 1 {
            return Err(GsimError::Dimension(format!("covariance of shape {:?}", gamma.shape())));
        }
        let s = Self { n: d / 2, gamma };
        let skew = s.skew_residual();
        if !(skew <= 1e-9) {
            return Err(GsimError::InvalidState(format!("not skew-symmetric ({skew:e})")));
        }
        let pur = s.purity_residual();
        if !(pur <= 1e-8) {
            return Err(GsimError::InvalidState(format!("not pure ({pur:e})")));
        }
        Ok(s)
    }

    /// Caller guarantees a valid pure covariance.
    pub fn from_unchecked(gamma: RealMatrix) -> Self {
        Self { n: gamma.nrows() / 2, gamma }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> &RealMatrix {
        &self.gamma
    }

    pub fn into_gamma(self) -> RealMatrix {
        self.gamma
    }

    pub fn skew_residual(&self) -> f64 {
        (&self.gamma + self.gamma.transpose()).amax()
    }

    /// `‖ΓΓᵀ − I‖`.
    pub fn purity_residual(&self) -> f64 {
        let d = 2 * self.n;
        op_norm(&(&self.gamma * self.gamma.transpose() - DMatrix::identity(d, d)))
    }
}

/// Wire form of a state: `{n, gamma}` with `gamma` in matrix JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub n: usize,
    pub gamma: MatrixJson,
}

impl From<GaussianState> for StateJson {
    fn from(s: GaussianState) -> Self {
        Self { n: s.n, gamma: MatrixJson::from_real(&s.gamma) }
    }
}

impl TryFrom<StateJson> for GaussianState {
    type Error = GsimError;

    fn try_from(j: StateJson) -> Result<Self> {
        let s = Self::new(j.gamma.to_real()?)?;
        if s.n != j.n {
            return Err(GsimError::Dimension(format!("declared n = {} but covariance has {}", j.n, s.n)));
        }
        Ok(s)
    }
}

/// One-particle reduced density matrix `D_jk = ⟨a_j† a_k⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Rdm {
    pub d: ComplexMatrix,
}

impl From<Rdm> for MatrixJson {
    fn from(r: Rdm) -> Self {
        MatrixJson::from_complex(&r.d)
    }
}

impl TryFrom<MatrixJson> for Rdm {
    type Error = GsimError;

    fn try_from(j: MatrixJson) -> Result<Self> {
        Ok(Self { d: j.to_complex()? })
    }
}

impl Rdm {
    pub fn n(&self) -> usize {
        self.d.nrows()
    }

    /// Expected particle number `tr D`.
    pub fn trace(&self) -> f64 {
        self.d.trace().re
    }
}

pub fn vacuum_state(n: usize) -> GaussianState {
    GaussianState { n, gamma: symplectic_form(n) }
}

/// `|b⟩ = Π (a_j†)^{b_j} |0⟩`: `J` with `Γ_{j,j+n} = −1` wherever `b_j = 1`.
pub fn fock_basis_state(b: &[u8]) -> Result<GaussianState> {
    if b.is_empty() || b.iter().any(|&x| x > 1) {
        return Err(GsimError::InvalidState(format!("bitstring {b:?}")));
    }
    let n = b.len();
    let mut g = symplectic_form(n);
    for (j, &bit) in b.iter().enumerate() {
        if bit == 1 {
            g[(j, j + n)] = -1.0;
            g[(j + n, j)] = 1.0;
        }
    }
    Ok(GaussianState { n, gamma: g })
}

/// `Γ ↦ QΓQᵀ`, re-skewed to remove rounding drift.
pub fn apply_flo(s: &GaussianState, q: &ActiveFlo) -> Result<GaussianState> {
    if q.n() != s.n {
        return Err(GsimError::Dimension(format!("FLO on {} modes, state on {}", q.n(), s.n)));
    }
    let m = q.matrix();
    let g = m * &s.gamma * m.transpose();
    Ok(GaussianState { n: s.n, gamma: (&g - g.transpose()) * 0.5 })
}

/// `s ⊗ |0^k⟩`, with the new modes appended after the existing ones.
pub fn append_vacuum_modes(s: &GaussianState, k: usize) -> Result<GaussianState> {
    if k == 0 {
        return Err(GsimError::Dimension("append at least one mode".into()));
    }
    let (n, nt) = (s.n, s.n + k);
    let mut g = DMatrix::zeros(2 * nt, 2 * nt);
    for i in 0..2 * n {
        for j in 0..2 * n {
            g[(extend_index(i, n, nt), extend_index(j, n, nt))] = s.gamma[(i, j)];
        }
    }
    for m in n..nt {
        g[(m, m + nt)] = 1.0;
        g[(m + nt, m)] = -1.0;
    }
    Ok(GaussianState { n: nt, gamma: g })
}

/// `T([[A, B], [C, D]]) = (C − B + i(A + D))/2` on `2n×2n` real input.
pub fn t_map(x: &RealMatrix) -> ComplexMatrix {
    let n = x.nrows() / 2;
    let blk = |r: usize, s: usize| x.view((r * n, s * n), (n, n)).map(c);
    let (a, b, cc, d) = (blk(0, 0), blk(0, 1), blk(1, 0), blk(1, 1));
    ((cc - b) + (a + d) * I) * c(0.5)
}

/// `D = (I + T(Γ))/2`, symmetrized to be exactly Hermitian.
pub fn rdm_from_covariance(s: &GaussianState) -> Rdm {
    let n = s.n;
    let d = (DMatrix::identity(n, n) + t_map(&s.gamma)) * c(0.5);
    Rdm { d: (&d + d.adjoint()) * c(0.5) }
}
