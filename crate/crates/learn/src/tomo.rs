//! State tomography from shadows and the phaseless column learner.

use crate::{BoxView, ExperimentSpec, LearnError, QueryAccess, Result};
use flo_gsim::{GaussianState, Rdm};
use flo_matlin::rng::derive_seed;
use flo_matlin::{skew_normal_form, svd_round, top_eigenvectors, ComplexMatrix, RealMatrix, RoundTarget};
use flo_florep::PassiveFlo;
use nalgebra::DMatrix;

/// Mean of `samples` U(n)-shadow estimates of the state prepared by `source`.
pub fn slater_mean<A: QueryAccess>(bx: &mut A, source: &ExperimentSpec, samples: u64, seed: u64) -> Result<ComplexMatrix> {
    if samples == 0 {
        return Err(LearnError::InvalidParameter("slater tomography needs N ≥ 1".into()));
    }
    Ok(bx.run_un_shadows(source, samples, seed)?.mean_complex())
}

/// Rank-`η` projector closest to the mean U(n)-shadow estimate.
pub fn slater_tomo<A: QueryAccess>(
    bx: &mut A,
    source: &ExperimentSpec,
    samples: u64,
    eta: usize,
    seed: u64,
) -> Result<Rdm> {
    let n = bx.n();
    if eta > n {
        return Err(LearnError::InvalidParameter(format!("η = {eta} exceeds n = {n}")));
    }
    let mean = slater_mean(bx, source, samples, seed)?;
    if eta == 0 {
        return Ok(Rdm { d: DMatrix::zeros(n, n) });
    }
    Ok(Rdm { d: svd_round(&mean, RoundTarget::Projector(eta))? })
}

/// Result of pure Gaussian state tomography.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianEstimate {
    /// Mean SO(2n)-shadow estimate `Γ̄`.
    pub mean: RealMatrix,
    /// Rounded pure state `Γ⋆ = WJWᵀ`.
    pub state: GaussianState,
    /// Normal-form basis `W`; `Φ(W)|0⟩` has covariance `Γ⋆`.
    pub w: RealMatrix,
}

pub fn gaussian_tomo<A: QueryAccess>(
    bx: &mut A,
    source: &ExperimentSpec,
    samples: u64,
    seed: u64,
) -> Result<GaussianEstimate> {
    if samples == 0 {
        return Err(LearnError::InvalidParameter("gaussian tomography needs N ≥ 1".into()));
    }
    let mean = bx.run_so_shadows(source, samples, seed)?.mean_real();
    let nf = skew_normal_form(&mean)?;
    let gamma = nf.rounded();
    let gamma = (&gamma - gamma.transpose()) * 0.5;
    Ok(GaussianEstimate { mean, state: GaussianState::from_unchecked(gamma), w: nf.w })
}

/// Learn the passive FLO behind `view` up to column phases.
///
/// Column `j` is the top eigenvector of the estimated RDM of `view|1_j⟩`
/// (conjugated: that RDM is `ū ūᵀ` for column `u`). The assembled matrix is
/// rounded to the nearest unitary. Uses exactly `n·samples` runs.
pub fn phaseless_tomo<A: QueryAccess>(bx: &mut A, view: &BoxView, samples: u64, seed: u64) -> Result<PassiveFlo> {
    let n = view.n();
    let mut cols = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut bits = vec![0u8; n];
        bits[j] = 1;
        let spec = ExperimentSpec::fock(bits, view.clone());
        let mean = slater_mean(bx, &spec, samples, derive_seed(seed, j as u64))?;
        let (_, v) = top_eigenvectors(&mean, 1)?;
        cols.set_column(j, &v.column(0).map(|z| z.conj()));
    }
    Ok(PassiveFlo::from_unchecked(svd_round(&cols, RoundTarget::Unitary)?))
}
