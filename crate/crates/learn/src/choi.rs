//! Choi-state learner (n ancilla modes).

use crate::{BoxView, ExperimentSpec, LearnError, QueryAccess, ResourceModel, Result};
use flo_florep::ActiveFlo;
use flo_gsim::{choi_block, fepr_preparation, sign_matrix};
use flo_matlin::{svd_round_real, RealMatrix, RoundTarget};
use flo_shadows::{sample_size, SampleKind};

/// `128n² log(8n/δ)/ε²·scale` copies.
pub fn choi_budget(n: usize, eps: f64, delta: f64, scale: f64) -> Result<u64> {
    Ok(sample_size(&SampleKind::Choi { n, eps, delta }, scale)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChoiEstimate {
    pub q: ActiveFlo,
    /// Mean SO(4n)-shadow estimate of the Choi covariance.
    pub mean: RealMatrix,
}

/// Prepare the fEPR state on `2n` modes, apply `view ⊕ I`, estimate the
/// covariance with SO(4n) shadows, round the system–ancilla block to an
/// orthogonal matrix and multiply by `S`.
pub fn choi_tomo_base<A: QueryAccess>(bx: &mut A, view: &BoxView, samples: u64, seed: u64) -> Result<ChoiEstimate> {
    if bx.resource() != ResourceModel::Choi {
        return Err(LearnError::Resource("Choi learner needs n ancilla modes".into()));
    }
    let n = view.n();
    bx.set_stage("choi");
    let spec = ExperimentSpec {
        initial: vec![0; 2 * n],
        prep: Some(fepr_preparation(n)),
        view: view.clone(),
        measurement: crate::Measurement::Fock,
    };
    let mean = bx.run_so_shadows(&spec, samples, seed)?.mean_real();
    let block = svd_round_real(&choi_block(&mean), RoundTarget::Orthogonal)?;
    let q = ActiveFlo::from_unchecked(block * sign_matrix(n));
    Ok(ChoiEstimate { q, mean })
}
