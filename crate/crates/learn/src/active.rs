//! Two-stage active base learner.

use crate::passive::{passive_tomo_base, PassiveBudget, PassiveEstimate, PassiveMode};
use crate::tomo::gaussian_tomo;
use crate::{BoxView, ExperimentSpec, QueryAccess, Result};
use flo_florep::{embed_passive, ActiveFlo};
use flo_matlin::rng::derive_seed_str;
use flo_shadows::{sample_size, SampleKind};
use serde::{Deserialize, Serialize};

/// Sample sizes of one active base call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActiveBudget {
    /// SO(2n)-shadow runs on `Φ(Q)|0⟩`.
    pub vacuum: u64,
    /// Runs per column per phaseless call in stage 2.
    pub phaseless: u64,
    /// Runs per quadrature in stage 2.
    pub phase: u64,
}

impl ActiveBudget {
    /// Sizes for target `(ε, δ)` with `c = ε/2600`, `δ_act = δ_pas = c/√n`
    /// and failure budget `δ/3` (vacuum), `δ/(6n)` per phaseless column,
    /// `δ/6` per quadrature. The phase target is `√80000·c`.
    pub fn for_target(n: usize, eps: f64, delta: f64, scale: f64) -> Result<Self> {
        Self::for_target_split(n, eps, delta, scale, scale)
    }

    /// As [`ActiveBudget::for_target`] with a separate scale for the phase stage.
    pub fn for_target_split(n: usize, eps: f64, delta: f64, scale: f64, phase_scale: f64) -> Result<Self> {
        let c = eps / 2600.0;
        let d = c / (n as f64).sqrt();
        Ok(Self {
            vacuum: sample_size(&SampleKind::VacuumStage { n, delta: d, eta: delta / 3.0 }, scale)?,
            phaseless: sample_size(&SampleKind::PerturbedRdm { n, c, delta: d, eta: delta / (6.0 * n as f64) }, scale)?,
            phase: sample_size(&SampleKind::Phase { eps: 80000f64.sqrt() * c, p_fail: delta / 6.0 }, phase_scale)?,
        })
    }

    pub fn passive(&self) -> PassiveBudget {
        PassiveBudget { phaseless: self.phaseless, phase: self.phase }
    }

    /// Queries charged for one call on a single-query view.
    pub fn queries(&self, n: usize) -> u64 {
        self.vacuum + self.passive().queries(n, PassiveMode::Diamond)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActiveEstimate {
    pub q: ActiveFlo,
    /// Stage-1 estimate `Q̂_act`.
    pub q_act: ActiveFlo,
    /// Stage-2 passive estimate.
    pub passive: PassiveEstimate,
}

/// Stage 1 learns `Q̂_act` from the normal form of the output covariance
/// `QJQᵀ` of the vacuum; stage 2 runs the passive learner on
/// `Φ(Q̂_actᵀ)·view`, whose one-body matrix is close to passive. Output
/// `Q̂ = Q̂_act·embed(U♯)`.
pub fn active_tomo_base<A: QueryAccess>(bx: &mut A, view: &BoxView, budget: ActiveBudget, seed: u64) -> Result<ActiveEstimate> {
    let n = view.n();
    bx.set_stage("vacuum");
    let spec = ExperimentSpec::fock(vec![0; n], view.clone());
    let g = gaussian_tomo(bx, &spec, budget.vacuum, derive_seed_str(seed, "vacuum"))?;
    let q_act = ActiveFlo::from_unchecked(g.w);
    let rest = view.compose_left(&q_act.transpose());
    let passive = passive_tomo_base(bx, &rest, PassiveMode::Diamond, budget.passive(), derive_seed_str(seed, "stage2"))?;
    let q = q_act.compose(&embed_passive(&passive.u));
    Ok(ActiveEstimate { q, q_act, passive })
}
