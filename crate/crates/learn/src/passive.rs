//! Passive (number-conserving) base learner.

use crate::tomo::phaseless_tomo;
use crate::{BoxView, ExperimentSpec, LearnError, Measurement, QueryAccess, Result};
use flo_florep::{dft_matrix, embed_passive, ActiveFlo, Gate, GateList, PassiveFlo};
use flo_matlin::rng::derive_seed_str;
use flo_shadows::{sample_size, SampleKind, SINGLE_PARTICLE_CONSTANT};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;

/// Entries below this magnitude make the phase correction undefined.
const DEGENERATE: f64 = 1e-12;

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Fix the column phases of `V ≈ UΘ` using `G ≈ UF†Θ′`.
///
/// `P = (G†V) ⊘ F`, so `P_jk/P_j1 ≈ e^{i(θ_k − θ_1)}` for every row `j`. The
/// relative phase `α_k` of column `k` is the argument of the median (real and
/// imaginary parts separately) of column `k` of `P ⊘ P₁` over the rows. The
/// output is `W = VΨ†` with `Ψ = diag(e^{iα_k})`.
pub fn column_phases(v: &PassiveFlo, g: &PassiveFlo) -> Result<PassiveFlo> {
    let n = v.n();
    if g.n() != n {
        return Err(LearnError::InvalidParameter(format!("column phases of {n} and {} modes", g.n())));
    }
    let f = dft_matrix(n);
    let gv = g.matrix().adjoint() * v.matrix();
    let mut p = DMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let fe = f.matrix()[(j, k)];
            if fe.norm() < DEGENERATE {
                return Err(LearnError::Degenerate(format!("F[{j},{k}] ≈ 0")));
            }
            p[(j, k)] = gv[(j, k)] / fe;
        }
    }
    let mut psi = DMatrix::zeros(n, n);
    for k in 0..n {
        let mut re = Vec::with_capacity(n);
        let mut im = Vec::with_capacity(n);
        for j in 0..n {
            let d = p[(j, 0)];
            if d.norm() < DEGENERATE {
                return Err(LearnError::Degenerate(format!("P[{j},0] ≈ 0")));
            }
            let r = p[(j, k)] / d;
            re.push(r.re);
            im.push(r.im);
        }
        let alpha = Complex64::new(median(re), median(im)).arg();
        psi[(k, k)] = Complex64::from_polar(1.0, alpha);
    }
    Ok(PassiveFlo::from_unchecked(v.matrix() * psi.adjoint()))
}

/// `e^{(π/4)(a₁†a_a† − a_a a₁)}` on `nt` modes with the ancilla `a` last.
pub fn pair_preparation(nt: usize) -> ActiveFlo {
    let a = nt - 1;
    let g = GateList {
        n: nt,
        gates: vec![
            Gate::MajoranaRotation { p: 0, q: a, angle: -FRAC_PI_4 },
            Gate::MajoranaRotation { p: nt, q: a + nt, angle: FRAC_PI_4 },
        ],
    };
    ActiveFlo::from_unchecked(g.one_body())
}

/// Mean X and Y quadratures of `view` applied to the paired state.
pub fn quadrature_means<A: QueryAccess>(bx: &mut A, view: &BoxView, samples: u64, seed: u64) -> Result<(f64, f64)> {
    let nt = view.n() + 1;
    let mut spec = ExperimentSpec {
        initial: vec![0; nt],
        prep: Some(pair_preparation(nt)),
        view: view.clone(),
        measurement: Measurement::QuadratureX,
    };
    let mx = bx.run_quadrature(&spec, samples, derive_seed_str(seed, "x"))?;
    spec.measurement = Measurement::QuadratureY;
    let my = bx.run_quadrature(&spec, samples, derive_seed_str(seed, "y"))?;
    Ok((mx, my))
}

/// Interferometric estimate of the U(1) phase of `view`: `atan2(m_Y, m_X)`
/// from `samples` runs per quadrature (one ancilla mode).
pub fn phase_est<A: QueryAccess>(bx: &mut A, view: &BoxView, samples: u64, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(LearnError::InvalidParameter("phase estimation needs N ≥ 1".into()));
    }
    let (mx, my) = quadrature_means(bx, view, samples, seed)?;
    Ok(my.atan2(mx))
}

/// Target metric of the passive learner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PassiveMode {
    /// Full learner including the U(1) phase (diamond-distance target).
    Diamond,
    /// Number-sector learner: no phase estimation, no ancilla.
    Sector,
}

/// Sample sizes of one passive base call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassiveBudget {
    /// Runs per column in each phaseless tomography.
    pub phaseless: u64,
    /// Runs per quadrature in phase estimation.
    pub phase: u64,
}

impl PassiveBudget {
    /// Sizes for target `(ε, δ)`: `ε/175` per phaseless call at `δ/4`, and
    /// `572 log(8/δ)/ε²` for the phase, each multiplied by `scale`.
    pub fn for_target(n: usize, eps: f64, delta: f64, constant: Option<f64>, scale: f64) -> Result<Self> {
        Self::for_target_split(n, eps, delta, constant, scale, scale)
    }

    /// As [`PassiveBudget::for_target`] with a separate scale for the phase stage.
    pub fn for_target_split(
        n: usize,
        eps: f64,
        delta: f64,
        constant: Option<f64>,
        scale: f64,
        phase_scale: f64,
    ) -> Result<Self> {
        let constant = constant.unwrap_or(SINGLE_PARTICLE_CONSTANT);
        Ok(Self {
            phaseless: sample_size(&SampleKind::SingleParticle { n, eps: eps / 175.0, delta: delta / 4.0, constant }, scale)?,
            phase: sample_size(&SampleKind::PhaseAlg { eps, delta }, phase_scale)?,
        })
    }

    /// Queries charged for one call on a single-query view.
    pub fn queries(&self, n: usize, mode: PassiveMode) -> u64 {
        let ph = if mode == PassiveMode::Diamond { 2 * self.phase } else { 0 };
        2 * n as u64 * self.phaseless + ph
    }
}

/// Intermediate estimates of a passive base call.
#[derive(Debug, Clone, PartialEq)]
pub struct PassiveEstimate {
    /// Output `U♯` (or `U⋆` in sector mode).
    pub u: PassiveFlo,
    /// Column-phase-corrected estimate `U⋆`.
    pub u_star: PassiveFlo,
    /// Estimated U(1) phase (0 in sector mode).
    pub theta: f64,
}

/// Learn the passive FLO behind `view`.
///
/// `V ← phaseless(view)`, `G ← phaseless(view·Φ_pas(F†))`,
/// `U⋆ ← column_phases(V, G)`, then in diamond mode
/// `θ̂ ← phase_est(view·Φ_pas(U⋆†))` and `U♯ = e^{iθ̂}U⋆`.
pub fn passive_tomo_base<A: QueryAccess>(
    bx: &mut A,
    view: &BoxView,
    mode: PassiveMode,
    budget: PassiveBudget,
    seed: u64,
) -> Result<PassiveEstimate> {
    bx.set_stage("phaseless");
    let v = phaseless_tomo(bx, view, budget.phaseless, derive_seed_str(seed, "phaseless-v"))?;
    let f_dag = embed_passive(&dft_matrix(view.n()).adjoint());
    let g = phaseless_tomo(bx, &view.compose_right(&f_dag), budget.phaseless, derive_seed_str(seed, "phaseless-g"))?;
    let u_star = column_phases(&v, &g)?;
    let theta = match mode {
        PassiveMode::Sector => 0.0,
        PassiveMode::Diamond => {
            bx.set_stage("phase");
            let probe = view.compose_right(&embed_passive(&u_star.adjoint()));
            phase_est(bx, &probe, budget.phase, derive_seed_str(seed, "phase"))?
        }
    };
    Ok(PassiveEstimate { u: u_star.with_phase(theta), u_star, theta })
}
