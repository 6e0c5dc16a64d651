//! Heisenberg-scaling bootstrap over any base learner.

use crate::{BoxView, LearnError, QueryAccess, Result};
use flo_florep::{embed_passive, ActiveFlo, PassiveFlo};
use flo_matlin::rng::{derive_seed, stream};
use flo_matlin::{haar_special_orthogonal, haar_unitary, op_norm, op_norm_c, principal_root, principal_root_real, ComplexMatrix, RealMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default base accuracy `ε₀ = 1/50`.
pub const EPS0_DEFAULT: f64 = 1.0 / 50.0;
/// Relaxed base accuracy for the non-projective metric (below `1/(3π)`).
pub const EPS0_RELAXED: f64 = 0.1;

/// Group element the bootstrap can compose and take roots of.
pub trait FloElement: Clone {
    fn identity(n: usize) -> Self;
    /// `self · other`.
    fn compose(&self, other: &Self) -> Self;
    fn adjoint(&self) -> Self;
    /// Principal `p`-th root.
    fn root(&self, p: u32) -> Result<Self>;
    fn to_active(&self) -> ActiveFlo;
    /// Non-projective operator-norm distance.
    fn distance(&self, other: &Self) -> f64;
}

impl FloElement for PassiveFlo {
    fn identity(n: usize) -> Self {
        PassiveFlo::identity(n)
    }
    fn compose(&self, other: &Self) -> Self {
        PassiveFlo::compose(self, other)
    }
    fn adjoint(&self) -> Self {
        PassiveFlo::adjoint(self)
    }
    fn root(&self, p: u32) -> Result<Self> {
        Ok(PassiveFlo::from_unchecked(principal_root(self.matrix(), p)?))
    }
    fn to_active(&self) -> ActiveFlo {
        embed_passive(self)
    }
    fn distance(&self, other: &Self) -> f64 {
        op_norm_c(&(self.matrix() - other.matrix()))
    }
}

impl FloElement for ActiveFlo {
    fn identity(n: usize) -> Self {
        ActiveFlo::identity(n)
    }
    fn compose(&self, other: &Self) -> Self {
        ActiveFlo::compose(self, other)
    }
    fn adjoint(&self) -> Self {
        self.transpose()
    }
    fn root(&self, p: u32) -> Result<Self> {
        if p == 1 {
            return Ok(self.clone());
        }
        Ok(ActiveFlo::from_unchecked(principal_root_real(self.matrix(), p)?))
    }
    fn to_active(&self) -> ActiveFlo {
        self.clone()
    }
    fn distance(&self, other: &Self) -> f64 {
        op_norm(&(self.matrix() - other.matrix()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub eps: f64,
    pub delta: f64,
    pub eps0: f64,
}

impl BootstrapConfig {
    pub fn new(eps: f64, delta: f64) -> Self {
        Self { eps, delta, eps0: EPS0_DEFAULT }
    }

    pub fn relaxed(mut self) -> Self {
        self.eps0 = EPS0_RELAXED;
        self
    }

    /// `T = ⌈log₂(1/ε)⌉`.
    pub fn iterations(&self) -> u32 {
        let t = (1.0 / self.eps).log2() - 1e-12;
        t.ceil().max(0.0) as u32
    }

    /// `(p_t, δ_t)` for `t = 0..=T`, with `p_t = 2^t` and
    /// `δ_t = δ/2^{T+1−t}`.
    pub fn schedule(&self) -> Vec<(u32, f64)> {
        let big_t = self.iterations();
        (0..=big_t)
            .map(|t| (1u32 << t, self.delta / 2f64.powi((big_t + 1 - t) as i32)))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let ok = |x: f64| x > 0.0 && x <= 1.0;
        if !ok(self.eps) || !ok(self.delta) || !(self.eps0 > 0.0 && self.eps0 < 1.0 / (3.0 * std::f64::consts::PI)) {
            return Err(LearnError::InvalidParameter(format!(
                "bootstrap needs ε, δ ∈ (0, 1] and ε₀ < 1/(3π), got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Arguments of one base-learner call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseCall {
    pub t: u32,
    pub p: u32,
    pub eps0: f64,
    pub delta: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapStep<E> {
    pub t: u32,
    pub p: u32,
    pub delta: f64,
    /// Ledger total after this iteration.
    pub cumulative_queries: u64,
    /// `V_t` (input of the iteration).
    pub v: E,
    /// Base estimate `Q_t` of `(Φ(Q)Φ(V_t†))^{p_t}`.
    pub q: E,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapOutcome<E> {
    pub estimate: E,
    pub steps: Vec<BootstrapStep<E>>,
}

/// Run the bootstrap: for each `t`, learn `Q_t` from
/// `(view·Φ(V_t†))^{p_t}` at accuracy `ε₀` and failure `δ_t`, then set
/// `V_{t+1} = Q_t^{1/p_t} V_t`. Returns `V_{T+1}`.
pub fn bootstrap<A, E, F>(bx: &mut A, view: &BoxView, cfg: &BootstrapConfig, seed: u64, mut base: F) -> Result<BootstrapOutcome<E>>
where
    A: QueryAccess,
    E: FloElement,
    F: FnMut(&mut A, &BoxView, &BaseCall) -> Result<E>,
{
    cfg.validate()?;
    let mut v = E::identity(view.n());
    let mut steps = Vec::new();
    for (t, (p, delta)) in cfg.schedule().into_iter().enumerate() {
        let t = t as u32;
        let powered = view.compose_right(&v.adjoint().to_active()).power(p);
        let call = BaseCall { t, p, eps0: cfg.eps0, delta, seed: derive_seed(seed, t as u64) };
        let q = base(bx, &powered, &call)?;
        let r = q
            .root(p)
            .map_err(|e| LearnError::BootstrapDivergence { t, reason: e.to_string() })?;
        let next = r.compose(&v);
        steps.push(BootstrapStep { t, p, delta, cumulative_queries: bx.ledger().total_queries, v, q });
        v = next;
    }
    Ok(BootstrapOutcome { estimate: v, steps })
}

/// Stand-in base learner with a known contract: it returns the exact target
/// times a random perturbation `e^A` with `‖e^A − I‖ = ε₀`, and charges
/// `⌈q log(K/δ_t)/ε₀²⌉` runs of the view.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticBase {
    pub q: f64,
    pub k: f64,
}

impl Default for SyntheticBase {
    fn default() -> Self {
        Self { q: 1.0, k: 4.0 }
    }
}

impl SyntheticBase {
    pub fn shots(&self, eps0: f64, delta: f64) -> u64 {
        (self.q * (self.k / delta).ln() / (eps0 * eps0)).ceil().max(1.0) as u64
    }

    /// Perturbed passive estimate of `view` evaluated on `hidden`.
    pub fn passive<A: QueryAccess>(&self, bx: &mut A, hidden: &ActiveFlo, view: &BoxView, call: &BaseCall) -> Result<PassiveFlo> {
        bx.set_stage("synthetic");
        bx.charge_external(view, self.shots(call.eps0, call.delta));
        let exact = flo_florep::extract_passive(&view.evaluate(hidden))?;
        let n = view.n();
        let mut rng = stream(call.seed, 0);
        let u = haar_unitary(n, &mut rng)?;
        let phases: Vec<f64> = (0..n).map(|k| if k == 0 { 1.0 } else { -1.0 + 2.0 * k as f64 / n as f64 }).collect();
        let angle = 2.0 * (call.eps0 / 2.0).asin();
        let d = DMatrix::from_fn(n, n, |i, j| {
            if i == j { Complex64::from_polar(1.0, angle * phases[i]) } else { Complex64::new(0.0, 0.0) }
        });
        let pert: ComplexMatrix = &u * d * u.adjoint();
        Ok(PassiveFlo::from_unchecked(exact.matrix() * pert))
    }

    /// Perturbed active estimate of `view` evaluated on `hidden`.
    pub fn active<A: QueryAccess>(&self, bx: &mut A, hidden: &ActiveFlo, view: &BoxView, call: &BaseCall) -> Result<ActiveFlo> {
        bx.set_stage("synthetic");
        bx.charge_external(view, self.shots(call.eps0, call.delta));
        let exact = view.evaluate(hidden);
        let n = view.n();
        let mut rng = stream(call.seed, 0);
        let o = haar_special_orthogonal(2 * n, &mut rng)?;
        let angle = 2.0 * (call.eps0 / 2.0).asin();
        let mut r = RealMatrix::identity(2 * n, 2 * n);
        r[(0, 0)] = angle.cos();
        r[(0, 1)] = -angle.sin();
        r[(1, 0)] = angle.sin();
        r[(1, 1)] = angle.cos();
        let pert = &o * r * o.transpose();
        Ok(ActiveFlo::from_unchecked(exact.matrix() * pert))
    }
}
