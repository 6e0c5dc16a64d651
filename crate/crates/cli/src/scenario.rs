//! Seeded trial batches for every scenario.

use crate::config::{BaseKind, Scenario, ScenarioConfig};
use crate::truth::{
    import_ground_truth, near_identity_active, near_identity_unitary, random_active, random_passive,
};
use anyhow::{anyhow, bail, Context, Result};
use flo_florep::{embed_passive, extract_passive, ActiveFlo, PassiveFlo};
use flo_foracle::{trace_distance, Oracle};
use flo_gsim::{apply_flo, fock_basis_state, rdm_from_covariance, vacuum_state};
use flo_learn::bootstrap::{bootstrap, BootstrapConfig, SyntheticBase};
use flo_learn::report::{trace_rows, EstimateJson, TraceRow};
use flo_learn::{
    active_tomo_base, choi_budget, choi_tomo_base, gaussian_tomo, passive_tomo_base, phase_est,
    slater_tomo, ActiveBudget, AchievedErrors, BoxView, Estimate, ExperimentSpec, FloBlackBox, LearnError,
    LearnerReport, PassiveBudget, PassiveMode, QueryAccess,
};
use flo_matlin::json::MatrixJson;
use flo_matlin::par::{map_indexed, Exec};
use flo_matlin::rng::{derive_seed, derive_seed_str, stream, Stream};
use flo_matlin::{op_norm, op_norm_c, phase_distance, svd_round, top_eigenvectors, ComplexMatrix, RoundTarget};
use flo_shadows::{sample_size, SampleKind};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::time::Instant;

/// One line of `results.csv`. Column semantics per scenario:
///
/// | scenario | op_err | ph_err | diamond_err |
/// |---|---|---|---|
/// | slater | `‖D⋆ − D‖` | `√min(η, n/2)·op_err` | exact trace distance |
/// | gauss | `‖Γ̄ − Γ‖` | `‖Γ⋆ − Γ‖` | exact trace distance |
/// | passive, bootstrap | `‖U♯ − U‖` | phase distance | diamond distance |
/// | active, choi | `‖Q̂ − Q‖` | `min ‖Q̂ ∓ Q‖` | diamond distance |
/// | phase | `\|e^{iθ̂} − e^{iθ}\|` or `‖U♯ − U‖` | phase distance (perturbed) | |
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub scenario: String,
    pub n: usize,
    pub eta: Option<usize>,
    pub eps: f64,
    pub delta: f64,
    pub seed: u64,
    pub trial: usize,
    pub queries: u64,
    pub op_err: Option<f64>,
    pub ph_err: Option<f64>,
    pub diamond_err: Option<f64>,
    pub wall_ms: Option<f64>,
    pub constant_scale: f64,
    pub phase_scale: Option<f64>,
    pub success: bool,
}

/// One line of `summary.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub scenario: String,
    pub n: usize,
    pub eps: f64,
    pub trials: usize,
    pub successes: usize,
    pub success_fraction: f64,
    pub median_op_err: Option<f64>,
    pub max_op_err: Option<f64>,
    pub median_queries: u64,
}

/// One line of `sweep.csv` (bootstrap only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub base: String,
    pub n: usize,
    pub eps: f64,
    pub iterations: u32,
    pub queries: u64,
    /// Queries relative to the previous (larger) ε.
    pub ratio: Option<f64>,
    pub success_fraction: f64,
    pub median_op_err: Option<f64>,
}

/// One line of `traces.csv` (bootstrap only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceLine {
    pub eps: f64,
    pub trial: usize,
    pub t: u32,
    pub p_t: u32,
    pub delta_t: f64,
    pub base_err: f64,
    pub cumulative_queries: u64,
}

/// A trial that ended in a reported learner failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub eps: f64,
    pub trial: usize,
    pub error: String,
}

/// Everything one run produces, in deterministic order.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub config: ScenarioConfig,
    pub warnings: Vec<String>,
    pub rows: Vec<ResultRow>,
    pub reports: Vec<LearnerReport>,
    pub failures: Vec<TrialFailure>,
    pub summary: Vec<SummaryRow>,
    pub sweep: Vec<SweepRow>,
    pub traces: Vec<TraceLine>,
}

struct TrialOutcome {
    row: ResultRow,
    report: Option<LearnerReport>,
    trace: Vec<TraceRow>,
    failure: Option<String>,
}

/// Per-trial inputs. The truth depends on `(seed, trial)` only, so every ε
/// of a sweep sees the same hidden FLOs.
struct Trial<'a> {
    cfg: &'a ScenarioConfig,
    truth: Option<&'a ActiveFlo>,
    eps: f64,
    eps_index: usize,
    index: usize,
}

impl Trial<'_> {
    fn truth_rng(&self) -> Stream {
        stream(derive_seed_str(self.cfg.seed, "truth"), self.index as u64)
    }

    fn seed(&self) -> u64 {
        derive_seed(derive_seed(derive_seed_str(self.cfg.seed, "learner"), self.eps_index as u64), self.index as u64)
    }

    fn n(&self) -> usize {
        self.cfg.n
    }

    fn passive_truth(&self) -> Result<PassiveFlo> {
        match self.truth {
            Some(q) => extract_passive(q).map_err(|e| anyhow!("ground truth is not passive: {e}")),
            None => random_passive(self.n(), &mut self.truth_rng()),
        }
    }

    fn active_truth(&self) -> Result<ActiveFlo> {
        match self.truth {
            Some(q) => Ok(q.clone()),
            None => random_active(self.n(), &mut self.truth_rng()),
        }
    }

    fn report_config(&self) -> serde_json::Value {
        serde_json::json!({ "config": self.cfg, "eps": self.eps, "trial": self.index })
    }

    fn row(&self, queries: u64, errors: &AchievedErrors, success: bool) -> ResultRow {
        let uses_phase = matches!(self.cfg.scenario, Scenario::Passive | Scenario::Active | Scenario::Phase)
            || (self.cfg.scenario == Scenario::BootstrapSweep
                && matches!(self.cfg.base, Some(BaseKind::Passive | BaseKind::Active)));
        let uses_phase = uses_phase && !(self.cfg.scenario == Scenario::Passive && self.cfg.mode == PassiveMode::Sector);
        ResultRow {
            scenario: self.cfg.scenario.name().to_string(),
            n: self.n(),
            eta: self.cfg.eta,
            eps: self.eps,
            delta: self.cfg.delta,
            seed: self.cfg.seed,
            trial: self.index,
            queries,
            op_err: Some(errors.op_err),
            ph_err: Some(errors.ph_err),
            diamond_err: errors.diamond_err,
            wall_ms: None,
            constant_scale: self.cfg.constant_scale,
            phase_scale: uses_phase.then(|| self.cfg.phase_scale()),
            success,
        }
    }

    fn outcome(&self, bx: &FloBlackBox, learner: &str, est: EstimateJson, errors: AchievedErrors, success: bool) -> TrialOutcome {
        let report = LearnerReport {
            learner: learner.to_string(),
            n: self.n(),
            seed: self.seed(),
            config: self.report_config(),
            estimate: est,
            ledger: bx.ledger().clone(),
            errors,
            trace: Vec::new(),
        };
        TrialOutcome { row: self.row(bx.ledger().total_queries, &errors, success), report: Some(report), trace: Vec::new(), failure: None }
    }
}

/// Run every trial of `cfg` and collect the artifacts.
pub fn run(cfg: &ScenarioConfig) -> Result<Artifacts> {
    cfg.validate()?;
    if cfg.scenario == Scenario::Verify {
        bail!("verify is run through the verify module, not as a trial batch");
    }
    let mut warnings = Vec::new();
    let truth = match &cfg.truth {
        Some(path) => {
            let imported = import_ground_truth(path, cfg.n)?;
            warnings.extend(imported.warnings.iter().cloned());
            Some(imported.q)
        }
        None => None,
    };
    if cfg.n > cfg.oracle_cap {
        warnings.push(format!(
            "n = {} exceeds oracle_cap = {}: exact distances skipped, reporting operator-norm errors only",
            cfg.n, cfg.oracle_cap
        ));
    }
    let mut art = Artifacts {
        config: cfg.clone(),
        warnings,
        rows: Vec::new(),
        reports: Vec::new(),
        failures: Vec::new(),
        summary: Vec::new(),
        sweep: Vec::new(),
        traces: Vec::new(),
    };
    for (eps_index, &eps) in cfg.eps.iter().enumerate() {
        let outcomes = map_indexed(Exec::default(), cfg.trials as u64, |i| {
            let trial = Trial { cfg, truth: truth.as_ref(), eps, eps_index, index: i as usize };
            let start = Instant::now();
            let out = run_trial(&trial);
            out.map(|mut o| {
                if cfg.wall_time {
                    o.row.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
                }
                o
            })
            .with_context(|| format!("{} trial {i} at eps = {eps}", cfg.scenario.name()))
        });
        let mut batch = Vec::with_capacity(outcomes.len());
        for o in outcomes {
            let o = o?;
            for t in &o.trace {
                art.traces.push(TraceLine {
                    eps,
                    trial: o.row.trial,
                    t: t.t,
                    p_t: t.p,
                    delta_t: t.delta,
                    base_err: t.base_err,
                    cumulative_queries: t.cumulative_queries,
                });
            }
            if let Some(f) = o.failure {
                art.failures.push(TrialFailure { eps, trial: o.row.trial, error: f });
            }
            if let Some(mut r) = o.report {
                r.trace = o.trace;
                art.reports.push(r);
            }
            batch.push(o.row);
        }
        art.summary.push(summarize(cfg, eps, &batch));
        art.rows.extend(batch);
    }
    if cfg.scenario == Scenario::BootstrapSweep {
        art.sweep = sweep_rows(cfg, &art.rows);
    }
    Ok(art)
}

fn run_trial(t: &Trial) -> Result<TrialOutcome> {
    match t.cfg.scenario {
        Scenario::Slater => slater_trial(t),
        Scenario::Gauss => gauss_trial(t),
        Scenario::Passive => passive_trial(t),
        Scenario::Active => active_trial(t),
        Scenario::Choi => choi_trial(t),
        Scenario::Phase if t.cfg.perturbed => perturbed_phase_trial(t),
        Scenario::Phase => phase_trial(t),
        Scenario::BootstrapSweep => bootstrap_trial(t),
        Scenario::Verify => unreachable!("rejected in run"),
    }
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    Some(if xs.len() % 2 == 1 { xs[m] } else { 0.5 * (xs[m - 1] + xs[m]) })
}

fn summarize(cfg: &ScenarioConfig, eps: f64, rows: &[ResultRow]) -> SummaryRow {
    let errs: Vec<f64> = rows.iter().filter_map(|r| r.op_err).collect();
    let mut queries: Vec<u64> = rows.iter().map(|r| r.queries).collect();
    queries.sort_unstable();
    let successes = rows.iter().filter(|r| r.success).count();
    SummaryRow {
        scenario: cfg.scenario.name().to_string(),
        n: cfg.n,
        eps,
        trials: rows.len(),
        successes,
        success_fraction: successes as f64 / rows.len().max(1) as f64,
        median_op_err: median(errs.clone()),
        max_op_err: errs.into_iter().reduce(f64::max),
        median_queries: queries.get(queries.len() / 2).copied().unwrap_or(0),
    }
}

fn sweep_rows(cfg: &ScenarioConfig, rows: &[ResultRow]) -> Vec<SweepRow> {
    let base = cfg.base.expect("validated");
    let mut out: Vec<SweepRow> = Vec::new();
    for &eps in &cfg.eps {
        let batch: Vec<ResultRow> = rows.iter().filter(|r| r.eps == eps).cloned().collect();
        let s = summarize(cfg, eps, &batch);
        let prev = out.last().map(|r| r.queries as f64);
        out.push(SweepRow {
            base: base.name().to_string(),
            n: cfg.n,
            eps,
            iterations: BootstrapConfig { eps, delta: cfg.delta, eps0: cfg.eps0() }.iterations(),
            queries: s.median_queries,
            ratio: prev.map(|p| s.median_queries as f64 / p),
            success_fraction: s.success_fraction,
            median_op_err: s.median_op_err,
        });
    }
    out
}

fn bits(n: usize, ones: usize) -> Vec<u8> {
    (0..n).map(|j| u8::from(j < ones)).collect()
}

/// Passive FLO whose `η`-particle state `Φ(V)|1^η0…⟩` has RDM `d` (a projector).
fn slater_basis(d: &ComplexMatrix) -> Result<PassiveFlo> {
    let (_, vecs) = top_eigenvectors(d, d.nrows())?;
    Ok(PassiveFlo::from_unchecked(svd_round(&vecs.conjugate(), RoundTarget::Unitary)?))
}

/// `√(1 − |det(A†B)|²)` for the top-`η` eigenvectors `A`, `B` of two projectors.
fn slater_trace_distance(d1: &ComplexMatrix, d2: &ComplexMatrix, eta: usize) -> Result<f64> {
    let (_, a) = top_eigenvectors(d1, eta)?;
    let (_, b) = top_eigenvectors(d2, eta)?;
    let overlap = (a.adjoint() * b).determinant().norm();
    Ok((1.0 - overlap * overlap).max(0.0).sqrt())
}

fn slater_trial(t: &Trial) -> Result<TrialOutcome> {
    let (n, eps, delta) = (t.n(), t.eps, t.cfg.delta);
    let eta = t.cfg.eta.expect("validated");
    let u = t.passive_truth()?;
    let q = embed_passive(&u);
    let mut bx = FloBlackBox::new(q.clone());
    let samples = sample_size(&SampleKind::SlaterTomo { n, eta, eps, delta }, t.cfg.constant_scale)?;
    let source = ExperimentSpec::fock(bits(n, eta), BoxView::query(n));
    bx.set_stage("slater");
    let est = slater_tomo(&mut bx, &source, samples, eta, t.seed())?;
    let truth = rdm_from_covariance(&apply_flo(&fock_basis_state(&bits(n, eta))?, &q)?).d;
    let op = op_norm_c(&(&est.d - &truth));
    let bound = (eta as f64).min(n as f64 / 2.0).sqrt() * op;
    let exact = if n <= t.cfg.oracle_cap {
        let oracle = Oracle { cap: t.cfg.oracle_cap };
        let s_est = oracle.prepare(&embed_passive(&slater_basis(&est.d)?), &bits(n, eta))?;
        let s_true = oracle.prepare(&q, &bits(n, eta))?;
        Some(trace_distance(&s_est, &s_true)?)
    } else {
        None
    };
    let trdist = match exact {
        Some(d) => d,
        None => slater_trace_distance(&est.d, &truth, eta)?,
    };
    let errors = AchievedErrors { op_err: op, ph_err: bound, theta_argmin: None, diamond_err: exact };
    let json = EstimateJson { kind: "rdm".into(), matrix: MatrixJson::from_complex(&est.d) };
    Ok(t.outcome(&bx, "slater", json, errors, trdist <= eps))
}

fn gauss_trial(t: &Trial) -> Result<TrialOutcome> {
    let (n, eps, delta) = (t.n(), t.eps, t.cfg.delta);
    let q = t.active_truth()?;
    let mut bx = FloBlackBox::new(q.clone());
    let samples = sample_size(&SampleKind::Covariance { n, eps, delta }, t.cfg.constant_scale)?;
    bx.set_stage("gauss");
    let est = gaussian_tomo(&mut bx, &ExperimentSpec::fock(vec![0; n], BoxView::query(n)), samples, t.seed())?;
    let truth = apply_flo(&vacuum_state(n), &q)?;
    let op = op_norm(&(&est.mean - truth.gamma()));
    let rounded = op_norm(&(est.state.gamma() - truth.gamma()));
    let exact = if n <= t.cfg.oracle_cap {
        let oracle = Oracle { cap: t.cfg.oracle_cap };
        let w = ActiveFlo::from_unchecked(est.w.clone());
        Some(trace_distance(&oracle.prepare(&w, &vec![0; n])?, &oracle.prepare(&q, &vec![0; n])?)?)
    } else {
        None
    };
    let errors = AchievedErrors { op_err: op, ph_err: rounded, theta_argmin: None, diamond_err: exact };
    let json = EstimateJson { kind: "covariance".into(), matrix: MatrixJson::from_real(est.state.gamma()) };
    Ok(t.outcome(&bx, "gauss", json, errors, op <= eps))
}

fn passive_budget(t: &Trial, eps: f64, delta: f64) -> Result<PassiveBudget> {
    Ok(PassiveBudget::for_target_split(
        t.n(),
        eps,
        delta,
        t.cfg.single_particle_constant,
        t.cfg.constant_scale,
        t.cfg.phase_scale(),
    )?)
}

fn learner_outcome(t: &Trial, bx: &FloBlackBox, learner: &str, est: Estimate, success: impl Fn(&AchievedErrors) -> bool) -> Result<TrialOutcome> {
    let report = LearnerReport::build(learner, bx, &est, t.report_config(), t.seed(), t.cfg.oracle_cap)?;
    let ok = success(&report.errors);
    let row = t.row(report.ledger.total_queries, &report.errors, ok);
    Ok(TrialOutcome { row, report: Some(report), trace: Vec::new(), failure: None })
}

fn passive_trial(t: &Trial) -> Result<TrialOutcome> {
    let u = t.passive_truth()?;
    let mut bx = FloBlackBox::new(embed_passive(&u));
    let budget = passive_budget(t, t.eps, t.cfg.delta)?;
    let est = passive_tomo_base(&mut bx, &BoxView::query(t.n()), t.cfg.mode, budget, t.seed())?;
    let eps = t.eps;
    let sector = t.cfg.mode == PassiveMode::Sector;
    learner_outcome(t, &bx, "passive", Estimate::Passive(est.u), |e| if sector { e.ph_err <= eps } else { e.op_err <= eps })
}

fn active_trial(t: &Trial) -> Result<TrialOutcome> {
    let q = t.active_truth()?;
    let mut bx = FloBlackBox::new(q);
    let budget = ActiveBudget::for_target_split(t.n(), t.eps, t.cfg.delta, t.cfg.constant_scale, t.cfg.phase_scale())?;
    let est = active_tomo_base(&mut bx, &BoxView::query(t.n()), budget, t.seed())?;
    let eps = t.eps;
    learner_outcome(t, &bx, "active", Estimate::Active(est.q), |e| e.op_err <= eps)
}

fn choi_trial(t: &Trial) -> Result<TrialOutcome> {
    let q = t.active_truth()?;
    let mut bx = FloBlackBox::new(q).with_choi_access();
    let samples = choi_budget(t.n(), t.eps, t.cfg.delta, t.cfg.constant_scale)?;
    let est = choi_tomo_base(&mut bx, &BoxView::query(t.n()), samples, t.seed())?;
    let eps = t.eps;
    learner_outcome(t, &bx, "choi", Estimate::Active(est.q), |e| e.op_err <= eps)
}

/// Phase samples per quadrature: failure `p′ = δ/2` per quadrature.
fn phase_samples(t: &Trial) -> Result<u64> {
    Ok(sample_size(&SampleKind::Phase { eps: t.eps, p_fail: t.cfg.delta / 2.0 }, t.cfg.phase_scale())?)
}

fn unit_phase(theta: f64) -> EstimateJson {
    let m = DMatrix::from_element(1, 1, Complex64::from_polar(1.0, theta));
    EstimateJson { kind: "phase".into(), matrix: MatrixJson::from_complex(&m) }
}

/// Hidden `Φ_pas(W e^{iθ})` with `‖W − I‖ ≤ ε`; success when
/// `|e^{iθ̂} − e^{iθ}| ≤ (π + 2)ε`.
fn phase_trial(t: &Trial) -> Result<TrialOutcome> {
    let (n, eps) = (t.n(), t.eps);
    let mut rng = t.truth_rng();
    let theta = rng.gen_range(-PI..PI);
    let w = near_identity_unitary(n, eps, &mut rng);
    let hidden = PassiveFlo::from_unchecked(w).with_phase(theta);
    let mut bx = FloBlackBox::new(embed_passive(&hidden));
    bx.set_stage("phase");
    let est = phase_est(&mut bx, &BoxView::query(n), phase_samples(t)?, t.seed())?;
    let err = (Complex64::from_polar(1.0, est) - Complex64::from_polar(1.0, theta)).norm();
    // Unit scalars have phase distance 0; the CSV leaves the column empty.
    let errors = AchievedErrors { op_err: err, ph_err: 0.0, theta_argmin: None, diamond_err: None };
    let mut out = t.outcome(&bx, "phase", unit_phase(est), errors, err <= (PI + 2.0) * eps);
    out.row.ph_err = None;
    Ok(out)
}

/// Active-stage phase estimation: hidden `Q = Q̂_act·Z·embed(U)` with
/// `‖Z − I‖ ≤ ε`, prior `Û` with `phdist(Û, U) ≤ ε`; the learner sees
/// `Φ(Q̂_actᵀ)·view·Φ_pas(Û†)` and outputs `U♯ = e^{iθ̂}Û`. Success when
/// `‖U♯ − U‖ ≤ 9ε`.
fn perturbed_phase_trial(t: &Trial) -> Result<TrialOutcome> {
    let (n, eps) = (t.n(), t.eps);
    let mut rng = t.truth_rng();
    let u = random_passive(n, &mut rng)?;
    let z = near_identity_active(n, eps, &mut rng)?;
    let q_act = random_active(n, &mut rng)?;
    let phi = rng.gen_range(-PI..PI);
    let u_hat = PassiveFlo::from_unchecked(u.matrix() * near_identity_unitary(n, eps, &mut rng)).with_phase(phi);
    let hidden = q_act.compose(&z).compose(&embed_passive(&u));
    let mut bx = FloBlackBox::new(hidden);
    let view = BoxView::query(n).compose_right(&embed_passive(&u_hat.adjoint())).compose_left(&q_act.transpose());
    bx.set_stage("phase");
    let theta = phase_est(&mut bx, &view, phase_samples(t)?, t.seed())?;
    let u_sharp = u_hat.with_phase(theta);
    let op = op_norm_c(&(u_sharp.matrix() - u.matrix()));
    let ph = phase_distance(u_sharp.matrix(), u.matrix())?;
    let errors = AchievedErrors { op_err: op, ph_err: ph, theta_argmin: None, diamond_err: None };
    let json = EstimateJson { kind: "passive".into(), matrix: MatrixJson::from_complex(u_sharp.matrix()) };
    Ok(t.outcome(&bx, "phase-perturbed", json, errors, op <= 9.0 * eps))
}

fn bootstrap_trial(t: &Trial) -> Result<TrialOutcome> {
    let base = t.cfg.base.expect("validated");
    let n = t.n();
    let truth = if base.is_passive() { embed_passive(&t.passive_truth()?) } else { t.active_truth()? };
    let mut bx = FloBlackBox::new(truth.clone());
    if base == BaseKind::Choi {
        bx = bx.with_choi_access();
    }
    let bcfg = BootstrapConfig { eps: t.eps, delta: t.cfg.delta, eps0: t.cfg.eps0() };
    let view = BoxView::query(n);
    let seed = t.seed();
    let synthetic = SyntheticBase::default();
    let (scale, phase_scale) = (t.cfg.constant_scale, t.cfg.phase_scale());
    let result: flo_learn::Result<(Estimate, Vec<TraceRow>)> = match base {
        BaseKind::Passive => bootstrap(&mut bx, &view, &bcfg, seed, |bx, v, call| {
            let budget = passive_budget(t, call.eps0, call.delta).map_err(|e| LearnError::InvalidParameter(e.to_string()))?;
            Ok(passive_tomo_base(bx, v, PassiveMode::Diamond, budget, call.seed)?.u)
        })
        .map(|o| (Estimate::Passive(o.estimate.clone()), trace_rows(&o.steps, &truth))),
        BaseKind::SyntheticPassive => {
            bootstrap(&mut bx, &view, &bcfg, seed, |bx, v, call| synthetic.passive(bx, &truth, v, call))
                .map(|o| (Estimate::Passive(o.estimate.clone()), trace_rows(&o.steps, &truth)))
        }
        BaseKind::Active => bootstrap(&mut bx, &view, &bcfg, seed, |bx, v, call| {
            let budget = ActiveBudget::for_target_split(n, call.eps0, call.delta, scale, phase_scale)?;
            Ok(active_tomo_base(bx, v, budget, call.seed)?.q)
        })
        .map(|o| (Estimate::Active(o.estimate.clone()), trace_rows(&o.steps, &truth))),
        BaseKind::Choi => bootstrap(&mut bx, &view, &bcfg, seed, |bx, v, call| {
            let samples = choi_budget(n, call.eps0, call.delta, scale)?;
            Ok(choi_tomo_base(bx, v, samples, call.seed)?.q)
        })
        .map(|o| (Estimate::Active(o.estimate.clone()), trace_rows(&o.steps, &truth))),
        BaseKind::SyntheticActive => {
            bootstrap(&mut bx, &view, &bcfg, seed, |bx, v, call| synthetic.active(bx, &truth, v, call))
                .map(|o| (Estimate::Active(o.estimate.clone()), trace_rows(&o.steps, &truth)))
        }
    };
    match result {
        Ok((est, trace)) => {
            let learner = format!("bootstrap-{}", base.name());
            let eps = t.eps;
            let mut out = learner_outcome(t, &bx, &learner, est, |e| e.op_err <= eps)?;
            out.trace = trace;
            Ok(out)
        }
        Err(e @ LearnError::BootstrapDivergence { .. }) => {
            let mut row = t.row(bx.ledger().total_queries, &AchievedErrors { op_err: 0.0, ph_err: 0.0, theta_argmin: None, diamond_err: None }, false);
            row.op_err = None;
            row.ph_err = None;
            Ok(TrialOutcome { row, report: None, trace: Vec::new(), failure: Some(e.to_string()) })
        }
        Err(e) => Err(e.into()),
    }
}
