//! Learner reports with post-hoc errors against the hidden FLO.

use crate::bootstrap::{BootstrapStep, FloElement};
use crate::{FloBlackBox, QueryLedger, Result};
use flo_florep::{embed_passive, extract_passive, ActiveFlo, PassiveFlo};
use flo_foracle::{diamond_distance_with, Oracle};
use flo_matlin::json::MatrixJson;
use flo_matlin::{op_norm, phase_argmin};
use serde::{Deserialize, Serialize};

/// Learned FLO in its natural representation.
#[derive(Debug, Clone, PartialEq)]
pub enum Estimate {
    Passive(PassiveFlo),
    Active(ActiveFlo),
}

impl Estimate {
    pub fn to_active(&self) -> ActiveFlo {
        match self {
            Estimate::Passive(p) => embed_passive(p),
            Estimate::Active(q) => q.clone(),
        }
    }

    pub fn to_json(&self) -> EstimateJson {
        match self {
            Estimate::Passive(p) => EstimateJson { kind: "passive".into(), matrix: MatrixJson::from_complex(p.matrix()) },
            Estimate::Active(q) => EstimateJson { kind: "active".into(), matrix: MatrixJson::from_real(q.matrix()) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateJson {
    pub kind: String,
    pub matrix: MatrixJson,
}

/// Achieved errors against the truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AchievedErrors {
    /// `‖U♯ − U‖` (passive) or `‖Q̂ − Q‖` (active).
    pub op_err: f64,
    /// `min_θ ‖U♯ − e^{iθ}U‖` (passive) or `min_± ‖Q̂ ∓ Q‖` (active).
    pub ph_err: f64,
    /// `argmin_θ ‖e^{iθ}U♯ − U‖` (passive only).
    pub theta_argmin: Option<f64>,
    /// Diamond distance via the dense oracle; absent above the cap.
    pub diamond_err: Option<f64>,
}

/// Compare an estimate with the truth. A passive estimate of an active
/// truth is compared in the `O(2n)` representation.
pub fn achieved_errors(est: &Estimate, truth: &ActiveFlo, oracle_cap: usize) -> Result<AchievedErrors> {
    let n = truth.n();
    let diamond = if n <= oracle_cap {
        Some(diamond_distance_with(&Oracle { cap: oracle_cap }, &est.to_active(), truth)?)
    } else {
        None
    };
    let passive_truth = match est {
        Estimate::Passive(_) => extract_passive(truth).ok(),
        Estimate::Active(_) => None,
    };
    let (op_err, ph_err, theta) = match (est, passive_truth) {
        (Estimate::Passive(p), Some(u)) => {
            let op = flo_matlin::op_norm_c(&(p.matrix() - u.matrix()));
            let (ph, th) = phase_argmin(u.matrix(), p.matrix())?;
            (op, ph, Some(th))
        }
        _ => {
            let q = est.to_active();
            let op = op_norm(&(q.matrix() - truth.matrix()));
            let flip = op_norm(&(q.matrix() + truth.matrix()));
            (op, op.min(flip), None)
        }
    };
    Ok(AchievedErrors { op_err, ph_err, theta_argmin: theta, diamond_err: diamond })
}

/// One bootstrap iteration as logged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub t: u32,
    pub p: u32,
    pub delta: f64,
    /// `‖Q_t − (Q V_t†)^{p_t}‖`.
    pub base_err: f64,
    pub cumulative_queries: u64,
}

pub fn trace_rows<E: FloElement>(steps: &[BootstrapStep<E>], truth: &ActiveFlo) -> Vec<TraceRow> {
    steps
        .iter()
        .map(|s| {
            let one = truth.compose(&s.v.adjoint().to_active());
            let mut target = ActiveFlo::identity(truth.n());
            for _ in 0..s.p {
                target = one.compose(&target);
            }
            TraceRow {
                t: s.t,
                p: s.p,
                delta: s.delta,
                base_err: op_norm(&(s.q.to_active().matrix() - target.matrix())),
                cumulative_queries: s.cumulative_queries,
            }
        })
        .collect()
}

/// Trace as CSV with header `t,p_t,delta_t,base_err,cumulative_queries`.
pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from("t,p_t,delta_t,base_err,cumulative_queries\n");
    for r in rows {
        out.push_str(&format!("{},{},{:e},{:e},{}\n", r.t, r.p, r.delta, r.base_err, r.cumulative_queries));
    }
    out
}

/// Structured output of one learner run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearnerReport {
    pub learner: String,
    pub n: usize,
    pub seed: u64,
    pub config: serde_json::Value,
    pub estimate: EstimateJson,
    pub ledger: QueryLedger,
    pub errors: AchievedErrors,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceRow>,
}

impl LearnerReport {
    /// Assemble a report; the only place the hidden FLO is read.
    pub fn build(
        learner: &str,
        bx: &FloBlackBox,
        estimate: &Estimate,
        config: serde_json::Value,
        seed: u64,
        oracle_cap: usize,
    ) -> Result<Self> {
        let truth = bx.reveal();
        Ok(Self {
            learner: learner.to_string(),
            n: truth.n(),
            seed,
            config,
            estimate: estimate.to_json(),
            ledger: crate::QueryAccess::ledger(bx).clone(),
            errors: achieved_errors(estimate, truth, oracle_cap)?,
            trace: Vec::new(),
        })
    }

    pub fn with_trace(mut self, trace: Vec<TraceRow>) -> Self {
        self.trace = trace;
        self
    }
}
