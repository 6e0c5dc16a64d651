use crate::{LearnError, QueryLedger, Result};
use flo_florep::{compile_active, extend_modes, ActiveFlo, GateList};
use flo_gsim::{
    apply_flo, fock_basis_state, rdm_from_covariance, measure_fock, measure_modes, quadrature_rotation, GaussianState,
};
use flo_matlin::par::{map_blocks, Exec};
use flo_matlin::rng::{stream, Stream};
use flo_shadows::{so_shadows, un_shadows, MeanAccumulator, ShadowRun};
use serde::{Deserialize, Serialize};

/// One step of an interleaved circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Known(ActiveFlo),
    Query,
}

/// A circuit on the `n` system modes built from queries and known FLOs.
///
/// Items are listed in application order, so the unitary is
/// `G_L ⋯ G_2 G_1` for items `G_1, …, G_L`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxView {
    n: usize,
    items: Vec<Item>,
}

impl BoxView {
    /// The bare query `Φ(Q)`.
    pub fn query(n: usize) -> Self {
        Self { n, items: vec![Item::Query] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    fn check(&self, k: &ActiveFlo) {
        assert_eq!(k.n(), self.n, "known FLO on {} modes in a {}-mode view", k.n(), self.n);
    }

    /// `view · Φ(K)`: `K` acts first.
    pub fn compose_right(&self, k: &ActiveFlo) -> Self {
        self.check(k);
        let mut items = Vec::with_capacity(self.items.len() + 1);
        items.push(Item::Known(k.clone()));
        items.extend(self.items.iter().cloned());
        Self { n: self.n, items }
    }

    /// `Φ(K) · view`: `K` acts last.
    pub fn compose_left(&self, k: &ActiveFlo) -> Self {
        self.check(k);
        let mut items = self.items.clone();
        items.push(Item::Known(k.clone()));
        Self { n: self.n, items }
    }

    /// `view^p`.
    pub fn power(&self, p: u32) -> Self {
        let mut items = Vec::with_capacity(self.items.len() * p as usize);
        for _ in 0..p {
            items.extend(self.items.iter().cloned());
        }
        Self { n: self.n, items }
    }

    pub fn queries(&self) -> u64 {
        self.items.iter().filter(|i| matches!(i, Item::Query)).count() as u64
    }

    /// The one-body matrix of the whole view for a given hidden FLO.
    pub fn evaluate(&self, hidden: &ActiveFlo) -> ActiveFlo {
        self.items.iter().fold(ActiveFlo::identity(self.n), |acc, it| match it {
            Item::Known(k) => k.compose(&acc),
            Item::Query => hidden.compose(&acc),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measurement {
    Fock,
    /// `X = a₁†a_a† + a_a a₁` with `a` the ancilla (mode `n + 1`).
    QuadratureX,
    /// `Y = i(a₁†a_a† − a_a a₁)`.
    QuadratureY,
}

/// Prepare `|initial⟩`, apply `prep` then `view` (on the system modes), and
/// measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    /// Fock input on `n + ancillas` modes.
    pub initial: Vec<u8>,
    /// Known FLO on the full register, applied before the view.
    pub prep: Option<ActiveFlo>,
    pub view: BoxView,
    pub measurement: Measurement,
}

impl ExperimentSpec {
    pub fn fock(initial: Vec<u8>, view: BoxView) -> Self {
        Self { initial, prep: None, view, measurement: Measurement::Fock }
    }

    pub fn ancillas(&self) -> usize {
        self.initial.len().saturating_sub(self.view.n())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Fock(Vec<u8>),
    /// `b₁ + b_{n+1} − 1 ∈ {−1, 0, 1}`.
    Quadrature(i8),
}

/// Which auxiliary registers experiments may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResourceModel {
    /// At most one ancilla mode.
    Standard,
    /// Up to `n` ancilla modes, for Choi-state tomography.
    Choi,
}

/// Query interface granted to learners.
///
/// Every method charges the ledger exactly `shots × view.queries()`.
pub trait QueryAccess {
    fn n(&self) -> usize;
    fn resource(&self) -> ResourceModel;
    fn ledger(&self) -> &QueryLedger;
    /// Label subsequent queries for the per-stage breakdown.
    fn set_stage(&mut self, stage: &str);
    fn run_experiment(&mut self, spec: &ExperimentSpec, rng: &mut Stream) -> Result<Outcome>;
    /// `shots` Fock experiments each followed by a Haar `U(n)` basis change;
    /// returns the mean RDM estimate.
    fn run_un_shadows(&mut self, spec: &ExperimentSpec, shots: u64, seed: u64) -> Result<MeanAccumulator>;
    /// As [`QueryAccess::run_un_shadows`] with Haar `SO(2n)` rotations.
    fn run_so_shadows(&mut self, spec: &ExperimentSpec, shots: u64, seed: u64) -> Result<MeanAccumulator>;
    /// Mean quadrature outcome over `shots` experiments.
    fn run_quadrature(&mut self, spec: &ExperimentSpec, shots: u64, seed: u64) -> Result<f64>;
    /// Charge queries made by an external (synthetic) procedure on `view`.
    fn charge_external(&mut self, view: &BoxView, shots: u64);
}

/// Sealed hidden FLO with exact query accounting.
#[derive(Debug, Clone)]
pub struct FloBlackBox {
    hidden: ActiveFlo,
    hidden_gates: u64,
    ledger: QueryLedger,
    stage: String,
    resource: ResourceModel,
    exec: Exec,
    noiseless: bool,
}

impl FloBlackBox {
    pub fn new(hidden: ActiveFlo) -> Self {
        let hidden_gates = compile_active(&hidden).len() as u64;
        Self {
            hidden,
            hidden_gates,
            ledger: QueryLedger::default(),
            stage: "default".into(),
            resource: ResourceModel::Standard,
            exec: Exec::default(),
            noiseless: false,
        }
    }

    /// Grant the Choi resource model (up to `n` ancillas).
    pub fn with_choi_access(mut self) -> Self {
        self.resource = ResourceModel::Choi;
        self.ledger.choi_resource = true;
        self
    }

    /// Infinite-sample stub: shadow and quadrature runs return exact means
    /// while still charging every shot to the ledger.
    pub fn noiseless(mut self) -> Self {
        self.noiseless = true;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// Ground truth for post-hoc error evaluation. Not part of
    /// [`QueryAccess`], so learners cannot see it.
    pub fn reveal(&self) -> &ActiveFlo {
        &self.hidden
    }

    pub fn reset_ledger(&mut self) {
        let choi = self.ledger.choi_resource;
        self.ledger = QueryLedger { choi_resource: choi, ..Default::default() };
    }

    fn validate(&self, spec: &ExperimentSpec) -> Result<()> {
        let n = self.hidden.n();
        if spec.view.n() != n {
            return Err(LearnError::Spec(format!("view on {} modes, box on {n}", spec.view.n())));
        }
        if spec.initial.len() < n || spec.initial.iter().any(|&b| b > 1) {
            return Err(LearnError::Spec(format!("initial bitstring {:?}", spec.initial)));
        }
        let anc = spec.ancillas();
        let allowed = match self.resource {
            ResourceModel::Standard => 1,
            ResourceModel::Choi => n,
        };
        if anc > allowed {
            return Err(LearnError::Resource(format!("{anc} ancilla modes, at most {allowed} allowed")));
        }
        if let Some(p) = &spec.prep {
            if p.n() != spec.initial.len() {
                return Err(LearnError::Spec("preparation FLO size differs from the register".into()));
            }
        }
        if spec.measurement != Measurement::Fock && anc != 1 {
            return Err(LearnError::Spec("quadrature measurements need exactly one ancilla".into()));
        }
        Ok(())
    }

    /// State right before measurement, plus the experiment's gate count.
    fn prefix(&self, spec: &ExperimentSpec) -> Result<(GaussianState, u64)> {
        self.validate(spec)?;
        let nt = spec.initial.len();
        let n = self.hidden.n();
        let mut s = fock_basis_state(&spec.initial)?;
        let mut gates = 0u64;
        if let Some(p) = &spec.prep {
            s = apply_flo(&s, p)?;
            gates += compile_active(p).len() as u64;
        }
        let hidden = if nt == n { self.hidden.clone() } else { extend_modes(&self.hidden, nt) };
        for it in spec.view.items() {
            match it {
                Item::Query => {
                    s = apply_flo(&s, &hidden)?;
                    gates += self.hidden_gates;
                }
                Item::Known(k) => {
                    let k = if nt == n { k.clone() } else { extend_modes(k, nt) };
                    s = apply_flo(&s, &k)?;
                    gates += compile_active(&k).len() as u64;
                }
            }
        }
        Ok((s, gates))
    }

    /// Query-free runs leave the ledger untouched.
    fn charge(&mut self, spec: &ExperimentSpec, shots: u64, gates: u64) {
        if spec.view.queries() == 0 {
            return;
        }
        let stage = self.stage.clone();
        self.ledger.record(&stage, spec.view.queries(), shots, gates, spec.ancillas());
    }
}

fn quadrature_outcome(s: &GaussianState, n: usize, rng: &mut Stream) -> Result<i8> {
    let b = measure_modes(s, &[0, n], rng)?;
    Ok(b[0] as i8 + b[1] as i8 - 1)
}

fn quadrature_basis(m: Measurement, n: usize, nt: usize) -> ActiveFlo {
    let phi = match m {
        Measurement::QuadratureY => std::f64::consts::FRAC_PI_2,
        _ => 0.0,
    };
    quadrature_rotation(0, n, nt, phi)
}

impl QueryAccess for FloBlackBox {
    fn n(&self) -> usize {
        self.hidden.n()
    }

    fn resource(&self) -> ResourceModel {
        self.resource
    }

    fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    fn set_stage(&mut self, stage: &str) {
        self.stage = stage.to_string();
    }

    fn run_experiment(&mut self, spec: &ExperimentSpec, rng: &mut Stream) -> Result<Outcome> {
        let (s, gates) = self.prefix(spec)?;
        let n = self.hidden.n();
        let nt = spec.initial.len();
        let out = match spec.measurement {
            Measurement::Fock => Outcome::Fock(measure_fock(&s, rng)?),
            m => {
                let r = apply_flo(&s, &quadrature_basis(m, n, nt))?;
                Outcome::Quadrature(quadrature_outcome(&r, n, rng)?)
            }
        };
        let basis = if spec.measurement == Measurement::Fock { 0 } else { GateList::cap(nt) as u64 };
        self.charge(spec, 1, gates + basis);
        Ok(out)
    }

    fn run_un_shadows(&mut self, spec: &ExperimentSpec, shots: u64, seed: u64) -> Result<MeanAccumulator> {
        if spec.measurement != Measurement::Fock || spec.ancillas() != 0 {
            return Err(LearnError::Spec("shadow experiments measure the system register in Fock basis".into()));
        }
        let (s, gates) = self.prefix(spec)?;
        let mean = if self.noiseless {
            let d = rdm_from_covariance(&s).d;
            let mut acc = MeanAccumulator::complex(d.nrows(), d.ncols());
            acc.add_complex(&d)?;
            acc
        } else {
            un_shadows(&s, shots, ShadowRun::new(seed).with_exec(self.exec))?.mean
        };
        let n = self.hidden.n();
        self.charge(spec, shots, gates + (n * (n - 1) / 2 + n) as u64);
        Ok(mean)
    }

    fn run_so_shadows(&mut self, spec: &ExperimentSpec, shots: u64, seed: u64) -> Result<MeanAccumulator> {
        if spec.measurement != Measurement::Fock {
            return Err(LearnError::Spec("shadow experiments end in a Fock measurement".into()));
        }
        let (s, gates) = self.prefix(spec)?;
        let nt = spec.initial.len();
        let mean = if self.noiseless {
            let g = s.gamma();
            let mut acc = MeanAccumulator::real(g.nrows(), g.ncols());
            acc.add_real(g)?;
            acc
        } else {
            so_shadows(&s, shots, ShadowRun::new(seed).with_exec(self.exec))?.mean
        };
        self.charge(spec, shots, gates + GateList::cap(nt) as u64);
        Ok(mean)
    }

    fn run_quadrature(&mut self, spec: &ExperimentSpec, shots: u64, seed: u64) -> Result<f64> {
        if spec.measurement == Measurement::Fock {
            return Err(LearnError::Spec("quadrature run with a Fock measurement".into()));
        }
        if shots == 0 {
            return Err(LearnError::InvalidParameter("zero shots".into()));
        }
        let (s, gates) = self.prefix(spec)?;
        let n = self.hidden.n();
        let nt = spec.initial.len();
        let rotated = apply_flo(&s, &quadrature_basis(spec.measurement, n, nt))?;
        if self.noiseless {
            let d = rdm_from_covariance(&rotated).d;
            self.charge(spec, shots, gates + GateList::cap(nt) as u64);
            return Ok(d[(0, 0)].re + d[(n, n)].re - 1.0);
        }
        let sums = map_blocks(self.exec, shots, |range| -> Result<i64> {
            let mut acc = 0i64;
            for i in range {
                acc += i64::from(quadrature_outcome(&rotated, n, &mut stream(seed, i))?);
            }
            Ok(acc)
        });
        let mut total = 0i64;
        for s in sums {
            total += s?;
        }
        self.charge(spec, shots, gates + GateList::cap(nt) as u64);
        Ok(total as f64 / shots as f64)
    }

    fn charge_external(&mut self, view: &BoxView, shots: u64) {
        if view.queries() == 0 {
            return;
        }
        let stage = self.stage.clone();
        self.ledger.record(&stage, view.queries(), shots, 0, 0);
    }
}
