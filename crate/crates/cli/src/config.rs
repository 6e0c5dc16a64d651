//! Scenario configuration.

use anyhow::{bail, Context, Result};
use flo_learn::bootstrap::{EPS0_DEFAULT, EPS0_RELAXED};
use flo_learn::PassiveMode;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "FLOLEARN_OUT_DIR";

/// Largest mode count accepted by any scenario.
pub const MAX_MODES: usize = 64;

/// Largest dense-oracle cap accepted (the oracle stores `2^n × 2^n` unitaries).
pub const MAX_ORACLE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Slater,
    Gauss,
    Passive,
    Active,
    Choi,
    Phase,
    BootstrapSweep,
    Verify,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Slater => "slater",
            Scenario::Gauss => "gauss",
            Scenario::Passive => "passive",
            Scenario::Active => "active",
            Scenario::Choi => "choi",
            Scenario::Phase => "phase",
            Scenario::BootstrapSweep => "bootstrap-sweep",
            Scenario::Verify => "verify",
        }
    }
}

/// Base learner driven by `bootstrap-sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    Passive,
    Active,
    Choi,
    /// Exact answer times a random `ε₀`-perturbation (passive truth).
    SyntheticPassive,
    /// Exact answer times a random `ε₀`-perturbation (active truth).
    SyntheticActive,
}

impl BaseKind {
    pub fn name(self) -> &'static str {
        match self {
            BaseKind::Passive => "passive",
            BaseKind::Active => "active",
            BaseKind::Choi => "choi",
            BaseKind::SyntheticPassive => "synthetic-passive",
            BaseKind::SyntheticActive => "synthetic-active",
        }
    }

    pub fn is_passive(self) -> bool {
        matches!(self, BaseKind::Passive | BaseKind::SyntheticPassive)
    }
}

fn one() -> f64 {
    1.0
}

fn default_cap() -> usize {
    flo_foracle::DEFAULT_CAP
}

fn default_trials() -> usize {
    1
}

fn default_mode() -> PassiveMode {
    PassiveMode::Diamond
}

/// One experiment. Serialized verbatim into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub n: usize,
    /// Particle number (slater only).
    #[serde(default)]
    pub eta: Option<usize>,
    /// Target errors; each is run as its own batch of trials.
    pub eps: Vec<f64>,
    pub delta: f64,
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Multiplier on every sample-size formula.
    #[serde(default = "one")]
    pub constant_scale: f64,
    /// Multiplier on phase-estimation sample sizes; defaults to `constant_scale`.
    #[serde(default)]
    pub phase_scale: Option<f64>,
    /// Constant `C` of the single-particle sample size.
    #[serde(default)]
    pub single_particle_constant: Option<f64>,
    /// Largest `n` for which exact distances are computed densely.
    #[serde(default = "default_cap")]
    pub oracle_cap: usize,
    #[serde(default = "default_mode")]
    pub mode: PassiveMode,
    /// Base learner of `bootstrap-sweep`.
    #[serde(default)]
    pub base: Option<BaseKind>,
    /// Use `ε₀ = 0.1` instead of `1/50` in the bootstrap.
    #[serde(default)]
    pub relaxed: bool,
    /// Explicit bootstrap `ε₀`; overrides `relaxed`.
    #[serde(default)]
    pub eps0: Option<f64>,
    /// Phase scenario: add the active-stage perturbation `Z`.
    #[serde(default)]
    pub perturbed: bool,
    /// Ground-truth matrix file used for every trial instead of a random draw.
    #[serde(default)]
    pub truth: Option<PathBuf>,
    /// Record wall-clock time per trial (makes `results.csv` non-reproducible).
    #[serde(default)]
    pub wall_time: bool,
    #[serde(default, skip_serializing)]
    pub out_dir: Option<PathBuf>,
}

impl ScenarioConfig {
    /// Minimal config; remaining fields take their defaults.
    pub fn new(scenario: Scenario, n: usize, eps: Vec<f64>, delta: f64, seed: u64) -> Self {
        Self {
            scenario,
            n,
            eta: None,
            eps,
            delta,
            seed,
            trials: default_trials(),
            constant_scale: 1.0,
            phase_scale: None,
            single_particle_constant: None,
            oracle_cap: default_cap(),
            mode: default_mode(),
            base: None,
            relaxed: false,
            eps0: None,
            perturbed: false,
            truth: None,
            wall_time: false,
            out_dir: None,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn phase_scale(&self) -> f64 {
        self.phase_scale.unwrap_or(self.constant_scale)
    }

    pub fn eps0(&self) -> f64 {
        self.eps0.unwrap_or(if self.relaxed { EPS0_RELAXED } else { EPS0_DEFAULT })
    }

    /// Output directory: explicit, then the environment, then `./flolearn-out`.
    pub fn resolved_out_dir(&self) -> PathBuf {
        self.out_dir
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("flolearn-out"))
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, x: f64| -> Result<()> {
            if !(x > 0.0 && x < 1.0) {
                bail!("{name} = {x} must lie in (0, 1)");
            }
            Ok(())
        };
        let positive = |name: &str, x: f64| -> Result<()> {
            if !(x > 0.0 && x.is_finite()) {
                bail!("{name} = {x} must be positive and finite");
            }
            Ok(())
        };
        if self.scenario == Scenario::Verify {
            return Ok(());
        }
        if self.n == 0 || self.n > MAX_MODES {
            bail!("n = {} must lie in 1..={MAX_MODES}", self.n);
        }
        if self.eps.is_empty() {
            bail!("at least one eps value is required");
        }
        for &e in &self.eps {
            unit("eps", e)?;
        }
        unit("delta", self.delta)?;
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        positive("constant_scale", self.constant_scale)?;
        positive("phase_scale", self.phase_scale())?;
        if let Some(c) = self.single_particle_constant {
            positive("single_particle_constant", c)?;
        }
        if self.oracle_cap > MAX_ORACLE_CAP {
            bail!("oracle_cap = {} exceeds {MAX_ORACLE_CAP}", self.oracle_cap);
        }
        match self.scenario {
            Scenario::Slater => match self.eta {
                Some(eta) if eta >= 1 && eta <= self.n => {}
                Some(eta) => bail!("eta = {eta} must lie in 1..={}", self.n),
                None => bail!("slater needs eta"),
            },
            Scenario::BootstrapSweep => {
                if self.base.is_none() {
                    bail!("bootstrap-sweep needs a base learner");
                }
                let e0 = self.eps0();
                if !(e0 > 0.0 && e0 < 1.0 / (3.0 * std::f64::consts::PI)) {
                    bail!("eps0 = {e0} must lie in (0, 1/(3π))");
                }
            }
            _ => {}
        }
        if self.eta.is_some() && self.scenario != Scenario::Slater {
            bail!("eta only applies to the slater scenario");
        }
        Ok(())
    }
}
