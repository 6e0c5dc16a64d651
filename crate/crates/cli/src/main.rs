use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use flo_cli::config::{BaseKind, Scenario, ScenarioConfig, OUT_DIR_ENV};
use flo_cli::truth::{export_ground_truth, import_ground_truth, random_active, random_passive};
use flo_cli::{csv_string, run, run_suites, write_artifacts};
use flo_florep::{compile_active, compile_passive, embed_passive};
use flo_learn::PassiveMode;
use flo_matlin::rng::stream;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "flolearn", version, about = "Learning fermionic linear optics from queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Slater-determinant tomography from U(n) shadows.
    Slater(ScenarioArgs),
    /// Gaussian-state covariance tomography from SO(2n) shadows.
    Gauss(ScenarioArgs),
    /// Passive FLO learner.
    Passive(ScenarioArgs),
    /// Active FLO learner (one ancilla).
    Active(ScenarioArgs),
    /// Active FLO learner from the fermionic Choi state.
    Choi(ScenarioArgs),
    /// Global-phase estimation.
    Phase(ScenarioArgs),
    /// Bootstrap a base learner over a list of target errors.
    BootstrapSweep(ScenarioArgs),
    /// Run the scenario named in a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, env = OUT_DIR_ENV)]
        out_dir: Option<PathBuf>,
    },
    /// Run the invariant suites.
    Verify(VerifyArgs),
    /// Write a random ground truth as a matrix file.
    ExportTruth(ExportArgs),
    /// Compile a ground-truth file into gate JSON lines.
    Compile(CompileArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Diamond,
    Sector,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Passive,
    Active,
}

#[derive(Args)]
struct ScenarioArgs {
    /// JSON config; flags given on the command line override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    eta: Option<usize>,
    /// Comma-separated target errors.
    #[arg(long, value_delimiter = ',')]
    eps: Option<Vec<f64>>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    constant_scale: Option<f64>,
    #[arg(long)]
    phase_scale: Option<f64>,
    #[arg(long)]
    single_particle_constant: Option<f64>,
    #[arg(long)]
    oracle_cap: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    base: Option<BaseKind>,
    #[arg(long)]
    relaxed: bool,
    #[arg(long)]
    eps0: Option<f64>,
    #[arg(long)]
    perturbed: bool,
    /// Ground-truth matrix file (2n×2n orthogonal or n×n unitary).
    #[arg(long)]
    truth: Option<PathBuf>,
    #[arg(long)]
    wall_time: bool,
    #[arg(long, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Groups to run (1 identities, 2 oracle equivalence, 3 inequalities, 4 unbiasedness).
    #[arg(long, value_delimiter = ',')]
    group: Vec<u8>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "active")]
    kind: KindArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompileArgs {
    #[arg(long)]
    truth: PathBuf,
    #[arg(long)]
    n: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ScenarioArgs {
    fn into_config(self, scenario: Scenario) -> Result<ScenarioConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let cfg = ScenarioConfig::from_file(path)?;
                if cfg.scenario != scenario {
                    bail!("{} describes scenario {}, not {}", path.display(), cfg.scenario.name(), scenario.name());
                }
                cfg
            }
            None => {
                let n = self.n.context("--n is required without --config")?;
                let eps = self.eps.clone().context("--eps is required without --config")?;
                ScenarioConfig::new(scenario, n, eps, 0.1, 0)
            }
        };
        if let Some(n) = self.n {
            cfg.n = n;
        }
        if let Some(eps) = self.eps {
            cfg.eps = eps;
        }
        if self.eta.is_some() {
            cfg.eta = self.eta;
        }
        if let Some(d) = self.delta {
            cfg.delta = d;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(c) = self.constant_scale {
            cfg.constant_scale = c;
        }
        if self.phase_scale.is_some() {
            cfg.phase_scale = self.phase_scale;
        }
        if self.single_particle_constant.is_some() {
            cfg.single_particle_constant = self.single_particle_constant;
        }
        if let Some(c) = self.oracle_cap {
            cfg.oracle_cap = c;
        }
        if let Some(m) = self.mode {
            cfg.mode = match m {
                ModeArg::Diamond => PassiveMode::Diamond,
                ModeArg::Sector => PassiveMode::Sector,
            };
        }
        if self.base.is_some() {
            cfg.base = self.base;
        }
        cfg.relaxed |= self.relaxed;
        if self.eps0.is_some() {
            cfg.eps0 = self.eps0;
        }
        cfg.perturbed |= self.perturbed;
        if self.truth.is_some() {
            cfg.truth = self.truth;
        }
        cfg.wall_time |= self.wall_time;
        if self.out_dir.is_some() {
            cfg.out_dir = self.out_dir;
        }
        Ok(cfg)
    }
}

fn run_scenario(cfg: ScenarioConfig) -> Result<bool> {
    cfg.validate()?;
    let art = run(&cfg)?;
    for w in &art.warnings {
        eprintln!("warning: {w}");
    }
    for f in &art.failures {
        eprintln!("trial {} at eps {}: {}", f.trial, f.eps, f.error);
    }
    let dir = cfg.resolved_out_dir();
    let written = write_artifacts(&art, &dir)?;
    for s in &art.summary {
        println!(
            "{} n={} eps={}: {}/{} succeeded, median op_err {}, median queries {}",
            cfg.scenario.name(),
            s.n,
            s.eps,
            s.successes,
            s.trials,
            s.median_op_err.map_or("-".into(), |e| format!("{e:.4e}")),
            s.median_queries
        );
    }
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(true)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let reports = run_suites(&args.group, args.seed);
    let mut ok = true;
    for r in &reports {
        ok &= r.passed();
        println!(
            "{} group {} {:<26} cases {:>6} failures {:>4} worst slack {:>10.3e} ({:.0} ms){}",
            if r.passed() { "PASS" } else { "FAIL" },
            r.group,
            r.suite,
            r.cases,
            r.failures,
            r.worst_slack,
            r.elapsed_ms,
            r.error.as_deref().map(|e| format!(" error: {e}")).unwrap_or_default()
        );
    }
    if let Some(dir) = args.out_dir {
        std::fs::create_dir_all(&dir)?;
        let path = dir.join("verify.csv");
        std::fs::write(&path, csv_string(&reports)?)?;
        println!("wrote {}", path.display());
    }
    Ok(ok)
}

fn export(args: ExportArgs) -> Result<bool> {
    let mut rng = stream(args.seed, 0);
    let q = match args.kind {
        KindArg::Passive => embed_passive(&random_passive(args.n, &mut rng)?),
        KindArg::Active => random_active(args.n, &mut rng)?,
    };
    export_ground_truth(&args.out, &q)?;
    Ok(true)
}

fn compile(args: CompileArgs) -> Result<bool> {
    let truth = import_ground_truth(&args.truth, args.n)?;
    for w in &truth.warnings {
        eprintln!("warning: {w}");
    }
    let list = match flo_florep::extract_passive(&truth.q) {
        Ok(u) => compile_passive(&u),
        Err(_) => compile_active(&truth.q),
    };
    let text = list.to_json_lines();
    match args.out {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Slater(a) => run_scenario(a.into_config(Scenario::Slater)?),
        Command::Gauss(a) => run_scenario(a.into_config(Scenario::Gauss)?),
        Command::Passive(a) => run_scenario(a.into_config(Scenario::Passive)?),
        Command::Active(a) => run_scenario(a.into_config(Scenario::Active)?),
        Command::Choi(a) => run_scenario(a.into_config(Scenario::Choi)?),
        Command::Phase(a) => run_scenario(a.into_config(Scenario::Phase)?),
        Command::BootstrapSweep(a) => run_scenario(a.into_config(Scenario::BootstrapSweep)?),
        Command::Run { config, out_dir } => {
            let mut cfg = ScenarioConfig::from_file(&config)?;
            if out_dir.is_some() {
                cfg.out_dir = out_dir;
            }
            if cfg.scenario == Scenario::Verify {
                return verify(VerifyArgs { group: Vec::new(), seed: cfg.seed, out_dir: cfg.out_dir });
            }
            run_scenario(cfg)
        }
        Command::Verify(a) => verify(a),
        Command::ExportTruth(a) => export(a),
        Command::Compile(a) => compile(a),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
