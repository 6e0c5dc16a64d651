//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Learner scenarios use the calibrated sample-size scales below; the
//! tomography and phase scenarios use unscaled constants.

use flo_cli::config::{BaseKind, Scenario, ScenarioConfig};
use flo_cli::scenario::{run, Artifacts};
use flo_cli::verify::{run_suites, SuiteReport};
use flo_cli::write_artifacts;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const SEED: u64 = 2024;

const PASSIVE_SCALE: f64 = 2.4e-11;
const PASSIVE_PHASE_SCALE: f64 = 0.1;
const ACTIVE_SCALE: f64 = 3e-8;
const ACTIVE_PHASE_SCALE: f64 = 0.05;
const CHOI_SCALE: f64 = 0.25;
const BOOTSTRAP_SCALE: f64 = 3e-12;
const BOOTSTRAP_PHASE_SCALE: f64 = 0.05;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn cfg(scenario: Scenario, n: usize, eps: &[f64], trials: usize) -> ScenarioConfig {
    let mut c = ScenarioConfig::new(scenario, n, eps.to_vec(), 0.1, SEED);
    c.trials = trials;
    c
}

fn execute(c: &ScenarioConfig) -> Result<Artifacts, String> {
    c.validate().map_err(|e| format!("{e:#}"))?;
    run(c).map_err(|e| format!("{e:#}"))
}

fn suites(group: u8, per_suite: Option<Duration>, total: Duration) -> Verdict {
    let start = Instant::now();
    let reports = run_suites(&[group], SEED);
    let elapsed = start.elapsed();
    let bad: Vec<&SuiteReport> = reports.iter().filter(|r| !r.passed()).collect();
    let slow: Vec<&SuiteReport> = reports
        .iter()
        .filter(|r| per_suite.is_some_and(|d| r.elapsed_ms > d.as_secs_f64() * 1e3))
        .collect();
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    let mut detail = format!("{} suites, {cases} cases, {:.1} s", reports.len(), elapsed.as_secs_f64());
    for r in &bad {
        detail += &format!("; {} failed {}/{} (worst slack {:.3e})", r.suite, r.failures, r.cases, r.worst_slack);
        if let Some(e) = &r.error {
            detail += &format!(" error: {e}");
        }
    }
    for r in &slow {
        detail += &format!("; {} took {:.0} ms", r.suite, r.elapsed_ms);
    }
    verdict(bad.is_empty() && slow.is_empty() && elapsed <= total && !reports.is_empty(), detail)
}

/// Success fraction of every ε batch at least `min`.
fn fractions(art: &Artifacts, min: f64) -> (bool, String) {
    let ok = art.summary.iter().all(|s| s.success_fraction >= min);
    let text = art
        .summary
        .iter()
        .map(|s| format!("{} ε={} {}/{}", s.scenario, s.eps, s.successes, s.trials))
        .collect::<Vec<_>>()
        .join(", ");
    (ok, text)
}

fn criterion5() -> Verdict {
    let start = Instant::now();
    let mut slater = cfg(Scenario::Slater, 6, &[0.25], 50);
    slater.eta = Some(2);
    let gauss = cfg(Scenario::Gauss, 4, &[0.5], 50);
    let mut pass = true;
    let mut parts = Vec::new();
    for c in [slater, gauss] {
        match execute(&c) {
            Ok(art) => {
                let (ok, text) = fractions(&art, 0.9);
                pass &= ok;
                parts.push(format!("{text} (N = {})", art.rows[0].queries));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{}: {e}", c.scenario.name()));
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed <= Duration::from_secs(600);
    verdict(pass, format!("{}; {:.0} s", parts.join("; "), elapsed.as_secs_f64()))
}

fn criterion6() -> Verdict {
    let start = Instant::now();
    let eps = [0.25, 0.2];
    let mut passive = cfg(Scenario::Passive, 4, &eps, 25);
    passive.constant_scale = PASSIVE_SCALE;
    passive.phase_scale = Some(PASSIVE_PHASE_SCALE);
    let mut active = cfg(Scenario::Active, 3, &eps, 25);
    active.constant_scale = ACTIVE_SCALE;
    active.phase_scale = Some(ACTIVE_PHASE_SCALE);
    let mut choi = cfg(Scenario::Choi, 4, &eps, 25);
    choi.constant_scale = CHOI_SCALE;
    let mut pass = true;
    let mut parts = Vec::new();
    for c in [passive, active, choi] {
        match execute(&c) {
            Ok(art) => {
                let (ok, text) = fractions(&art, 0.8);
                let diamond_ok = art
                    .rows
                    .iter()
                    .filter(|r| r.op_err.is_some())
                    .all(|r| r.diamond_err.is_some_and(|d| d <= r.n as f64 * r.eps));
                pass &= ok && diamond_ok;
                parts.push(if diamond_ok { text } else { format!("{text} [diamond > nε]") });
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{}: {e}", c.scenario.name()));
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed <= Duration::from_secs(1800);
    verdict(pass, format!("{}; {:.0} s", parts.join(", "), elapsed.as_secs_f64()))
}

fn criterion7() -> Verdict {
    let start = Instant::now();
    let mut sweep = cfg(Scenario::BootstrapSweep, 4, &[0.1, 0.05, 0.025], 20);
    sweep.base = Some(BaseKind::Passive);
    sweep.relaxed = true;
    sweep.constant_scale = BOOTSTRAP_SCALE;
    sweep.phase_scale = Some(BOOTSTRAP_PHASE_SCALE);
    let mut pass = true;
    let mut parts = Vec::new();
    match execute(&sweep) {
        Ok(art) => {
            let (ok, text) = fractions(&art, 0.8);
            let ratios: Vec<f64> = art.sweep.iter().filter_map(|s| s.ratio).collect();
            let ratios_ok = ratios.len() == 2 && ratios.iter().all(|r| (1.8..=2.2).contains(r));
            pass &= ok && ratios_ok;
            parts.push(format!("{text}; ratios {ratios:.3?}"));
        }
        Err(e) => {
            pass = false;
            parts.push(format!("sweep: {e}"));
        }
    }
    for base in [BaseKind::SyntheticPassive, BaseKind::SyntheticActive] {
        let mut syn = cfg(Scenario::BootstrapSweep, 4, &[1e-3], 20);
        syn.base = Some(base);
        match execute(&syn) {
            Ok(art) => {
                let s = &art.sweep[0];
                let all = art.rows.iter().all(|r| r.success && r.op_err.is_some_and(|e| e <= 1e-3));
                let ok = all && s.iterations == 10;
                pass &= ok;
                parts.push(format!("{} ε=1e-3: T={} {}/20", base.name(), s.iterations, art.summary[0].successes));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{}: {e}", base.name()));
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed <= Duration::from_secs(600);
    verdict(pass, format!("{}; {:.0} s", parts.join("; "), elapsed.as_secs_f64()))
}

fn criterion8() -> Verdict {
    let plain = cfg(Scenario::Phase, 4, &[0.1], 100);
    let mut perturbed = cfg(Scenario::Phase, 4, &[0.1], 100);
    perturbed.perturbed = true;
    let mut pass = true;
    let mut parts = Vec::new();
    for (label, c) in [("phase", plain), ("perturbed", perturbed)] {
        match execute(&c) {
            Ok(art) => {
                let (ok, _) = fractions(&art, 0.9);
                let per_quadrature = art.rows[0].queries / 2;
                pass &= ok && per_quadrature == 4301;
                parts.push(format!("{label} {}/100 (N = {per_quadrature})", art.summary[0].successes));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{label}: {e}"));
            }
        }
    }
    verdict(pass, parts.join(", "))
}

fn criterion9() -> Verdict {
    let mut passive = cfg(Scenario::Passive, 3, &[0.25], 4);
    passive.constant_scale = PASSIVE_SCALE;
    passive.phase_scale = Some(PASSIVE_PHASE_SCALE);
    let mut slater = cfg(Scenario::Slater, 4, &[0.3], 4);
    slater.eta = Some(2);
    let mut sweep = cfg(Scenario::BootstrapSweep, 3, &[0.1, 0.05], 2);
    sweep.base = Some(BaseKind::SyntheticActive);
    let mut pass = true;
    let mut parts = Vec::new();
    for c in [passive, slater, sweep] {
        let outcome = (|| -> Result<bool, String> {
            let dirs = [tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?];
            let mut texts = Vec::new();
            for d in &dirs {
                write_artifacts(&execute(&c)?, d.path()).map_err(|e| format!("{e:#}"))?;
                texts.push(std::fs::read(d.path().join("results.csv")).map_err(|e| e.to_string())?);
            }
            Ok(texts[0] == texts[1] && !texts[0].is_empty())
        })();
        match outcome {
            Ok(same) => {
                pass &= same;
                parts.push(format!("{} {}", c.scenario.name(), if same { "identical" } else { "differs" }));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{}: {e}", c.scenario.name()));
            }
        }
    }
    verdict(pass, parts.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Verdict); 9] = [
        (1, "exact identities", || suites(1, Some(Duration::from_secs(1)), Duration::from_secs(5))),
        (2, "oracle equivalence", || suites(2, None, Duration::from_secs(120))),
        (3, "inequality suites", || suites(3, Some(Duration::from_secs(120)), Duration::from_secs(840))),
        (4, "shadow unbiasedness", || suites(4, None, Duration::from_secs(120))),
        (5, "state tomography", criterion5),
        (6, "end-to-end learners", criterion6),
        (7, "Heisenberg scaling", criterion7),
        (8, "phase estimation", criterion8),
        (9, "reproducible CSV", criterion9),
    ];
    let mut failed = 0;
    for (k, name, f) in criteria {
        let v = f();
        failed += usize::from(!v.pass);
        println!("criterion {k} {name}: {} ({})", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
