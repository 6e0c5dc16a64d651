//! Experiment driver: scenario configs, ground-truth files, trial runs,
//! artifacts and invariant suites.

pub mod config;
pub mod output;
pub mod scenario;
pub mod truth;
pub mod verify;

pub use config::{BaseKind, Scenario, ScenarioConfig};
pub use output::{csv_string, write_artifacts};
pub use scenario::{run, Artifacts, ResultRow};
pub use truth::{export_ground_truth, import_ground_truth, ImportedTruth};
pub use verify::{run_suites, SuiteReport};
