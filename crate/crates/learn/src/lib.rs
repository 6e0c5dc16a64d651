//! Learners for fermionic linear optics in the query model.
//!
//! The unknown FLO sits inside a [`FloBlackBox`]; learners only see it
//! through [`QueryAccess`], which simulates prepare–apply–measure runs on
//! the covariance-matrix simulator and charges every query to a
//! [`QueryLedger`].

mod active;
mod blackbox;
pub mod bootstrap;
mod choi;
mod error;
mod ledger;
mod passive;
pub mod report;
mod tomo;

pub use active::{active_tomo_base, ActiveBudget, ActiveEstimate};
pub use blackbox::{BoxView, ExperimentSpec, FloBlackBox, Item, Measurement, Outcome, QueryAccess, ResourceModel};
pub use bootstrap::{bootstrap, BootstrapConfig, BootstrapOutcome, FloElement, SyntheticBase};
pub use choi::{choi_budget, choi_tomo_base, ChoiEstimate};
pub use error::LearnError;
pub use ledger::QueryLedger;
pub use passive::{
    column_phases, pair_preparation, passive_tomo_base, phase_est, quadrature_means, PassiveBudget,
    PassiveEstimate, PassiveMode,
};
pub use report::{achieved_errors, AchievedErrors, Estimate, LearnerReport};
pub use tomo::{gaussian_tomo, phaseless_tomo, slater_mean, slater_tomo, GaussianEstimate};

pub type Result<T> = std::result::Result<T, LearnError>;
