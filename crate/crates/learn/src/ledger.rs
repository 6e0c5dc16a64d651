use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Exact query accounting for one black box.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryLedger {
    pub total_queries: u64,
    pub per_stage: BTreeMap<String, u64>,
    pub experiments: u64,
    /// Largest gate count of a single experiment (known FLOs compiled, the
    /// hidden FLO counted by its compiled length per query, basis changes at
    /// their gate cap).
    pub gates_per_experiment_max: u64,
    /// Largest number of auxiliary modes used by any experiment.
    pub max_ancillas: usize,
    /// Set when experiments ran under the Choi (n-ancilla) resource model.
    pub choi_resource: bool,
}

impl QueryLedger {
    /// Record `shots` experiments with `queries` queries each.
    pub fn record(&mut self, stage: &str, queries: u64, shots: u64, gates: u64, ancillas: usize) {
        let q = queries * shots;
        self.total_queries += q;
        *self.per_stage.entry(stage.to_string()).or_insert(0) += q;
        self.experiments += shots;
        self.gates_per_experiment_max = self.gates_per_experiment_max.max(gates);
        self.max_ancillas = self.max_ancillas.max(ancillas);
    }

    /// Combine ledgers of boxes that ran on separate workers.
    pub fn merge(&mut self, other: &QueryLedger) {
        self.total_queries += other.total_queries;
        for (k, v) in &other.per_stage {
            *self.per_stage.entry(k.clone()).or_insert(0) += v;
        }
        self.experiments += other.experiments;
        self.gates_per_experiment_max = self.gates_per_experiment_max.max(other.gates_per_experiment_max);
        self.max_ancillas = self.max_ancillas.max(other.max_ancillas);
        self.choi_resource |= other.choi_resource;
    }

    pub fn stage_total(&self, stage: &str) -> u64 {
        self.per_stage.get(stage).copied().unwrap_or(0)
    }

    /// Total = Σ per-stage.
    pub fn is_consistent(&self) -> bool {
        self.per_stage.values().sum::<u64>() == self.total_queries
    }
}
