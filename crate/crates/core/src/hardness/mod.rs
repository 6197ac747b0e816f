//! Hardness of making a graph target-free, and the structure an optimal
//! fractional triangle cover forces on graphs that are hard.
//!
//! A graph is `(1−δ)`-hard when `τ ≥ (1−δ)·m/p`, with `p = k−1` for `K_k`
//! and `p = 2` for odd cycles: the trivial partition cover removes under
//! `m/p` edges, so `δ` measures how far the graph sits below that ceiling.

mod case;
mod cut3;
mod report;
mod rho;
mod theorem;
mod witness;

pub use case::{classify_case, Case, CaseLabel};
pub use cut3::{case3_cut, interior_violations, Case3Cut};
pub use report::{hardness_interval, hardness_delta, HardnessReport, UpperSource};
pub use rho::{rho_report, uniform_relaxation_value, RhoReport};
pub use theorem::{main_bound_rhs, operating_delta, verify_main_bound, Hypothesis, TheoremCheck};
pub use witness::{find_bipartite_witness, zero_weight_subgraph, BipartiteWitness, WitnessParams};

use std::time::Duration;

use crate::exact::Budget;
use crate::graph::DEFAULT_TARGET_CAP;
use crate::lp::LpOptions;

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub budget: Budget,
    pub seed: u64,
    pub lp: LpOptions,
    pub target_cap: usize,
    /// Skip the exact oracles entirely.
    pub skip_exact: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            seed: 0,
            lp: LpOptions { time_limit: Some(Duration::from_secs(60)), ..LpOptions::default() },
            target_cap: DEFAULT_TARGET_CAP,
            skip_exact: false,
        }
    }
}
