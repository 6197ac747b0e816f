//! Ground truth on small instances: minimum covers, maximum packings and
//! maximum cuts by exhaustive branch and bound.
//!
//! Searches stop at their [`Budget`] and hand back the best incumbent with
//! `optimal == false`; callers must not assert theorems against those.

mod cover;
mod maxcut;
mod packing;

pub use cover::{exact_cover, greedy_cover};
pub use maxcut::{max_cut_exact, MaxCut};
pub use packing::exact_packing;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::graph::{TargetFamily, TargetList};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Search-tree nodes.
    pub nodes: u64,
    /// Wall-clock milliseconds.
    pub millis: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { nodes: 20_000_000, millis: 120_000 }
    }
}

impl Budget {
    pub fn nodes(nodes: u64) -> Self {
        Self { nodes, ..Self::default() }
    }
}

/// Node counter with a lazily polled deadline.
pub(crate) struct Meter {
    nodes: u64,
    cap: u64,
    deadline: Instant,
    pub exhausted: bool,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Self {
            nodes: 0,
            cap: budget.nodes.max(1),
            deadline: Instant::now() + Duration::from_millis(budget.millis.max(1)),
            exhausted: false,
        }
    }

    /// Counts one node; false once the budget is spent.
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.cap || (self.nodes.is_multiple_of(1024) && Instant::now() > self.deadline) {
            self.exhausted = true;
        }
        !self.exhausted
    }

    pub fn count(&self) -> u64 {
        self.nodes
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSolution {
    pub family: TargetFamily,
    /// Sorted edge ids.
    pub edges: Vec<usize>,
    pub size: usize,
    /// True only when an exhaustive search completed within budget.
    pub optimal: bool,
    pub nodes: u64,
}

impl CoverSolution {
    pub fn new(family: TargetFamily, mut edges: Vec<usize>, optimal: bool, nodes: u64) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Self { family, size: edges.len(), edges, optimal, nodes }
    }

    /// Every target loses at least one edge.
    pub fn verify(&self, targets: &TargetList) -> bool {
        targets.family() == self.family && targets.unhit_by(&self.edges).is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingSolution {
    pub family: TargetFamily,
    /// Ids into the target list the packing was computed from.
    pub targets: Vec<usize>,
    /// Vertex sequence of each packed target.
    pub vertices: Vec<Vec<usize>>,
    pub size: usize,
    pub optimal: bool,
    pub nodes: u64,
}

impl PackingSolution {
    pub fn new(list: &TargetList, mut ids: Vec<usize>, optimal: bool, nodes: u64) -> Self {
        ids.sort_unstable();
        let vertices = ids.iter().map(|&t| list.get(t).vertices.clone()).collect();
        Self { family: list.family(), size: ids.len(), targets: ids, vertices, optimal, nodes }
    }

    /// Listed targets exist and are pairwise edge-disjoint.
    pub fn verify(&self, list: &TargetList) -> bool {
        if list.family() != self.family {
            return false;
        }
        let mut used = vec![false; list.num_edges()];
        for &t in &self.targets {
            if t >= list.len() {
                return false;
            }
            for &e in &list.get(t).edges {
                if std::mem::replace(&mut used[e], true) {
                    return false;
                }
            }
        }
        true
    }
}
