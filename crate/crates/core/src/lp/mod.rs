//! Fractional covers and packings, computed by one exact simplex solve.
//!
//! The packing LP `max Σg(t)  s.t.  Σ_{t∋e} g(t) ≤ 1` is solved directly
//! (its slack basis is feasible). The cover `f` is the optimal dual of the
//! same basis, so every returned cover/packing pair is complementary.

pub mod simplex;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, TargetFamily, TargetList};
use crate::scalar::{HybridRational, Rational, Scalar};

pub const DEFAULT_LP_SIZE_CAP: usize = 50_000;
pub const DEFAULT_ITERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy)]
pub struct LpOptions {
    /// Cap on targets + edges.
    pub size_cap: usize,
    pub iteration_cap: usize,
    pub time_limit: Option<Duration>,
}

impl Default for LpOptions {
    fn default() -> Self {
        Self { size_cap: DEFAULT_LP_SIZE_CAP, iteration_cap: DEFAULT_ITERATION_CAP, time_limit: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FractionalPacking<T = Rational> {
    pub family: TargetFamily,
    pub weights: Vec<T>,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FractionalCover<T = Rational> {
    pub family: TargetFamily,
    pub weights: Vec<T>,
    pub value: T,
    /// Optimal packing read off the same basis.
    pub dual_packing: FractionalPacking<T>,
    pub iterations: usize,
}

impl<T: Scalar> FractionalPacking<T> {
    /// Load `Σ_{t∋e} g(t)` on each edge.
    pub fn edge_loads(&self, targets: &TargetList) -> Vec<T> {
        (0..targets.num_edges())
            .map(|e| targets.incidence(e).iter().fold(T::zero(), |acc, &t| acc + self.weights[t].clone()))
            .collect()
    }

    pub fn is_feasible(&self, targets: &TargetList) -> bool {
        self.weights.len() == targets.len()
            && self.weights.iter().all(|w| !w.is_neg())
            && self.edge_loads(targets).iter().all(|l| !(l.clone() - T::one()).is_pos())
    }
}

impl<T: Scalar> FractionalCover<T> {
    /// Weight `Σ_{e∈t} f(e)` of target `t`.
    pub fn target_weight(&self, targets: &TargetList, t: usize) -> T {
        targets.get(t).edges.iter().fold(T::zero(), |acc, &e| acc + self.weights[e].clone())
    }

    pub fn is_feasible(&self, targets: &TargetList) -> bool {
        self.weights.len() == targets.num_edges()
            && self.weights.iter().all(|w| !w.is_neg())
            && (0..targets.len()).all(|t| !(self.target_weight(targets, t) - T::one()).is_neg())
    }
}

impl<T> FractionalPacking<T> {
    pub fn map<U>(self, f: impl Fn(T) -> U) -> FractionalPacking<U> {
        FractionalPacking { family: self.family, weights: self.weights.into_iter().map(&f).collect(), value: f(self.value) }
    }
}

impl<T> FractionalCover<T> {
    pub fn map<U>(self, f: impl Fn(T) -> U) -> FractionalCover<U> {
        FractionalCover {
            family: self.family,
            weights: self.weights.into_iter().map(&f).collect(),
            value: f(self.value),
            dual_packing: self.dual_packing.map(&f),
            iterations: self.iterations,
        }
    }
}

/// Exact-rational cover, the form every proof-facing check consumes.
pub type ExactCover = FractionalCover<Rational>;
pub type ExactPacking = FractionalPacking<Rational>;

fn check_instance(g: &Graph, targets: &TargetList) -> Result<()> {
    if targets.num_edges() != g.m() {
        return Err(Error::MismatchedInstance(format!(
            "target list indexes {} edges but the graph has {}",
            targets.num_edges(),
            g.m()
        )));
    }
    Ok(())
}

/// Solves the fractional cover/packing pair over any scalar.
pub fn solve_fractional<T: Scalar>(targets: &TargetList, opts: LpOptions) -> Result<FractionalCover<T>> {
    let size = targets.len() + targets.num_edges();
    if size > opts.size_cap {
        return Err(Error::LpTooLarge { size, cap: opts.size_cap });
    }
    let problem = simplex::Problem {
        rows: targets.num_edges(),
        columns: targets.targets().iter().map(|t| t.edges.iter().map(|&e| (e, T::one())).collect()).collect(),
        cost: vec![T::one(); targets.len()],
        rhs: vec![T::one(); targets.num_edges()],
    };
    let deadline = opts.time_limit.map(|d| Instant::now() + d);
    let sol = simplex::solve_until(&problem, opts.iteration_cap, deadline)?;
    let cover_value = sol.dual.iter().fold(T::zero(), |acc, y| acc + y.clone());
    if !(cover_value.clone() - sol.value.clone()).is_negligible() {
        return Err(Error::Invariant(format!(
            "duality gap after simplex: cover {cover_value} vs packing {}",
            sol.value
        )));
    }
    Ok(FractionalCover {
        family: targets.family(),
        weights: sol.dual,
        value: cover_value,
        dual_packing: FractionalPacking { family: targets.family(), weights: sol.primal, value: sol.value },
        iterations: sol.iterations,
    })
}

pub fn fractional_cover(g: &Graph, targets: &TargetList) -> Result<ExactCover> {
    fractional_cover_with(g, targets, LpOptions::default())
}

pub fn fractional_cover_with(g: &Graph, targets: &TargetList, opts: LpOptions) -> Result<ExactCover> {
    check_instance(g, targets)?;
    let fast: FractionalCover<HybridRational> = solve_fractional(targets, opts)?;
    Ok(fast.map(Rational::from))
}

pub fn fractional_packing(g: &Graph, targets: &TargetList) -> Result<ExactPacking> {
    fractional_cover(g, targets).map(|c| c.dual_packing)
}

/// `F₀ = {e : f(e) = 0}` and `F_θ = {e : f(e) ≥ θ}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeClassification<T = Rational> {
    #[serde(skip)]
    pub threshold: T,
    pub zero: Vec<usize>,
    pub at_least: Vec<usize>,
}

impl<T> EdgeClassification<T> {
    pub fn middle_count(&self, m: usize) -> usize {
        m - self.zero.len() - self.at_least.len()
    }
}

pub fn support_classes<T: Scalar>(cover: &FractionalCover<T>, threshold: T) -> Result<EdgeClassification<T>> {
    if !threshold.is_pos() || (threshold.clone() - T::one()).is_pos() {
        return Err(Error::BadThreshold(threshold.to_string()));
    }
    let mut zero = Vec::new();
    let mut at_least = Vec::new();
    for (e, w) in cover.weights.iter().enumerate() {
        if w.is_negligible() {
            zero.push(e);
        } else if !(w.clone() - threshold.clone()).is_neg() {
            at_least.push(e);
        }
    }
    Ok(EdgeClassification { threshold, zero, at_least })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlacknessReport {
    /// Edges with `f(e) > 0` whose packing load differs from one.
    pub violations: Vec<usize>,
    /// Targets with `g(t) > 0` whose cover weight differs from one.
    pub target_violations: Vec<usize>,
    pub satisfied: bool,
}

pub fn check_slackness<T: Scalar>(
    cover: &FractionalCover<T>,
    packing: &FractionalPacking<T>,
    targets: &TargetList,
) -> Result<SlacknessReport> {
    if cover.weights.len() != targets.num_edges() || packing.weights.len() != targets.len() {
        return Err(Error::MismatchedInstance(format!(
            "cover has {} weights, packing {}, instance has {} edges and {} targets",
            cover.weights.len(),
            packing.weights.len(),
            targets.num_edges(),
            targets.len()
        )));
    }
    let loads = packing.edge_loads(targets);
    let violations: Vec<usize> = (0..targets.num_edges())
        .filter(|&e| cover.weights[e].is_pos() && !(loads[e].clone() - T::one()).is_negligible())
        .collect();
    let target_violations: Vec<usize> = (0..targets.len())
        .filter(|&t| {
            packing.weights[t].is_pos() && !(cover.target_weight(targets, t) - T::one()).is_negligible()
        })
        .collect();
    let satisfied = violations.is_empty() && target_violations.is_empty();
    Ok(SlacknessReport { violations, target_violations, satisfied })
}
