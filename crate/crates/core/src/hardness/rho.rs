//! Largest target-free subgraphs: `ρ = m − τ` and `ρ* = m − τ*`.

use serde::Serialize;

use super::report::hardness_interval_on;
use super::theorem::operating_delta;
use super::{AnalysisOptions, HardnessReport};
use crate::error::Result;
use crate::graph::{enumerate_targets_with_cap, Graph, TargetFamily, TargetList};
use crate::scalar::{int, ratio, serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoReport {
    pub m: usize,
    /// `m − τ_upper`
    pub rho_lo: usize,
    /// `m − τ_lower`
    pub rho_hi: usize,
    #[serde(with = "serde_rational::decimal::opt")]
    pub rho_star: Option<Rational>,
    /// `ρ*/ρ_hi`
    #[serde(with = "serde_rational::decimal::opt")]
    pub gap_lo: Option<Rational>,
    /// `ρ*/ρ_lo`
    #[serde(with = "serde_rational::decimal::opt")]
    pub gap_hi: Option<Rational>,
    /// `1/2 + m/(2ρ_lo)`, which follows from `τ ≤ 2τ*`.
    #[serde(with = "serde_rational::decimal::opt")]
    pub gap_certified: Option<Rational>,
    /// Bound from the hard/not-hard dichotomy at `δ(β)`; the weaker of the
    /// two when hardness is undecided.
    #[serde(with = "serde_rational::decimal")]
    pub gap_dichotomy: Rational,
    pub hard: Option<bool>,
    /// `ρ*` lower bound from the constant weighting `2/3`.
    #[serde(with = "serde_rational::decimal::opt")]
    pub uniform_value: Option<Rational>,
    pub hardness: HardnessReport,
}

/// Value `m·w` of the constant weighting `w` in the relaxation of `ρ`
/// (weights in `[0,1]`, each target keeps total weight at most its edge
/// count minus one), or `None` if infeasible.
pub fn uniform_relaxation_value(targets: &TargetList, weight: &Rational) -> Option<Rational> {
    if *weight < int(0) || *weight > int(1) {
        return None;
    }
    let per_target = targets.family().edges_per_target();
    if !targets.is_empty() && weight.clone() * int(per_target) > int(per_target - 1) {
        return None;
    }
    Some(weight.clone() * int(targets.num_edges()))
}

pub fn rho_report(g: &Graph, opts: &AnalysisOptions) -> Result<RhoReport> {
    let targets = enumerate_targets_with_cap(g, TargetFamily::TRIANGLE, opts.target_cap)?;
    let hardness = hardness_interval_on(g, &targets, opts)?;
    let m = g.m();
    let rho_lo = m - hardness.tau_upper;
    let rho_hi = m - hardness.tau_lower;
    let rho_star = hardness.tau_star.as_ref().map(|t| int(m) - t.clone());
    let over = |rho: usize| (rho > 0).then_some(()).and(rho_star.clone()).map(|r| r / int(rho));

    let delta = operating_delta(&hardness.beta);
    let hard = hardness.is_hard(&delta);
    let when_hard = ratio(3, 2) - hardness.beta.clone() * hardness.beta.clone() / int(1600);
    let when_easy = ratio(3, 2) - delta.clone() / (int(1) + delta);
    let gap_dichotomy = match hard {
        Some(true) => when_hard,
        Some(false) => when_easy,
        None => when_hard.max(when_easy),
    };
    Ok(RhoReport {
        m,
        rho_lo,
        rho_hi,
        gap_lo: over(rho_hi),
        gap_hi: over(rho_lo),
        gap_certified: (rho_lo > 0).then(|| ratio(1, 2) + int(m) / int(2 * rho_lo)),
        rho_star,
        gap_dichotomy,
        hard,
        uniform_value: uniform_relaxation_value(&targets, &ratio(2, 3)),
        hardness,
    })
}
