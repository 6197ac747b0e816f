use serde::Serialize;

use super::AnalysisOptions;
use crate::approx::{greedy_packing, kk_cover_process_on, local_partition, ProcessOptions};
use crate::error::{Error, Result};
use crate::exact::exact_cover;
use crate::graph::{density, enumerate_targets_with_cap, Graph, TargetFamily, TargetKind, TargetList};
use crate::lp::fractional_cover_with;
use crate::scalar::{ceil_to_u64, int, serde_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperSource {
    Exact,
    Incumbent,
    Process,
    Partition,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardnessReport {
    pub family: TargetFamily,
    pub n: usize,
    pub m: usize,
    #[serde(with = "serde_rational::decimal")]
    pub beta: Rational,
    /// `τ*` when the LP finished.
    #[serde(with = "serde_rational::decimal::opt")]
    pub tau_star: Option<Rational>,
    /// Certified lower bound on `τ`: exact value, else `max(⌈τ*⌉, packing found)`.
    pub tau_lower: usize,
    /// Size of the best cover found.
    pub tau_upper: usize,
    pub upper_source: UpperSource,
    pub tau_exact: Option<usize>,
    /// `δ` implied by `tau_upper`.
    #[serde(with = "serde_rational::decimal")]
    pub delta_lo: Rational,
    /// `δ` implied by `tau_lower`.
    #[serde(with = "serde_rational::decimal")]
    pub delta_hi: Rational,
    pub seed: u64,
}

impl HardnessReport {
    /// Whether `τ ≥ (1−δ)·m/p` is certain (`Some(true)`), refuted
    /// (`Some(false)`) or undecided by the bounds.
    pub fn is_hard(&self, delta: &Rational) -> Option<bool> {
        let need = (int(1) - delta.clone()) * int(self.m) / int(self.family.partite_parts());
        if int(self.tau_lower) >= need {
            Some(true)
        } else if int(self.tau_upper) < need {
            Some(false)
        } else {
            None
        }
    }
}

/// `δ = 1 − τ·p/m`, the hardness slack of a cover number; `1` on edgeless graphs.
pub fn hardness_delta(family: TargetFamily, tau: usize, m: usize) -> Rational {
    if m == 0 {
        return int(1);
    }
    int(1) - int(tau * family.partite_parts()) / int(m)
}

pub fn hardness_interval(g: &Graph, family: TargetFamily, opts: &AnalysisOptions) -> Result<HardnessReport> {
    let targets = enumerate_targets_with_cap(g, family, opts.target_cap)?;
    hardness_interval_on(g, &targets, opts)
}

fn lp_unavailable(err: &Error) -> bool {
    matches!(err, Error::LpTimeout(_) | Error::LpTooLarge { .. } | Error::IterationCap(_))
}

pub(crate) fn hardness_interval_on(
    g: &Graph,
    targets: &TargetList,
    opts: &AnalysisOptions,
) -> Result<HardnessReport> {
    let family = targets.family();
    let beta = density(g)?;
    let tau_star = match fractional_cover_with(g, targets, opts.lp) {
        Ok(cover) => Some(cover.value),
        Err(e) if lp_unavailable(&e) => None,
        Err(e) => return Err(e),
    };

    let partition = local_partition(g, family.partite_parts(), opts.seed);
    let mut upper = (partition.removed_count, UpperSource::Partition);
    if family.kind() == TargetKind::Clique {
        let process = ProcessOptions { seed: opts.seed, lp: opts.lp, target_cap: opts.target_cap };
        match kk_cover_process_on(g, targets, process) {
            Ok((cover, _)) if cover.size < upper.0 => upper = (cover.size, UpperSource::Process),
            Ok(_) => {}
            Err(e) if lp_unavailable(&e) => {}
            Err(e) => return Err(e),
        }
    }
    let mut tau_exact = None;
    if !opts.skip_exact {
        let sol = exact_cover(g, targets, opts.budget);
        if sol.optimal {
            tau_exact = Some(sol.size);
            upper = (sol.size, UpperSource::Exact);
        } else if sol.size < upper.0 {
            upper = (sol.size, UpperSource::Incumbent);
        }
    }

    let tau_lower = match tau_exact {
        Some(t) => t,
        None => {
            let from_lp = tau_star.as_ref().map_or(0, |t| ceil_to_u64(t) as usize);
            from_lp.max(greedy_packing(g, targets, opts.seed).size)
        }
    };
    if tau_lower > upper.0 {
        return Err(Error::Invariant(format!("τ lower bound {tau_lower} exceeds cover size {}", upper.0)));
    }
    Ok(HardnessReport {
        family,
        n: g.n(),
        m: g.m(),
        delta_lo: hardness_delta(family, upper.0, g.m()),
        delta_hi: hardness_delta(family, tau_lower, g.m()),
        beta,
        tau_star,
        tau_lower,
        tau_upper: upper.0,
        upper_source: upper.1,
        tau_exact,
        seed: opts.seed,
    })
}
