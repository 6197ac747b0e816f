use serde::Serialize;

use super::report::hardness_interval_on;
use super::{AnalysisOptions, HardnessReport};
use crate::approx::{complete_graph_decomposition, greedy_packing};
use crate::error::{Error, Result};
use crate::exact::exact_packing;
use crate::graph::{density, enumerate_targets_with_cap, Graph, TargetFamily};
use crate::scalar::{int, ratio, serde_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// The graph is certainly `(1−δ(β))`-hard.
    Met,
    /// The graph is certainly not.
    Unmet,
    /// The `τ` bounds straddle the hardness threshold.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NuSource {
    Exact,
    Decomposition,
    Incumbent,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub n: usize,
    pub m: usize,
    #[serde(with = "serde_rational::decimal")]
    pub beta: Rational,
    /// `(1 + β²/800)·m/4`
    #[serde(with = "serde_rational::decimal")]
    pub rhs: Rational,
    #[serde(with = "serde_rational::decimal::opt")]
    pub tau_star: Option<Rational>,
    pub tau_star_holds: Option<bool>,
    pub nu_lower: usize,
    pub nu_source: NuSource,
    pub nu_optimal: bool,
    pub nu_holds: bool,
    #[serde(with = "serde_rational::decimal")]
    pub delta_beta: Rational,
    pub hypothesis: Hypothesis,
    pub hardness: HardnessReport,
}

impl TheoremCheck {
    /// A hard instance whose exact quantities fall below the bound.
    pub fn is_counterexample(&self) -> bool {
        self.hypothesis == Hypothesis::Met
            && (self.tau_star_holds == Some(false) || (self.nu_optimal && !self.nu_holds))
    }
}

/// The operating hardness slack `δ(β) = β²/3200`.
pub fn operating_delta(beta: &Rational) -> Rational {
    beta.clone() * beta.clone() / int(3200)
}

pub fn main_bound_rhs(beta: &Rational, m: usize) -> Rational {
    (int(1) + beta.clone() * beta.clone() / int(800)) * int(m) / int(4)
}

pub fn verify_main_bound(g: &Graph, opts: &AnalysisOptions) -> Result<TheoremCheck> {
    let beta = density(g)?;
    if beta > ratio(1, 2) {
        return Err(Error::Invariant(format!("density {beta} above 1/2")));
    }
    let targets = enumerate_targets_with_cap(g, TargetFamily::TRIANGLE, opts.target_cap)?;
    let hardness = hardness_interval_on(g, &targets, opts)?;
    let rhs = main_bound_rhs(&beta, g.m());

    let (nu_lower, nu_source, nu_optimal) = if let Some(dec) = complete_graph_decomposition(g, &targets) {
        (dec.size, NuSource::Decomposition, true)
    } else {
        let greedy = greedy_packing(g, &targets, opts.seed);
        let exact = (!opts.skip_exact).then(|| exact_packing(g, &targets, opts.budget));
        match exact {
            Some(sol) if sol.optimal => (sol.size, NuSource::Exact, true),
            Some(sol) if sol.size > greedy.size => (sol.size, NuSource::Incumbent, false),
            _ => (greedy.size, NuSource::Greedy, false),
        }
    };

    let delta_beta = operating_delta(&beta);
    let hypothesis = match hardness.is_hard(&delta_beta) {
        Some(true) => Hypothesis::Met,
        Some(false) => Hypothesis::Unmet,
        None => Hypothesis::Undetermined,
    };
    Ok(TheoremCheck {
        n: g.n(),
        m: g.m(),
        tau_star_holds: hardness.tau_star.as_ref().map(|t| *t >= rhs),
        tau_star: hardness.tau_star.clone(),
        nu_holds: int(nu_lower) >= rhs,
        nu_lower,
        nu_source,
        nu_optimal,
        beta,
        rhs,
        delta_beta,
        hypothesis,
        hardness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    #[test]
    fn k6_is_below_the_hardness_threshold() {
        let g = generate(&GeneratorSpec::Complete { n: 6 }).unwrap();
        let check = verify_main_bound(&g, &AnalysisOptions::default()).unwrap();
        assert_eq!(check.beta, ratio(15, 36));
        assert_eq!(check.tau_star, Some(int(5)));
        // rhs = (1 + (15/36)²/800)·15/4, just above 15/4.
        assert_eq!(check.rhs, (int(1) + ratio(225, 1296) / int(800)) * ratio(15, 4));
        assert_eq!(check.tau_star_holds, Some(true));
        assert_eq!((check.nu_lower, check.nu_optimal), (4, true));
        assert!(check.nu_holds);
        assert_eq!(check.hardness.delta_lo, ratio(1, 5));
        assert_eq!(check.hypothesis, Hypothesis::Unmet);
        assert!(!check.is_counterexample());
    }

    #[test]
    fn triangle_free_fails_hypothesis() {
        let g = generate(&GeneratorSpec::CompleteMultipartite { parts: vec![4, 5] }).unwrap();
        let check = verify_main_bound(&g, &AnalysisOptions::default()).unwrap();
        assert_eq!(check.hypothesis, Hypothesis::Unmet);
        assert_eq!(check.hardness.delta_lo, int(1));
        assert_eq!(check.tau_star_holds, Some(false));
    }

    #[test]
    fn decomposition_is_used_for_steiner_orders() {
        let g = generate(&GeneratorSpec::Complete { n: 9 }).unwrap();
        let check = verify_main_bound(&g, &AnalysisOptions::default()).unwrap();
        assert_eq!((check.nu_lower, check.nu_source), (12, NuSource::Decomposition));
    }
}
