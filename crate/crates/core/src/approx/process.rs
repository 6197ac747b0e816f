//! The `⌊k²/4⌋`-approximate `K_k`-cover.
//!
//! Starting from `G₀ = G`, solve the fractional `K_k`-cover LP on `Gᵢ`. While
//! some `K_k` has at least `C(k,2) − ⌊k²/4⌋` zero-weight edges, one of its
//! other edges carries weight `≥ 1/⌊k²/4⌋`; delete it and re-solve. At the
//! halting graph `G_t`, bipartize the positive-weight subgraph `P` and remove
//! the uncut edges `F`. Any surviving `K_k` would have at most `⌊k²/4⌋`
//! positive edges (a bipartite graph on `k` vertices has no more), hence
//! enough zero edges to have kept the process running.

use serde::Serialize;

use super::cut::bipartize;
use crate::error::{Error, Result};
use crate::exact::CoverSolution;
use crate::graph::{enumerate_targets_with_cap, Graph, TargetFamily, TargetList, DEFAULT_TARGET_CAP};
use crate::lp::{fractional_cover_with, ExactCover, LpOptions};
use crate::scalar::{int, serde_rational, Rational};

#[derive(Debug, Clone, Copy)]
pub struct ProcessOptions {
    pub seed: u64,
    pub lp: LpOptions,
    pub target_cap: usize,
}

impl Default for ProcessOptions {
    fn default() -> Self {
        Self { seed: 0, lp: LpOptions::default(), target_cap: DEFAULT_TARGET_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deletion {
    pub edge: usize,
    #[serde(with = "serde_rational")]
    pub weight: Rational,
    /// `τ*_k(Gᵢ)` of the graph the edge was deleted from.
    #[serde(with = "serde_rational")]
    pub tau_star: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProcessTrace {
    pub k: usize,
    pub mantel_factor: usize,
    #[serde(with = "serde_rational")]
    pub initial_tau_star: Rational,
    pub deletions: Vec<Deletion>,
    pub t: usize,
    /// Fraction of `G_t`'s edges with zero weight under its final LP.
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    /// Edges of `P`: positive weight in `G_t`.
    pub positive_edges: Vec<usize>,
    /// `F`: edges of `P` left uncut by the bipartition.
    pub bipartization: Vec<usize>,
    pub cover_size: usize,
    /// `cover_size / τ*_k(G)`, absent when `τ*_k(G) = 0`.
    #[serde(with = "serde_rational::opt")]
    pub certified_ratio: Option<Rational>,
    /// Edge weights of the final LP on `G_t` (zero on deleted edges).
    #[serde(with = "serde_rational::vec")]
    pub final_weights: Vec<Rational>,
}

/// Lowest-index target with at least `needed` zero-weight edges.
fn qualifying_target(targets: &TargetList, cover: &ExactCover, needed: usize) -> Option<usize> {
    (0..targets.len()).find(|&t| {
        targets.get(t).edges.iter().filter(|&&e| cover.weights[e] == int(0)).count() >= needed
    })
}

/// Zero-weight edge count a `K_k` needs to keep the process running.
pub fn zero_edge_trigger(family: TargetFamily) -> usize {
    family.edges_per_target() - family.mantel_factor()
}

/// Checks the halting condition of `G_t` against its LP: no surviving target
/// has `trigger` or more zero-weight edges.
pub fn is_halting_state(targets: &TargetList, weights: &[Rational]) -> bool {
    let trigger = zero_edge_trigger(targets.family());
    targets
        .targets()
        .iter()
        .all(|t| t.edges.iter().filter(|&&e| weights[e] == int(0)).count() < trigger)
}

pub fn kk_cover_process(g: &Graph, k: usize, opts: ProcessOptions) -> Result<(CoverSolution, ProcessTrace)> {
    let family = TargetFamily::clique(k)?;
    let all = enumerate_targets_with_cap(g, family, opts.target_cap)?;
    kk_cover_process_on(g, &all, opts)
}

/// As [`kk_cover_process`] with the `K_k` list already enumerated.
pub fn kk_cover_process_on(
    g: &Graph,
    all: &TargetList,
    opts: ProcessOptions,
) -> Result<(CoverSolution, ProcessTrace)> {
    let family = all.family();
    if family.kind() != crate::graph::TargetKind::Clique {
        return Err(Error::InvalidFamily(format!("the deletion process needs cliques, got {family}")));
    }
    let q = family.mantel_factor();
    let trigger = zero_edge_trigger(family);
    let step_floor = Rational::new(1.into(), q.into());

    let mut deleted = vec![false; g.m()];
    let mut deletions = Vec::new();
    let mut initial_tau_star = None;
    let final_cover = loop {
        let (current, _) = all.surviving(&deleted);
        let cover = fractional_cover_with(g, &current, opts.lp)?;
        initial_tau_star.get_or_insert_with(|| cover.value.clone());
        let Some(t) = qualifying_target(&current, &cover, trigger) else { break cover };
        let edge = current
            .get(t)
            .edges
            .iter()
            .copied()
            .max_by(|&a, &b| cover.weights[a].cmp(&cover.weights[b]).then(b.cmp(&a)))
            .expect("targets have edges");
        let weight = cover.weights[edge].clone();
        if weight < step_floor {
            return Err(Error::Invariant(format!(
                "qualifying K{} has no edge of weight >= 1/{q} (max {weight})",
                family.k()
            )));
        }
        deleted[edge] = true;
        deletions.push(Deletion { edge, weight, tau_star: cover.value });
    };
    let initial_tau_star = initial_tau_star.expect("at least one LP solve");

    let alive = deleted.iter().filter(|d| !**d).count();
    let zero_alive = (0..g.m()).filter(|&e| !deleted[e] && final_cover.weights[e] == int(0)).count();
    let alpha = if alive == 0 { int(0) } else { Rational::new(zero_alive.into(), alive.into()) };

    let (positive, origin) = g.spanning_subgraph(|e| !deleted[e] && final_cover.weights[e] > int(0));
    let cut = bipartize(&positive, opts.seed);
    let bipartization: Vec<usize> = cut.removed.iter().map(|&e| origin[e]).collect();

    let mut cover_edges: Vec<usize> = deletions.iter().map(|d| d.edge).collect();
    cover_edges.extend(&bipartization);
    let cover = CoverSolution::new(family, cover_edges, false, 0);

    if !cover.verify(all) {
        return Err(Error::Invariant(format!("process output leaves a {family} intact")));
    }
    if int(cover.size) > int(q) * initial_tau_star.clone() {
        return Err(Error::Invariant(format!(
            "cover of size {} exceeds {q}·τ* = {}",
            cover.size,
            int(q) * initial_tau_star.clone()
        )));
    }
    let certified_ratio =
        (initial_tau_star != int(0)).then(|| int(cover.size) / initial_tau_star.clone());
    let trace = ProcessTrace {
        k: family.k(),
        mantel_factor: q,
        initial_tau_star,
        t: deletions.len(),
        deletions,
        alpha,
        positive_edges: origin,
        bipartization,
        cover_size: cover.size,
        certified_ratio,
        final_weights: final_cover.weights,
    };
    Ok((cover, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_targets, generate, GeneratorSpec};
    use crate::scalar::ratio;

    fn run(spec: GeneratorSpec, k: usize) -> (Graph, CoverSolution, ProcessTrace) {
        let g = generate(&spec).unwrap();
        let (cover, trace) = kk_cover_process(&g, k, ProcessOptions::default()).unwrap();
        (g, cover, trace)
    }

    #[test]
    fn k4_triangles() {
        let (g, cover, trace) = run(GeneratorSpec::Complete { n: 4 }, 3);
        assert_eq!(trace.initial_tau_star, int(2));
        assert!(cover.size <= 4);
        let t = enumerate_targets(&g, TargetFamily::TRIANGLE).unwrap();
        assert!(cover.verify(&t));
        assert!(trace.deletions.iter().all(|d| d.weight >= ratio(1, 2)));
    }

    #[test]
    fn triangle_free_halts_immediately() {
        let (_, cover, trace) = run(GeneratorSpec::Cycle { n: 8 }, 3);
        assert_eq!((cover.size, trace.t), (0, 0));
        assert!(trace.positive_edges.is_empty());
        assert_eq!(trace.certified_ratio, None);
    }

    #[test]
    fn k5_four_cliques() {
        let (g, cover, trace) = run(GeneratorSpec::Complete { n: 5 }, 4);
        let t = enumerate_targets(&g, TargetFamily::clique(4).unwrap()).unwrap();
        assert!(cover.verify(&t));
        assert_eq!(trace.mantel_factor, 4);
        assert!(int(cover.size) <= int(4) * trace.initial_tau_star.clone());
    }

    #[test]
    fn trace_invariants_on_random_graphs() {
        for seed in 0..10 {
            for k in [3, 4] {
                let (g, cover, trace) = run(GeneratorSpec::Gnp { n: 10, p: 0.7, seed }, k);
                let family = TargetFamily::clique(k).unwrap();
                let all = enumerate_targets(&g, family).unwrap();
                assert!(cover.verify(&all));
                let floor = ratio(1, family.mantel_factor() as i64);
                assert!(trace.deletions.iter().all(|d| d.weight >= floor));
                // τ* drops by at least the deleted weight at every step.
                for pair in trace.deletions.windows(2) {
                    assert!(pair[1].tau_star <= pair[0].tau_star.clone() - pair[0].weight.clone());
                }
                let mut gone = vec![false; g.m()];
                trace.deletions.iter().for_each(|d| gone[d.edge] = true);
                let (rest, _) = all.surviving(&gone);
                assert!(is_halting_state(&rest, &trace.final_weights));
                assert!(trace.alpha >= int(0) && trace.alpha <= int(1));
            }
        }
    }

    #[test]
    fn rejects_cycle_family() {
        let g = generate(&GeneratorSpec::Complete { n: 5 }).unwrap();
        let t = enumerate_targets(&g, TargetFamily::odd_cycle(5).unwrap()).unwrap();
        assert!(matches!(kk_cover_process_on(&g, &t, ProcessOptions::default()), Err(Error::InvalidFamily(_))));
    }
}
