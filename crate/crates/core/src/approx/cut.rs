use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::Graph;

/// A vertex partition and the edges it fails to cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutResult {
    pub num_parts: usize,
    /// Part index of every vertex.
    pub parts: Vec<usize>,
    /// Same-part edges, ascending. Deleting them leaves a `num_parts`-partite graph.
    pub removed: Vec<usize>,
    pub removed_count: usize,
    /// False only if the pass cap stopped the local search early.
    pub local_optimum: bool,
}

impl CutResult {
    pub fn from_parts(g: &Graph, num_parts: usize, parts: Vec<usize>, local_optimum: bool) -> Self {
        let removed: Vec<usize> =
            (0..g.m()).filter(|&e| { let (u, v) = g.edge(e); parts[u] == parts[v] }).collect();
        Self { num_parts, removed_count: removed.len(), parts, removed, local_optimum }
    }

    pub fn crossing(&self, g: &Graph) -> usize {
        g.m() - self.removed_count
    }

    /// Re-derives the removed set from the partition.
    pub fn verify(&self, g: &Graph) -> bool {
        self.parts.len() == g.n()
            && self.parts.iter().all(|&p| p < self.num_parts)
            && *self == Self::from_parts(g, self.num_parts, self.parts.clone(), self.local_optimum)
    }
}

/// Random `parts`-partition followed by first-improvement single-vertex moves
/// to the part holding the fewest neighbors. At a local optimum each vertex
/// keeps at most `deg/parts` same-part neighbors, so at most `m/parts` edges
/// are removed.
pub fn local_partition(g: &Graph, parts: usize, seed: u64) -> CutResult {
    assert!(parts >= 2);
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut part: Vec<usize> = (0..n).map(|_| rng.gen_range(0..parts)).collect();
    // count[v * parts + p]: neighbors of v currently in part p.
    let mut count = vec![0usize; n * parts];
    for &(u, v) in g.edges() {
        count[u * parts + part[v]] += 1;
        count[v * parts + part[u]] += 1;
    }
    let pass_cap = 100 * n.max(1);
    let mut converged = false;
    for _ in 0..pass_cap {
        let mut moved = false;
        for v in 0..n {
            let row = &count[v * parts..(v + 1) * parts];
            let best = (0..parts).min_by_key(|&p| (row[p], p)).unwrap();
            if row[best] < row[part[v]] {
                let old = part[v];
                part[v] = best;
                for w in g.neighbors(v) {
                    count[w * parts + old] -= 1;
                    count[w * parts + best] += 1;
                }
                moved = true;
            }
        }
        if !moved {
            converged = true;
            break;
        }
    }
    CutResult::from_parts(g, parts, part, converged)
}

/// Local max-cut bipartition; removes at most `⌊m/2⌋` edges.
pub fn bipartize(g: &Graph, seed: u64) -> CutResult {
    local_partition(g, 2, seed)
}

/// `(k-1)`-partition cover: the residue has no `K_k`; removes at most `⌊m/(k-1)⌋` edges.
pub fn kpartition_cover(g: &Graph, k: usize, seed: u64) -> CutResult {
    assert!(k >= 3, "kpartition_cover needs k >= 3");
    local_partition(g, k - 1, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_targets, generate, GeneratorSpec, TargetFamily};

    fn graph(spec: GeneratorSpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn bipartite_input_loses_nothing_when_coloring_is_found() {
        let g = graph(GeneratorSpec::CompleteMultipartite { parts: vec![3, 4] });
        let best = (0..20).map(|s| bipartize(&g, s).removed_count).min().unwrap();
        assert_eq!(best, 0);
        for s in 0..20 {
            assert!(bipartize(&g, s).removed_count <= g.m() / 2);
        }
    }

    #[test]
    fn k4_every_local_optimum_is_a_max_cut() {
        let g = graph(GeneratorSpec::Complete { n: 4 });
        for s in 0..32 {
            let cut = bipartize(&g, s);
            assert_eq!(cut.removed_count, 2);
            assert!(g.without_edges(&cut.removed).is_bipartite());
        }
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        for s in 0..8 {
            assert_eq!(bipartize(&g, s).removed_count, 0);
        }
    }

    #[test]
    fn k5_into_three_parts() {
        let g = graph(GeneratorSpec::Complete { n: 5 });
        for s in 0..32 {
            let cut = kpartition_cover(&g, 4, s);
            assert_eq!(cut.removed_count, 2);
            let rest = g.without_edges(&cut.removed);
            assert!(enumerate_targets(&rest, TargetFamily::clique(4).unwrap()).unwrap().is_empty());
            assert!(cut.verify(&g));
        }
    }

    #[test]
    fn empty_and_k4_two_parts() {
        assert_eq!(kpartition_cover(&Graph::empty(5), 4, 1).removed_count, 0);
        let g = graph(GeneratorSpec::Complete { n: 4 });
        let cut = kpartition_cover(&g, 3, 9);
        assert!(cut.removed_count <= 2);
        let rest = g.without_edges(&cut.removed);
        assert!(enumerate_targets(&rest, TargetFamily::TRIANGLE).unwrap().is_empty());
    }

    #[test]
    fn bounds_on_random_graphs() {
        for seed in 0..30 {
            let g = graph(GeneratorSpec::Gnp { n: 25, p: 0.4, seed });
            let cut = bipartize(&g, seed);
            assert!(cut.local_optimum);
            assert!(cut.removed_count <= g.m() / 2);
            assert!(g.without_edges(&cut.removed).is_bipartite());
            for k in [4, 5] {
                assert!(kpartition_cover(&g, k, seed).removed_count <= g.m() / (k - 1));
            }
        }
    }
}
