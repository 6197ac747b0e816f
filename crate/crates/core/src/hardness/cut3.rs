use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::BipartiteWitness;
use crate::approx::CutResult;
use crate::graph::{density, Graph, TargetFamily, TargetKind};
use crate::lp::ExactCover;
use crate::scalar::{int, serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case3Cut {
    pub cut: CutResult,
    pub cut_size: usize,
    pub e_ab: usize,
    pub e_inside_a: usize,
    pub e_inside_b: usize,
    /// Mean cut size over uniform splits of the remaining vertices.
    #[serde(with = "serde_rational::decimal")]
    pub expected: Rational,
    /// `m/2 + mβ²/1600`.
    #[serde(with = "serde_rational::decimal")]
    pub target: Rational,
    pub meets_target: bool,
    /// Interior paths that break the weight property; empty when it holds.
    pub interior_violations: Option<Vec<Vec<usize>>>,
    pub attempts: usize,
    pub seed: u64,
}

impl Case3Cut {
    /// True when the cut removes fewer than `(1−δ)m/2` edges, which shows
    /// the graph is not `(1−δ)`-hard.
    pub fn refutes_hardness(&self, m: usize, delta: &Rational) -> bool {
        int(self.cut.removed_count) < (int(1) - delta.clone()) * int(m) / int(2)
    }
}

/// Best of `retries` cuts `(A∪X, B∪Y)` over random splits `X ⊔ Y` of the
/// vertices outside the witness.
pub fn case3_cut(g: &Graph, cover: &ExactCover, witness: &BipartiteWitness, seed: u64, retries: usize) -> Case3Cut {
    let n = g.n();
    let beta = density(g).unwrap_or_else(|_| int(0));
    let m = g.m();
    // 0 = A, 1 = B, 2 = free
    let mut role = vec![2u8; n];
    for &x in &witness.a {
        role[x] = 0;
    }
    for &x in &witness.b {
        role[x] = 1;
    }
    let (mut e_ab, mut e_a, mut e_b) = (0, 0, 0);
    for &(x, y) in g.edges() {
        match (role[x], role[y]) {
            (0, 1) | (1, 0) => e_ab += 1,
            (0, 0) => e_a += 1,
            (1, 1) => e_b += 1,
            _ => {}
        }
    }
    let expected = int(e_ab) + int(m - e_ab - e_a - e_b) / int(2);
    let target = int(m) / int(2) + int(m) * beta.clone() * beta / int(1600);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<CutResult> = None;
    let mut attempts = 0;
    for _ in 0..retries.max(1) {
        attempts += 1;
        let parts: Vec<usize> = role
            .iter()
            .map(|&r| if r == 2 { rng.gen_range(0..2) } else { r as usize })
            .collect();
        let cut = CutResult::from_parts(g, 2, parts, false);
        if best.as_ref().is_none_or(|b| cut.removed_count < b.removed_count) {
            best = Some(cut);
        }
        if int(m - best.as_ref().unwrap().removed_count) >= target {
            break;
        }
    }
    let cut = best.expect("at least one attempt");
    let cut_size = m - cut.removed_count;
    Case3Cut {
        meets_target: int(cut_size) >= target,
        interior_violations: interior_violations(g, cover, witness, cover.family),
        cut,
        cut_size,
        e_ab,
        e_inside_a: e_a,
        e_inside_b: e_b,
        expected,
        target,
        attempts,
        seed,
    }
}

/// Paths of `k−2` edges inside one witness class whose edges all have
/// weight below `1/(k−2)`. For triangles this lists interior edges with
/// weight below one. `None` for cliques larger than triangles, where no
/// such property is claimed.
pub fn interior_violations(
    g: &Graph,
    cover: &ExactCover,
    witness: &BipartiteWitness,
    family: TargetFamily,
) -> Option<Vec<Vec<usize>>> {
    if family.kind() == TargetKind::Clique && !family.is_triangle() {
        return None;
    }
    let len = family.k() - 2;
    let theta = int(1) / int(len);
    let mut found = Vec::new();
    for class in [&witness.a, &witness.b] {
        let mut inside = vec![false; g.n()];
        for &x in class.iter() {
            inside[x] = true;
        }
        let light = |e: usize| cover.weights[e] < theta;
        for &start in class.iter() {
            let mut path = vec![start];
            let mut edges = Vec::new();
            if light_path(g, &inside, &light, len, &mut path, &mut edges) {
                found.push(edges);
            }
        }
    }
    found.sort();
    found.dedup();
    Some(found)
}

fn light_path(
    g: &Graph,
    inside: &[bool],
    light: &impl Fn(usize) -> bool,
    len: usize,
    path: &mut Vec<usize>,
    edges: &mut Vec<usize>,
) -> bool {
    if edges.len() == len {
        return true;
    }
    let last = *path.last().unwrap();
    for &(y, e) in g.incident(last) {
        if inside[y] && !path.contains(&y) && light(e) {
            path.push(y);
            edges.push(e);
            if light_path(g, inside, light, len, path, edges) {
                return true;
            }
            path.pop();
            edges.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};
    use crate::scalar::ratio;

    fn zero_cover(g: &Graph) -> ExactCover {
        let targets = crate::graph::enumerate_targets(g, TargetFamily::TRIANGLE).unwrap();
        crate::lp::fractional_cover(g, &targets).unwrap()
    }

    fn witness(a: Vec<usize>, b: Vec<usize>, g: &Graph) -> BipartiteWitness {
        let f_star: Vec<_> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(x, y)| (a.contains(&x) && b.contains(&y)) || (a.contains(&y) && b.contains(&x)))
            .collect();
        BipartiteWitness {
            u: b[0],
            w: a[0],
            size: f_star.len(),
            f_star,
            a,
            b,
            bound: int(0),
            meets_bound: true,
            sample_size: 0,
            core_vertices: 0,
            dominated: 0,
            attempts: 0,
            seed: 0,
        }
    }

    #[test]
    fn bipartite_graph_with_its_parts() {
        let g = generate(&GeneratorSpec::CompleteMultipartite { parts: vec![3, 4] }).unwrap();
        let w = witness(vec![0, 1, 2], vec![3, 4, 5, 6], &g);
        let cover = zero_cover(&g);
        let cut = case3_cut(&g, &cover, &w, 0, 4);
        assert_eq!(cut.cut_size, 12);
        assert_eq!(cut.cut.removed_count, 0);
        assert_eq!(cut.expected, int(12));
        assert!(cut.refutes_hardness(12, &int(0)));
    }

    #[test]
    fn ab_edges_always_cross() {
        let g = generate(&GeneratorSpec::Gnp { n: 14, p: 0.5, seed: 2 }).unwrap();
        let w = witness(vec![0, 1, 2, 3], vec![4, 5, 6], &g);
        for seed in 0..5 {
            let cut = case3_cut(&g, &zero_cover(&g), &w, seed, 1);
            assert!(cut.cut_size >= cut.e_ab);
            assert!(cut.cut.verify(&g));
            assert!(g.without_edges(&cut.cut.removed).is_bipartite());
        }
    }

    #[test]
    fn interior_edges_of_triangle_witness() {
        // Triangle 0-1-2 with 0,1 in A; the 0-1 edge is light.
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let targets = crate::graph::enumerate_targets(&g, TargetFamily::TRIANGLE).unwrap();
        let mut cover = crate::lp::fractional_cover(&g, &targets).unwrap();
        let w = witness(vec![0, 1], vec![3], &g);
        cover.weights = vec![ratio(1, 2), ratio(1, 2), int(0), int(0)];
        assert_eq!(interior_violations(&g, &cover, &w, TargetFamily::TRIANGLE), Some(vec![vec![0]]));
        cover.weights = vec![int(1), int(0), int(0), int(0)];
        assert_eq!(interior_violations(&g, &cover, &w, TargetFamily::TRIANGLE), Some(vec![]));
    }

    #[test]
    fn odd_cycle_paths() {
        // C5 family: forbidden interior paths have 3 light edges.
        let g = generate(&GeneratorSpec::Complete { n: 5 }).unwrap();
        let mut cover = crate::lp::fractional_cover(
            &g,
            &crate::graph::enumerate_targets(&g, TargetFamily::odd_cycle(5).unwrap()).unwrap(),
        )
        .unwrap();
        cover.weights = vec![int(0); 10];
        let w = witness(vec![0, 1, 2, 3], vec![4], &g);
        let c5 = TargetFamily::odd_cycle(5).unwrap();
        let found = interior_violations(&g, &cover, &w, c5).unwrap();
        assert!(!found.is_empty());
        assert!(found.iter().all(|p| p.len() == 3));
        cover.weights = vec![ratio(1, 3); 10];
        assert!(interior_violations(&g, &cover, &w, c5).unwrap().is_empty());
    }
}
