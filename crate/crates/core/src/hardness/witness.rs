//! The dominating-sample construction of a dense induced bipartite subgraph
//! inside the zero-weight graph `H`.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{find_target, Graph, TargetFamily};
use crate::lp::ExactCover;
use crate::scalar::{ceil_to_u64, int, ratio, serde_rational, Rational};

#[derive(Debug, Clone, Copy)]
pub struct WitnessParams<'a> {
    /// Density of the original graph; fixes the reference `m = βn²`.
    pub beta: &'a Rational,
    pub seed: u64,
    pub retries: usize,
    pub family: TargetFamily,
}

impl<'a> WitnessParams<'a> {
    pub fn new(beta: &'a Rational, seed: u64) -> Self {
        Self { beta, seed, retries: 32, family: TargetFamily::TRIANGLE }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipartiteWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// Common neighbor of `a`.
    pub u: usize,
    /// Common neighbor of `b`.
    pub w: usize,
    /// Edges of `H` between `a` and `b`, as vertex pairs.
    pub f_star: Vec<(usize, usize)>,
    pub size: usize,
    /// `β²m/500`.
    #[serde(with = "serde_rational::decimal")]
    pub bound: Rational,
    pub meets_bound: bool,
    pub sample_size: usize,
    /// Vertices left after peeling.
    pub core_vertices: usize,
    /// Core vertices with a neighbor in the sample.
    pub dominated: usize,
    pub attempts: usize,
    pub seed: u64,
}

impl BipartiteWitness {
    /// Re-checks every structural claim against `h`.
    pub fn verify(&self, h: &Graph, family: TargetFamily) -> bool {
        let mut side = vec![0u8; h.n()];
        for &x in &self.a {
            side[x] |= 1;
        }
        for &x in &self.b {
            side[x] |= 2;
        }
        if side.contains(&3) || side[self.u] & 1 != 0 || side[self.w] & 2 != 0 {
            return false;
        }
        if !self.a.iter().all(|&x| h.has_edge(self.u, x)) || !self.b.iter().all(|&x| h.has_edge(self.w, x)) {
            return false;
        }
        let mut crossing: Vec<(usize, usize)> = h
            .edges()
            .iter()
            .copied()
            .filter(|&(x, y)| side[x] | side[y] == 3 && side[x] != side[y])
            .collect();
        crossing.sort_unstable();
        let mut claimed = self.f_star.clone();
        claimed.sort_unstable();
        if crossing != claimed || claimed.len() != self.size {
            return false;
        }
        if family.is_triangle() {
            let inside = |set: &[usize]| {
                set.iter().enumerate().any(|(i, &x)| set[i + 1..].iter().any(|&y| h.has_edge(x, y)))
            };
            if inside(&self.a) || inside(&self.b) {
                return false;
            }
        }
        true
    }
}

/// Spanning subgraph of edges with zero weight in `cover`.
pub fn zero_weight_subgraph(g: &Graph, cover: &ExactCover) -> Graph {
    g.spanning_subgraph(|e| cover.weights[e] == int(0)).0
}

/// Repeatedly removes vertices of degree below `threshold`.
fn peel(h: &Graph, threshold: &Rational) -> Vec<bool> {
    let n = h.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| int(degree[v]) < *threshold).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for x in h.neighbors(v) {
            if alive[x] {
                degree[x] -= 1;
                if int(degree[x]) < *threshold {
                    stack.push(x);
                }
            }
        }
    }
    alive
}

struct Attempt {
    u: usize,
    w: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    f_star: Vec<(usize, usize)>,
    dominated: usize,
}

fn attempt(h: &Graph, alive: &[bool], sample_set: &[usize]) -> Option<Attempt> {
    let n = h.n();
    let mut in_sample = vec![false; n];
    for &c in sample_set {
        in_sample[c] = alive[c];
    }
    // Class of each core vertex: its lowest-index sampled neighbor.
    let class: Vec<Option<usize>> = (0..n)
        .map(|x| if alive[x] { h.neighbors(x).filter(|&c| in_sample[c]).min() } else { None })
        .collect();
    let dominated = class.iter().flatten().count();

    let mut counts = std::collections::BTreeMap::<(usize, usize), usize>::new();
    for &(x, y) in h.edges() {
        if let (Some(cx), Some(cy)) = (class[x], class[y]) {
            if cx != cy {
                *counts.entry((cx.min(cy), cx.max(cy))).or_default() += 1;
            }
        }
    }
    let (u, w) = match counts.iter().max_by(|p, q| p.1.cmp(q.1).then(q.0.cmp(p.0))) {
        Some((&pair, _)) => pair,
        None => {
            // No crossing edges anywhere: fall back to the two smallest classes.
            let mut used: Vec<usize> = class.iter().flatten().copied().collect();
            used.sort_unstable();
            used.dedup();
            if used.len() < 2 {
                return None;
            }
            (used[0], used[1])
        }
    };
    let a: Vec<usize> = (0..n).filter(|&x| class[x] == Some(u)).collect();
    let b: Vec<usize> = (0..n).filter(|&x| class[x] == Some(w)).collect();
    let f_star = h
        .edges()
        .iter()
        .copied()
        .filter(|&(x, y)| {
            let pair = (class[x], class[y]);
            pair == (Some(u), Some(w)) || pair == (Some(w), Some(u))
        })
        .collect();
    Some(Attempt { u, w, a, b, f_star, dominated })
}

pub fn find_bipartite_witness(h: &Graph, params: WitnessParams<'_>) -> Result<BipartiteWitness> {
    let n = h.n();
    let beta = params.beta.clone();
    if beta <= int(0) || beta > ratio(1, 2) {
        return Err(Error::InsufficientDensity(format!("β = {beta} outside (0, 1/2]")));
    }
    if let Some(t) = find_target(h, params.family) {
        return Err(Error::NotTargetFree(t.vertices));
    }

    let m_ref = beta.clone() * int(n * n);
    let bound = beta.clone() * beta.clone() * m_ref.clone() / int(500);
    let alive = peel(h, &(ratio(124, 1000) * beta.clone() * int(n)));
    let core_vertices = alive.iter().filter(|&&a| a).count();
    if core_vertices == 0 {
        return Err(Error::InsufficientDensity("peeling removed every vertex".into()));
    }
    let c = (ceil_to_u64(&(int(1) / (ratio(124, 1000) * beta))) as usize).min(n);

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut best: Option<Attempt> = None;
    let mut attempts = 0;
    for _ in 0..params.retries.max(1) {
        attempts += 1;
        let picked = sample(&mut rng, n, c).into_vec();
        if let Some(found) = attempt(h, &alive, &picked) {
            if best.as_ref().is_none_or(|b| found.f_star.len() > b.f_star.len()) {
                best = Some(found);
            }
        }
        if best.as_ref().is_some_and(|b| int(b.f_star.len()) >= bound) {
            break;
        }
    }
    let best = best.ok_or_else(|| Error::InsufficientDensity("sample never dominated two classes".into()))?;
    let size = best.f_star.len();
    Ok(BipartiteWitness {
        a: best.a,
        b: best.b,
        u: best.u,
        w: best.w,
        f_star: best.f_star,
        size,
        meets_bound: int(size) >= bound,
        bound,
        sample_size: c,
        core_vertices,
        dominated: best.dominated,
        attempts,
        seed: params.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    #[test]
    fn complete_bipartite_witness_respects_sides() {
        let h = generate(&GeneratorSpec::CompleteMultipartite { parts: vec![100, 100] }).unwrap();
        let beta = ratio(1, 5);
        let wit = find_bipartite_witness(&h, WitnessParams::new(&beta, 7)).unwrap();
        assert!(wit.verify(&h, TargetFamily::TRIANGLE));
        assert!(wit.meets_bound);
        // Numeric check of the threshold: β²·βn²/500 = 0.64.
        assert_eq!(wit.bound, ratio(16, 25));
        let left = |x: usize| x < 100;
        assert!(wit.a.iter().all(|&x| left(x) == left(wit.a[0])));
        assert!(wit.b.iter().all(|&x| left(x) == left(wit.b[0])));
        assert_ne!(left(wit.a[0]), left(wit.b[0]));
        assert_eq!(wit.size, wit.a.len() * wit.b.len());
    }

    #[test]
    fn sparse_graph_is_rejected() {
        let h = generate(&GeneratorSpec::Cycle { n: 200 }).unwrap();
        let beta = ratio(1, 5);
        let err = find_bipartite_witness(&h, WitnessParams::new(&beta, 0)).unwrap_err();
        assert!(matches!(err, Error::InsufficientDensity(_)));
    }

    #[test]
    fn triangle_is_rejected() {
        let h = generate(&GeneratorSpec::Complete { n: 4 }).unwrap();
        let beta = ratio(1, 5);
        let err = find_bipartite_witness(&h, WitnessParams::new(&beta, 0)).unwrap_err();
        assert!(matches!(err, Error::NotTargetFree(v) if v.len() == 3));
    }

    #[test]
    fn sample_size_is_capped() {
        let h = generate(&GeneratorSpec::CompleteMultipartite { parts: vec![3, 3] }).unwrap();
        let beta = ratio(1, 4);
        let wit = find_bipartite_witness(&h, WitnessParams::new(&beta, 1)).unwrap();
        assert_eq!(wit.sample_size, 6);
        assert!(wit.verify(&h, TargetFamily::TRIANGLE));
    }
}
