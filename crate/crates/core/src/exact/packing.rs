use super::{Budget, Meter, PackingSolution};
use crate::graph::{Graph, TargetKind, TargetList};

struct Search<'a> {
    g: &'a Graph,
    targets: &'a TargetList,
    used: Vec<bool>,
    dead: Vec<bool>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    ceiling: usize,
    degree: Vec<usize>,
    meter: Meter,
}

impl Search<'_> {
    fn available(&self, t: usize) -> bool {
        self.targets.get(t).edges.iter().all(|&e| !self.used[e] && !self.dead[e])
    }

    fn live(&self, e: usize) -> bool {
        !self.used[e]
            && !self.dead[e]
            && self.targets.incidence(e).iter().any(|&t| self.available(t))
    }

    /// Edge count and per-vertex degree bounds over live edges.
    fn upper_bound(&mut self) -> usize {
        let family = self.targets.family();
        self.degree.iter_mut().for_each(|d| *d = 0);
        let mut edges = 0;
        for e in 0..self.targets.num_edges() {
            if self.live(e) {
                edges += 1;
                let (u, v) = self.g.edge(e);
                self.degree[u] += 1;
                self.degree[v] += 1;
            }
        }
        let per_vertex = match family.kind() {
            TargetKind::Clique => family.k() - 1,
            TargetKind::OddCycle => 2,
        };
        let slots: usize = self.degree.iter().map(|d| d / per_vertex).sum();
        (edges / family.edges_per_target()).min(slots / family.k())
    }

    fn run(&mut self) {
        if self.best.len() >= self.ceiling || !self.meter.tick() {
            return;
        }
        let Some(e) = (0..self.targets.num_edges()).find(|&e| self.live(e)) else {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        };
        if self.chosen.len() + self.upper_bound() <= self.best.len() {
            return;
        }
        // Either some target through `e` is packed, or `e` stays unused.
        let through: Vec<usize> =
            self.targets.incidence(e).iter().copied().filter(|&t| self.available(t)).collect();
        for t in through {
            for &x in &self.targets.get(t).edges {
                self.used[x] = true;
            }
            self.chosen.push(t);
            self.run();
            self.chosen.pop();
            for &x in &self.targets.get(t).edges {
                self.used[x] = false;
            }
            if self.meter.exhausted {
                return;
            }
        }
        self.dead[e] = true;
        self.run();
        self.dead[e] = false;
    }
}

fn greedy_in_order(targets: &TargetList) -> Vec<usize> {
    let mut used = vec![false; targets.num_edges()];
    let mut out = Vec::new();
    for (t, target) in targets.targets().iter().enumerate() {
        if target.edges.iter().all(|&e| !used[e]) {
            target.edges.iter().for_each(|&e| used[e] = true);
            out.push(t);
        }
    }
    out
}

/// Maximum set of pairwise edge-disjoint targets.
pub fn exact_packing(g: &Graph, targets: &TargetList, budget: Budget) -> PackingSolution {
    debug_assert_eq!(g.m(), targets.num_edges());
    let mut search = Search {
        g,
        targets,
        used: vec![false; targets.num_edges()],
        dead: vec![false; targets.num_edges()],
        chosen: Vec::new(),
        best: greedy_in_order(targets),
        ceiling: usize::MAX,
        degree: vec![0; g.n()],
        meter: Meter::new(budget),
    };
    search.ceiling = search.upper_bound();
    search.run();
    let optimal = !search.meter.exhausted;
    let nodes = search.meter.count();
    PackingSolution::new(targets, search.best, optimal, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_targets, generate, GeneratorSpec, TargetFamily};

    fn solve(spec: GeneratorSpec, family: TargetFamily) -> PackingSolution {
        let g = generate(&spec).unwrap();
        let t = enumerate_targets(&g, family).unwrap();
        let sol = exact_packing(&g, &t, Budget::default());
        assert!(sol.verify(&t));
        sol
    }

    /// Largest family of pairwise edge-disjoint triangles, by subset enumeration.
    fn brute_force(spec: GeneratorSpec) -> usize {
        let g = generate(&spec).unwrap();
        let t = enumerate_targets(&g, TargetFamily::TRIANGLE).unwrap();
        let masks: Vec<u64> =
            t.targets().iter().map(|tr| tr.edges.iter().fold(0u64, |m, &e| m | 1 << e)).collect();
        let mut best = 0;
        for subset in 0u32..1 << masks.len() {
            let mut acc = 0u64;
            let ok = (0..masks.len()).filter(|i| subset >> i & 1 == 1).all(|i| {
                let clash = acc & masks[i] != 0;
                acc |= masks[i];
                !clash
            });
            if ok {
                best = best.max(subset.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn complete_graph_values() {
        assert_eq!(brute_force(GeneratorSpec::Complete { n: 4 }), 1);
        assert_eq!(brute_force(GeneratorSpec::Complete { n: 5 }), 2);
        assert_eq!(solve(GeneratorSpec::Complete { n: 4 }, TargetFamily::TRIANGLE).size, 1);
        assert_eq!(solve(GeneratorSpec::Complete { n: 5 }, TargetFamily::TRIANGLE).size, 2);
        assert_eq!(solve(GeneratorSpec::Complete { n: 6 }, TargetFamily::TRIANGLE).size, 4);
        let k7 = solve(GeneratorSpec::Complete { n: 7 }, TargetFamily::TRIANGLE);
        assert_eq!((k7.size, k7.optimal), (7, true));
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        for seed in 0..8 {
            let spec = GeneratorSpec::Gnp { n: 7, p: 0.55, seed };
            assert_eq!(solve(spec.clone(), TargetFamily::TRIANGLE).size, brute_force(spec));
        }
    }

    #[test]
    fn empty_and_cycles() {
        assert_eq!(solve(GeneratorSpec::Empty { n: 4 }, TargetFamily::TRIANGLE).size, 0);
        assert_eq!(solve(GeneratorSpec::Cycle { n: 5 }, TargetFamily::odd_cycle(5).unwrap()).size, 1);
        // Five-cycles in K5: a 2-factorization exists, so two disjoint ones.
        assert_eq!(solve(GeneratorSpec::Complete { n: 5 }, TargetFamily::odd_cycle(5).unwrap()).size, 2);
    }

    #[test]
    fn k4_packing_in_k5() {
        let sol = solve(GeneratorSpec::Complete { n: 5 }, TargetFamily::clique(4).unwrap());
        assert_eq!(sol.size, 1);
    }
}
