use super::{Budget, CoverSolution, Meter};
use crate::graph::{Graph, TargetList};

/// Repeatedly takes the edge hitting the most untouched targets.
pub fn greedy_cover(targets: &TargetList) -> Vec<usize> {
    let mut hit = vec![false; targets.len()];
    let mut left = targets.len();
    let mut cover = Vec::new();
    while left > 0 {
        let (e, _) = (0..targets.num_edges())
            .map(|e| (e, targets.incidence(e).iter().filter(|&&t| !hit[t]).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("an unhit target has edges");
        for &t in targets.incidence(e) {
            if !hit[t] {
                hit[t] = true;
                left -= 1;
            }
        }
        cover.push(e);
    }
    cover
}

struct Search<'a> {
    targets: &'a TargetList,
    selected: Vec<bool>,
    excluded: Vec<bool>,
    hits: Vec<u32>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    stamp: Vec<u32>,
    generation: u32,
    meter: Meter,
}

impl Search<'_> {
    fn select(&mut self, e: usize) {
        self.selected[e] = true;
        self.chosen.push(e);
        for &t in self.targets.incidence(e) {
            self.hits[t] += 1;
        }
    }

    fn unselect(&mut self, e: usize) {
        self.selected[e] = false;
        self.chosen.pop();
        for &t in self.targets.incidence(e) {
            self.hits[t] -= 1;
        }
    }

    /// Size of a greedy family of unhit targets that share no available edge;
    /// `None` when some unhit target has no available edge left.
    fn disjoint_bound(&mut self) -> Option<usize> {
        self.generation += 1;
        let stamp = self.generation;
        let mut count = 0;
        for (t, target) in self.targets.targets().iter().enumerate() {
            if self.hits[t] > 0 {
                continue;
            }
            let mut any = false;
            let mut clash = false;
            for &e in &target.edges {
                if self.excluded[e] {
                    continue;
                }
                any = true;
                if self.stamp[e] == stamp {
                    clash = true;
                }
            }
            if !any {
                return None;
            }
            if !clash {
                count += 1;
                for &e in &target.edges {
                    if !self.excluded[e] {
                        self.stamp[e] = stamp;
                    }
                }
            }
        }
        Some(count)
    }

    fn run(&mut self) {
        if !self.meter.tick() || self.chosen.len() >= self.best.len() {
            return;
        }
        let Some(t) = (0..self.targets.len()).find(|&t| self.hits[t] == 0) else {
            self.best = self.chosen.clone();
            return;
        };
        match self.disjoint_bound() {
            Some(lb) if self.chosen.len() + lb < self.best.len() => {}
            _ => return,
        }
        let options: Vec<usize> =
            self.targets.get(t).edges.iter().copied().filter(|&e| !self.excluded[e]).collect();
        // Branch i takes the i-th available edge and excludes the earlier ones.
        for &e in &options {
            self.select(e);
            self.run();
            self.unselect(e);
            self.excluded[e] = true;
            if self.meter.exhausted {
                break;
            }
        }
        for &e in &options {
            self.excluded[e] = false;
        }
    }
}

/// Minimum set of edges meeting every target.
pub fn exact_cover(g: &Graph, targets: &TargetList, budget: Budget) -> CoverSolution {
    debug_assert_eq!(g.m(), targets.num_edges());
    let family = targets.family();
    if targets.is_empty() {
        return CoverSolution::new(family, Vec::new(), true, 0);
    }
    let mut search = Search {
        targets,
        selected: vec![false; targets.num_edges()],
        excluded: vec![false; targets.num_edges()],
        hits: vec![0; targets.len()],
        chosen: Vec::new(),
        best: greedy_cover(targets),
        stamp: vec![0; targets.num_edges()],
        generation: 0,
        meter: Meter::new(budget),
    };
    search.run();
    let optimal = !search.meter.exhausted;
    CoverSolution::new(family, search.best, optimal, search.meter.count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_targets, generate, GeneratorSpec, TargetFamily};

    fn solve(spec: GeneratorSpec, family: TargetFamily) -> CoverSolution {
        let g = generate(&spec).unwrap();
        let t = enumerate_targets(&g, family).unwrap();
        let sol = exact_cover(&g, &t, Budget::default());
        assert!(sol.verify(&t));
        sol
    }

    /// Smallest k such that some k-subset of edges hits every target.
    fn brute_force(spec: GeneratorSpec) -> usize {
        let g = generate(&spec).unwrap();
        let t = enumerate_targets(&g, TargetFamily::TRIANGLE).unwrap();
        let m = g.m();
        (0u64..1 << m)
            .filter(|mask| {
                t.targets().iter().all(|tr| tr.edges.iter().any(|&e| mask >> e & 1 == 1))
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn complete_graph_values() {
        assert_eq!(brute_force(GeneratorSpec::Complete { n: 4 }), 2);
        assert_eq!(brute_force(GeneratorSpec::Complete { n: 5 }), 4);
        assert_eq!(solve(GeneratorSpec::Complete { n: 4 }, TargetFamily::TRIANGLE).size, 2);
        assert_eq!(solve(GeneratorSpec::Complete { n: 5 }, TargetFamily::TRIANGLE).size, 4);
        let k6 = solve(GeneratorSpec::Complete { n: 6 }, TargetFamily::TRIANGLE);
        assert_eq!((k6.size, k6.optimal), (6, true));
    }

    #[test]
    fn triangle_free_needs_nothing() {
        let sol = solve(GeneratorSpec::Cycle { n: 7 }, TargetFamily::TRIANGLE);
        assert_eq!((sol.size, sol.optimal), (0, true));
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        for seed in 0..6 {
            let spec = GeneratorSpec::Gnp { n: 7, p: 0.6, seed };
            assert_eq!(solve(spec.clone(), TargetFamily::TRIANGLE).size, brute_force(spec));
        }
    }

    #[test]
    fn single_five_cycle() {
        let sol = solve(GeneratorSpec::Cycle { n: 5 }, TargetFamily::odd_cycle(5).unwrap());
        assert_eq!(sol.size, 1);
    }

    #[test]
    fn budget_exhaustion_keeps_incumbent() {
        let g = generate(&GeneratorSpec::Complete { n: 9 }).unwrap();
        let t = enumerate_targets(&g, TargetFamily::TRIANGLE).unwrap();
        let sol = exact_cover(&g, &t, Budget::nodes(3));
        assert!(!sol.optimal);
        assert!(sol.verify(&t));
    }
}
