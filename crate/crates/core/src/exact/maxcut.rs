use serde::Serialize;

use super::{Budget, Meter};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxCut {
    pub value: usize,
    /// `side[v]` is true for vertices on the second shore.
    pub side: Vec<bool>,
    pub optimal: bool,
}

/// Maximum cut by Gray-code enumeration of all bipartitions with the last
/// vertex pinned to the first shore. Practical up to about 30 vertices.
pub fn max_cut_exact(g: &Graph, budget: Budget) -> MaxCut {
    let n = g.n();
    if n < 2 {
        return MaxCut { value: 0, side: vec![false; n], optimal: true };
    }
    let mut meter = Meter::new(budget);
    let mut side = vec![false; n];
    let mut cut = 0isize;
    let mut best = (0isize, side.clone());
    let free = n - 1;
    let steps: u64 = 1u64 << free.min(63);
    for step in 1..steps {
        if !meter.tick() {
            break;
        }
        let v = step.trailing_zeros() as usize;
        let (same, cross) = g.neighbors(v).fold((0isize, 0isize), |(s, c), w| {
            if side[w] == side[v] { (s + 1, c) } else { (s, c + 1) }
        });
        side[v] = !side[v];
        cut += same - cross;
        if cut > best.0 {
            best = (cut, side.clone());
        }
    }
    MaxCut { value: best.0 as usize, side: best.1, optimal: !meter.exhausted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    fn cut_of(g: &Graph, side: &[bool]) -> usize {
        g.edges().iter().filter(|&&(u, v)| side[u] != side[v]).count()
    }

    #[test]
    fn small_values() {
        for (spec, expected) in [
            (GeneratorSpec::Complete { n: 4 }, 4),
            (GeneratorSpec::Complete { n: 5 }, 6),
            (GeneratorSpec::Complete { n: 6 }, 9),
            (GeneratorSpec::Cycle { n: 5 }, 4),
            (GeneratorSpec::Petersen, 12),
        ] {
            let g = generate(&spec).unwrap();
            let mc = max_cut_exact(&g, Budget::default());
            assert_eq!(mc.value, expected, "{}", spec.label());
            assert_eq!(cut_of(&g, &mc.side), mc.value);
            assert!(mc.optimal);
        }
    }

    #[test]
    fn matches_plain_enumeration() {
        for seed in 0..5 {
            let g = generate(&GeneratorSpec::Gnp { n: 9, p: 0.5, seed }).unwrap();
            let brute = (0u32..1 << 9)
                .map(|mask| {
                    let side: Vec<bool> = (0..9).map(|v| mask >> v & 1 == 1).collect();
                    cut_of(&g, &side)
                })
                .max()
                .unwrap();
            assert_eq!(max_cut_exact(&g, Budget::default()).value, brute);
        }
    }

    #[test]
    fn budget() {
        let g = generate(&GeneratorSpec::Complete { n: 12 }).unwrap();
        assert!(!max_cut_exact(&g, Budget::nodes(10)).optimal);
    }
}
