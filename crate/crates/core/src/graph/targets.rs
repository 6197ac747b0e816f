//! Target families (`K_k`, `C_k`) and their enumeration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_TARGET_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetKind {
    Clique,
    OddCycle,
}

/// The subgraph family being covered or packed. Triangles are always
/// represented as `Clique(3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TargetFamily {
    kind: TargetKind,
    k: usize,
}

impl TargetFamily {
    pub const TRIANGLE: TargetFamily = TargetFamily { kind: TargetKind::Clique, k: 3 };

    pub fn new(kind: TargetKind, k: usize) -> Result<Self> {
        match kind {
            TargetKind::Clique if k >= 3 => Ok(Self { kind, k }),
            TargetKind::Clique => Err(Error::InvalidFamily(format!("clique size {k} < 3"))),
            TargetKind::OddCycle if k == 3 => Ok(Self::TRIANGLE),
            TargetKind::OddCycle if k > 3 && k % 2 == 1 => Ok(Self { kind, k }),
            TargetKind::OddCycle => {
                Err(Error::InvalidFamily(format!("cycle length {k} is not an odd k >= 3")))
            }
        }
    }

    pub fn clique(k: usize) -> Result<Self> {
        Self::new(TargetKind::Clique, k)
    }

    pub fn odd_cycle(k: usize) -> Result<Self> {
        Self::new(TargetKind::OddCycle, k)
    }

    pub fn kind(&self) -> TargetKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_triangle(&self) -> bool {
        *self == Self::TRIANGLE
    }

    pub fn edges_per_target(&self) -> usize {
        match self.kind {
            TargetKind::Clique => self.k * (self.k - 1) / 2,
            TargetKind::OddCycle => self.k,
        }
    }

    /// `⌊k²/4⌋`: the most edges a bipartite graph on `k` vertices can have.
    pub fn mantel_factor(&self) -> usize {
        self.k * self.k / 4
    }

    /// Number of parts in the partition used by the trivial cover: a
    /// `(k-1)`-partite graph has no `K_k`, a bipartite graph has no odd cycle.
    pub fn partite_parts(&self) -> usize {
        match self.kind {
            TargetKind::Clique => self.k - 1,
            TargetKind::OddCycle => 2,
        }
    }
}

impl fmt::Display for TargetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TargetKind::Clique => write!(f, "K{}", self.k),
            TargetKind::OddCycle => write!(f, "C{}", self.k),
        }
    }
}

impl FromStr for TargetFamily {
    type Err = Error;

    /// Accepts `K4`, `C5`, `clique:4`, `cycle:5` and `triangle`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("triangle") || s.eq_ignore_ascii_case("triangles") {
            return Ok(Self::TRIANGLE);
        }
        let bad = || Error::InvalidFamily(s.to_string());
        let (kind, digits) = if let Some(rest) = s.strip_prefix("clique:") {
            (TargetKind::Clique, rest)
        } else if let Some(rest) = s.strip_prefix("cycle:") {
            (TargetKind::OddCycle, rest)
        } else if let Some(rest) = s.strip_prefix(['K', 'k']) {
            (TargetKind::Clique, rest)
        } else if let Some(rest) = s.strip_prefix(['C', 'c']) {
            (TargetKind::OddCycle, rest)
        } else {
            return Err(bad());
        };
        let k = digits.parse().map_err(|_| bad())?;
        Self::new(kind, k)
    }
}

impl Serialize for TargetFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TargetFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// One copy of the target in the graph. Clique vertices are ascending; cycle
/// vertices are in canonical cyclic order (smallest vertex first, smaller
/// neighbor second).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub vertices: Vec<usize>,
    /// Sorted edge ids.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TargetList {
    family: TargetFamily,
    num_edges: usize,
    targets: Vec<Target>,
    incidence: Vec<Vec<usize>>,
}

impl TargetList {
    pub fn from_targets(family: TargetFamily, num_edges: usize, targets: Vec<Target>) -> Self {
        let mut incidence = vec![Vec::new(); num_edges];
        for (t, target) in targets.iter().enumerate() {
            for &e in &target.edges {
                incidence[e].push(t);
            }
        }
        Self { family, num_edges, targets, incidence }
    }

    pub fn family(&self) -> TargetFamily {
        self.family
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    pub fn get(&self, t: usize) -> &Target {
        &self.targets[t]
    }

    /// Targets containing edge `e`, ascending.
    pub fn incidence(&self, e: usize) -> &[usize] {
        &self.incidence[e]
    }

    /// Targets that avoid every edge with `removed[e] == true`, keeping the
    /// same edge numbering. Also returns the surviving original target ids.
    pub fn surviving(&self, removed: &[bool]) -> (TargetList, Vec<usize>) {
        let mut kept = Vec::new();
        let mut origin = Vec::new();
        for (t, target) in self.targets.iter().enumerate() {
            if target.edges.iter().all(|&e| !removed[e]) {
                kept.push(target.clone());
                origin.push(t);
            }
        }
        (TargetList::from_targets(self.family, self.num_edges, kept), origin)
    }

    /// Ids of targets left intact after deleting `cover`.
    pub fn unhit_by(&self, cover: &[usize]) -> Vec<usize> {
        let mut removed = vec![false; self.num_edges];
        for &e in cover {
            removed[e] = true;
        }
        (0..self.len())
            .filter(|&t| self.targets[t].edges.iter().all(|&e| !removed[e]))
            .collect()
    }
}

pub fn enumerate_targets(g: &Graph, family: TargetFamily) -> Result<TargetList> {
    enumerate_targets_with_cap(g, family, DEFAULT_TARGET_CAP)
}

pub fn enumerate_targets_with_cap(
    g: &Graph,
    family: TargetFamily,
    cap: usize,
) -> Result<TargetList> {
    let mut out = Vec::new();
    collect_targets(g, family, cap, &mut out)?;
    Ok(TargetList::from_targets(family, g.m(), out))
}

/// Some copy of the target in `g`, if any.
pub fn find_target(g: &Graph, family: TargetFamily) -> Option<Target> {
    let mut out = Vec::new();
    let _ = collect_targets(g, family, 1, &mut out);
    out.into_iter().next()
}

fn collect_targets(g: &Graph, family: TargetFamily, cap: usize, out: &mut Vec<Target>) -> Result<()> {
    match family.kind() {
        TargetKind::Clique => {
            let mut stack = Vec::with_capacity(family.k());
            for v in 0..g.n() {
                let cand: Vec<usize> = g.neighbors(v).filter(|&w| w > v).collect();
                stack.push(v);
                extend_clique(g, family.k(), &mut stack, &cand, out, cap)?;
                stack.pop();
            }
        }
        TargetKind::OddCycle => {
            let mut path = Vec::with_capacity(family.k());
            let mut on_path = vec![false; g.n()];
            for root in 0..g.n() {
                path.push(root);
                on_path[root] = true;
                extend_cycle(g, family.k(), &mut path, &mut on_path, out, cap)?;
                on_path[root] = false;
                path.pop();
            }
        }
    }
    Ok(())
}

fn push_target(out: &mut Vec<Target>, target: Target, cap: usize) -> Result<()> {
    if out.len() >= cap {
        return Err(Error::BudgetExceeded { cap });
    }
    out.push(target);
    Ok(())
}

fn extend_clique(
    g: &Graph,
    k: usize,
    stack: &mut Vec<usize>,
    cand: &[usize],
    out: &mut Vec<Target>,
    cap: usize,
) -> Result<()> {
    if stack.len() == k {
        let mut edges = Vec::with_capacity(k * (k - 1) / 2);
        for (i, &u) in stack.iter().enumerate() {
            for &v in &stack[i + 1..] {
                edges.push(g.edge_id(u, v).expect("clique edge"));
            }
        }
        edges.sort_unstable();
        return push_target(out, Target { vertices: stack.clone(), edges }, cap);
    }
    if stack.len() + cand.len() < k {
        return Ok(());
    }
    for (i, &v) in cand.iter().enumerate() {
        let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        stack.push(v);
        extend_clique(g, k, stack, &next, out, cap)?;
        stack.pop();
    }
    Ok(())
}

// Cycles are rooted at their smallest vertex; the reflection is discarded by
// requiring the second vertex to be smaller than the last.
fn extend_cycle(
    g: &Graph,
    k: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Target>,
    cap: usize,
) -> Result<()> {
    let root = path[0];
    let last = *path.last().unwrap();
    if path.len() == k {
        if g.has_edge(last, root) && path[1] < last {
            let mut edges: Vec<usize> = (0..k)
                .map(|i| g.edge_id(path[i], path[(i + 1) % k]).expect("cycle edge"))
                .collect();
            edges.sort_unstable();
            push_target(out, Target { vertices: path.clone(), edges }, cap)?;
        }
        return Ok(());
    }
    for &(w, _) in g.incident(last) {
        if w <= root || on_path[w] {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        extend_cycle(g, k, path, on_path, out, cap)?;
        on_path[w] = false;
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    fn complete(n: usize) -> Graph {
        generate(&GeneratorSpec::Complete { n }).unwrap()
    }

    #[test]
    fn family_validation() {
        assert_eq!(TargetFamily::odd_cycle(3).unwrap(), TargetFamily::TRIANGLE);
        assert!(TargetFamily::odd_cycle(4).is_err());
        assert!(TargetFamily::odd_cycle(1).is_err());
        assert!(TargetFamily::clique(2).is_err());
        assert_eq!("K4".parse::<TargetFamily>().unwrap(), TargetFamily::clique(4).unwrap());
        assert_eq!("C3".parse::<TargetFamily>().unwrap(), TargetFamily::TRIANGLE);
        assert_eq!("cycle:7".parse::<TargetFamily>().unwrap().to_string(), "C7");
        assert!("Q5".parse::<TargetFamily>().is_err());
    }

    #[test]
    fn clique_counts_on_small_complete_graphs() {
        assert_eq!(enumerate_targets(&complete(4), TargetFamily::TRIANGLE).unwrap().len(), 4);
        assert_eq!(enumerate_targets(&complete(5), TargetFamily::TRIANGLE).unwrap().len(), 10);
    }

    // Independent count: every 5-permutation of K5's vertices is a directed
    // Hamiltonian cycle; each undirected cycle arises from 5 rotations x 2 directions.
    #[test]
    fn five_cycles_of_k5() {
        let mut perms = 0usize;
        let mut p = [0usize, 1, 2, 3, 4];
        fn heap(k: usize, p: &mut [usize; 5], count: &mut usize) {
            if k == 1 {
                *count += 1;
                return;
            }
            for i in 0..k {
                heap(k - 1, p, count);
                if k.is_multiple_of(2) { p.swap(i, k - 1) } else { p.swap(0, k - 1) }
            }
        }
        heap(5, &mut p, &mut perms);
        assert_eq!(perms / 10, 12);
        let list = enumerate_targets(&complete(5), TargetFamily::odd_cycle(5).unwrap()).unwrap();
        assert_eq!(list.len(), 12);
        for t in list.targets() {
            assert_eq!(t.edges.len(), 5);
            assert_eq!(t.vertices[0], 0);
            assert!(t.vertices[1] < t.vertices[4]);
        }
    }

    #[test]
    fn petersen_has_twelve_five_cycles_and_no_triangles() {
        let p = generate(&GeneratorSpec::Petersen).unwrap();
        assert!(enumerate_targets(&p, TargetFamily::TRIANGLE).unwrap().is_empty());
        assert_eq!(enumerate_targets(&p, TargetFamily::odd_cycle(5).unwrap()).unwrap().len(), 12);
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_targets_with_cap(&complete(6), TargetFamily::TRIANGLE, 19).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { cap: 19 }));
        assert_eq!(enumerate_targets_with_cap(&complete(6), TargetFamily::TRIANGLE, 20).unwrap().len(), 20);
    }

    #[test]
    fn surviving_and_unhit() {
        let g = complete(4);
        let list = enumerate_targets(&g, TargetFamily::TRIANGLE).unwrap();
        let e01 = g.edge_id(0, 1).unwrap();
        let mut removed = vec![false; g.m()];
        removed[e01] = true;
        let (rest, origin) = list.surviving(&removed);
        assert_eq!(rest.len(), 2);
        assert_eq!(origin.len(), 2);
        assert_eq!(list.unhit_by(&[e01]), origin);
        let e23 = g.edge_id(2, 3).unwrap();
        assert!(list.unhit_by(&[e01, e23]).is_empty());
    }
}
