//! Simple undirected graphs with positional edge identity.
//!
//! Edges are stored in a sorted canonical list of `(u, v)` pairs with
//! `u < v`. The position of an edge in that list is its id everywhere else
//! in the crate: LP variables, support classes and certificates all key on it.

mod generate;
mod targets;

pub use generate::{generate, GeneratorSpec};
pub use targets::{
    enumerate_targets, enumerate_targets_with_cap, find_target, Target, TargetFamily, TargetKind, TargetList,
    DEFAULT_TARGET_CAP,
};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // Sorted neighbor lists, with the id of the connecting edge alongside.
    adj: Vec<Vec<(usize, usize)>>,
    bits: Vec<Vec<u64>>,
}

impl Graph {
    /// Builds a graph from an arbitrary edge list. Pairs may come in either
    /// orientation; they are canonicalized and sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge { line: 0, u: w[0].0, v: w[0].1 });
        }
        Ok(Self::from_sorted(n, canon))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let words = n.div_ceil(64);
        let mut adj = vec![Vec::new(); n];
        let mut bits = vec![vec![0u64; words]; n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
            bits[u][v / 64] |= 1 << (v % 64);
            bits[v][u / 64] |= 1 << (u % 64);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj, bits }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u][v / 64] & (1 << (v % 64)) != 0
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if !self.has_edge(u, v) {
            return None;
        }
        let list = &self.adj[u];
        list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// Neighbors of `v` paired with the id of the connecting edge.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Spanning subgraph keeping the edges for which `keep` holds. The second
    /// value maps each new edge id to its id in `self`.
    pub fn spanning_subgraph(&self, mut keep: impl FnMut(usize) -> bool) -> (Graph, Vec<usize>) {
        let mut kept = Vec::new();
        let mut origin = Vec::new();
        for (id, &e) in self.edges.iter().enumerate() {
            if keep(id) {
                kept.push(e);
                origin.push(id);
            }
        }
        (Self::from_sorted(self.n, kept), origin)
    }

    pub fn without_edges(&self, removed: &[usize]) -> Graph {
        let mut gone = vec![false; self.m()];
        for &e in removed {
            gone[e] = true;
        }
        self.spanning_subgraph(|e| !gone[e]).0
    }

    /// Graph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Whether the graph admits a proper 2-coloring.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Edge-list text accepted by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Parses the edge-list format: one `u v` pair per line, optional `n <count>`
/// header, `#` comments. Vertex ids are 0-based.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header_n = 0usize;
    let mut max_id = None::<usize>;
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = || Error::MalformedLine { line: line_no, text: trimmed.to_string() };
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens.as_slice() {
            ["n", count] => header_n = count.parse().map_err(|_| malformed())?,
            [u, v] => {
                let u: usize = u.parse().map_err(|_| malformed())?;
                let v: usize = v.parse().map_err(|_| malformed())?;
                if u == v {
                    return Err(Error::SelfLoop { line: line_no, vertex: u });
                }
                max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
                raw.push((line_no, u.min(v), u.max(v)));
            }
            _ => return Err(malformed()),
        }
    }
    let n = header_n.max(max_id.map_or(0, |m| m + 1));
    let mut seen = std::collections::HashSet::with_capacity(raw.len());
    for &(line, u, v) in &raw {
        if !seen.insert((u, v)) {
            return Err(Error::DuplicateEdge { line, u, v });
        }
    }
    Graph::new(n, raw.into_iter().map(|(_, u, v)| (u, v)))
}

/// Edge density `m / n²` as an exact rational.
pub fn density(g: &Graph) -> Result<Rational> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(int(g.m()) / int(g.n() * g.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn parse_single_triangle() {
        let g = parse_graph("0 1\n1 2\n0 2").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn parse_rejects_self_loop() {
        assert!(matches!(parse_graph("0 0"), Err(Error::SelfLoop { line: 1, vertex: 0 })));
    }

    #[test]
    fn parse_header_and_comments() {
        let g = parse_graph("# c\nn 5\n0 1").unwrap();
        assert_eq!((g.n(), g.m()), (5, 1));
    }

    #[test]
    fn parse_rejects_duplicates_in_either_orientation() {
        assert!(matches!(
            parse_graph("0 1\n1 0"),
            Err(Error::DuplicateEdge { line: 2, u: 0, v: 1 })
        ));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(parse_graph("0 x"), Err(Error::MalformedLine { line: 1, .. })));
        assert!(matches!(parse_graph("0 1 2"), Err(Error::MalformedLine { .. })));
        assert!(matches!(parse_graph("n -3"), Err(Error::MalformedLine { .. })));
    }

    #[test]
    fn header_smaller_than_ids_is_widened() {
        let g = parse_graph("n 2\n0 4").unwrap();
        assert_eq!(g.n(), 5);
    }

    #[test]
    fn edge_ids_are_positional() {
        let g = Graph::new(4, [(3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(g.edge_id(2, 0), Some(1));
        assert_eq!(g.edge_id(3, 2), Some(2));
        assert_eq!(g.edge_id(1, 3), None);
        assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn density_values() {
        let k10 = generate(&GeneratorSpec::Complete { n: 10 }).unwrap();
        assert_eq!(density(&k10).unwrap(), ratio(45, 100));
        assert_eq!(density(&Graph::empty(5)).unwrap(), ratio(0, 1));
        let k4 = generate(&GeneratorSpec::Complete { n: 4 }).unwrap();
        assert_eq!(density(&k4).unwrap(), ratio(6, 16));
        assert!(matches!(density(&Graph::empty(0)), Err(Error::EmptyGraph)));
    }

    #[test]
    fn bipartiteness() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c5 = generate(&GeneratorSpec::Cycle { n: 5 }).unwrap();
        assert!(c4.is_bipartite());
        assert!(!c5.is_bipartite());
        assert!(Graph::empty(3).is_bipartite());
    }
}
