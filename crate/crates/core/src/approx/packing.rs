use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::PackingSolution;
use crate::graph::{Graph, TargetList};

/// Maximal (not maximum) packing: targets in seeded random order, each kept
/// when it is edge-disjoint from those already taken.
pub fn greedy_packing(g: &Graph, targets: &TargetList, seed: u64) -> PackingSolution {
    debug_assert_eq!(g.m(), targets.num_edges());
    let mut order: Vec<usize> = (0..targets.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut used = vec![false; targets.num_edges()];
    let mut taken = Vec::new();
    for t in order {
        let edges = &targets.get(t).edges;
        if edges.iter().all(|&e| !used[e]) {
            edges.iter().for_each(|&e| used[e] = true);
            taken.push(t);
        }
    }
    PackingSolution::new(targets, taken, false, 0)
}

/// Steiner triple system on `0..n`: triangles partitioning the edges of `K_n`.
/// Exists exactly when `n ≡ 1, 3 (mod 6)`; built by the Bose (`n ≡ 3`) and
/// Skolem (`n ≡ 1`) constructions.
pub fn steiner_triple_system(n: usize) -> Option<Vec<[usize; 3]>> {
    match n % 6 {
        _ if n == 0 => None,
        1 if n == 1 => Some(Vec::new()),
        3 => Some(bose(n / 3)),
        1 => Some(skolem((n - 1) / 3)),
        _ => None,
    }
}

// Points (x, i) ↦ x + q·i over Z_q × Z_3 with q odd, using the idempotent
// commutative quasigroup x∘y = (x + y)(q + 1)/2.
fn bose(q: usize) -> Vec<[usize; 3]> {
    let pt = |x: usize, i: usize| x + q * (i % 3);
    let op = |x: usize, y: usize| (x + y) * (q + 1) / 2 % q;
    let mut out: Vec<[usize; 3]> = (0..q).map(|x| [pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for x in 0..q {
        for y in x + 1..q {
            for i in 0..3 {
                out.push([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    out
}

// q = 2v even; ∞ is the last point. Uses the half-idempotent commutative
// quasigroup s = x + y mod q, x∘y = ⌊s/2⌋ + v·(s mod 2).
fn skolem(q: usize) -> Vec<[usize; 3]> {
    let v = q / 2;
    let inf = 3 * q;
    let pt = |x: usize, i: usize| x % q + q * (i % 3);
    let op = |x: usize, y: usize| {
        let s = (x + y) % q;
        s / 2 + v * (s % 2)
    };
    let mut out = Vec::new();
    for x in 0..v {
        out.push([pt(x, 0), pt(x, 1), pt(x, 2)]);
        for i in 0..3 {
            out.push([inf, pt(x + v, i), pt(x, i + 1)]);
        }
    }
    for x in 0..q {
        for y in x + 1..q {
            for i in 0..3 {
                out.push([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    out
}

/// Perfect triangle packing of a complete graph from a Steiner triple system,
/// expressed against `targets`. `None` unless `g` is complete with
/// `n ≡ 1, 3 (mod 6)` and `targets` lists its triangles.
pub fn complete_graph_decomposition(g: &Graph, targets: &TargetList) -> Option<PackingSolution> {
    if !g.is_complete() || !targets.family().is_triangle() {
        return None;
    }
    let triples = steiner_triple_system(g.n())?;
    let index: HashMap<&[usize], usize> =
        targets.targets().iter().enumerate().map(|(i, t)| (t.vertices.as_slice(), i)).collect();
    let ids = triples
        .into_iter()
        .map(|mut tri| {
            tri.sort_unstable();
            index.get(&tri[..]).copied()
        })
        .collect::<Option<Vec<_>>>()?;
    Some(PackingSolution::new(targets, ids, true, 0))
}
