//! The fractional packing LP checked against vertex enumeration: every
//! basis of tight constraints is solved by Gaussian elimination and the best
//! feasible vertex is the optimum.

use num_traits::Zero;
use proptest::prelude::*;
use tripack::lp::{fractional_cover, solve_fractional, LpOptions};
use tripack::scalar::{int, ratio};
use tripack::{enumerate_targets, generate, GeneratorSpec, Graph, Rational, TargetFamily, TargetList};

/// Solves `a x = b` for square `a`; `None` if singular.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone() / a[col][col].clone();
                let pivot_row = a[col].clone();
                for (cell, p) in a[r].iter_mut().zip(pivot_row).skip(col) {
                    *cell -= p * f.clone();
                }
                let v = b[col].clone() * f;
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| b[i].clone() / a[i][i].clone()).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `max Σx` over `x ≥ 0` with every edge load at most one.
fn packing_by_vertices(list: &TargetList) -> Rational {
    let t = list.len();
    if t == 0 {
        return int(0);
    }
    let m = list.num_edges();
    // Rows 0..m are edge constraints, rows m..m+t are x_i ≥ 0.
    let row = |r: usize| -> (Vec<Rational>, Rational) {
        if r < m {
            let coeffs = (0..t).map(|i| if list.get(i).edges.contains(&r) { int(1) } else { int(0) }).collect();
            (coeffs, int(1))
        } else {
            ((0..t).map(|i| if i == r - m { int(1) } else { int(0) }).collect(), int(0))
        }
    };
    let rows: Vec<_> = (0..m + t).map(row).collect();
    let mut best = int(0);
    for basis in combinations(m + t, t) {
        let a = basis.iter().map(|&r| rows[r].0.clone()).collect();
        let b = basis.iter().map(|&r| rows[r].1.clone()).collect();
        let Some(x) = solve(a, b) else { continue };
        let feasible = x.iter().all(|v| *v >= int(0))
            && rows[..m].iter().all(|(c, rhs)| c.iter().zip(&x).map(|(a, v)| a.clone() * v.clone()).sum::<Rational>() <= *rhs);
        if feasible {
            let value: Rational = x.iter().sum();
            if value > best {
                best = value;
            }
        }
    }
    best
}

#[test]
fn k4_matches_vertex_enumeration() {
    let g = generate(&GeneratorSpec::Complete { n: 4 }).unwrap();
    let list = enumerate_targets(&g, TargetFamily::TRIANGLE).unwrap();
    assert_eq!(packing_by_vertices(&list), int(2));
    assert_eq!(fractional_cover(&g, &list).unwrap().value, int(2));
}

#[test]
fn k5_value_is_ten_thirds() {
    // f ≡ 1/3 covers every triangle exactly once and g ≡ 1/3 loads every
    // edge exactly once (each edge lies in three triangles); both have value
    // 10/3, so that is the optimum.
    let g = generate(&GeneratorSpec::Complete { n: 5 }).unwrap();
    let list = enumerate_targets(&g, TargetFamily::TRIANGLE).unwrap();
    for e in 0..g.m() {
        assert_eq!(list.incidence(e).len(), 3);
    }
    let lp = fractional_cover(&g, &list).unwrap();
    assert_eq!(lp.value, ratio(10, 3));
    assert_eq!(lp.dual_packing.value, ratio(10, 3));
}

#[test]
fn float_and_exact_agree_on_k6() {
    let g = generate(&GeneratorSpec::Complete { n: 6 }).unwrap();
    let list = enumerate_targets(&g, TargetFamily::TRIANGLE).unwrap();
    let exact = fractional_cover(&g, &list).unwrap().value;
    let approx = solve_fractional::<f64>(&list, LpOptions::default()).unwrap().value;
    assert!((approx - 5.0).abs() < 1e-9);
    assert_eq!(exact, int(5));
}

fn small_graph(n: usize, mask: u32) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let edges = pairs.into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e);
    Graph::new(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn simplex_matches_vertex_enumeration(mask in 0u32..(1 << 15)) {
        let g = small_graph(6, mask);
        let list = enumerate_targets(&g, TargetFamily::TRIANGLE).unwrap();
        prop_assume!(list.len() <= 7);
        let lp = fractional_cover(&g, &list).unwrap();
        prop_assert_eq!(lp.value, packing_by_vertices(&list));
    }
}
