//! Revised primal simplex with an explicit basis inverse.
//!
//! Solves `max cᵀx  s.t.  Ax ≤ b, x ≥ 0` with `b ≥ 0`, so the slack basis is
//! feasible from the start. The inverse is kept as dense rows; structural
//! columns are sparse. The optimal dual `y = c_B B⁻¹` is maintained alongside.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse column: `(row, coefficient)` pairs.
pub type Column<T> = Vec<(usize, T)>;

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const BLAND_AFTER: usize = 50;

#[derive(Debug, Clone)]
pub struct Problem<T> {
    pub rows: usize,
    pub columns: Vec<Column<T>>,
    pub cost: Vec<T>,
    pub rhs: Vec<T>,
}

#[derive(Debug, Clone)]
pub struct Solution<T> {
    pub primal: Vec<T>,
    pub dual: Vec<T>,
    pub value: T,
    pub iterations: usize,
}

pub fn solve<T: Scalar>(problem: &Problem<T>, iteration_cap: usize) -> Result<Solution<T>> {
    solve_until(problem, iteration_cap, None)
}

/// As [`solve`], giving up with [`Error::LpTimeout`] once `deadline` passes.
pub fn solve_until<T: Scalar>(
    problem: &Problem<T>,
    iteration_cap: usize,
    deadline: Option<Instant>,
) -> Result<Solution<T>> {
    let rows = problem.rows;
    let cols = problem.columns.len();
    assert_eq!(problem.cost.len(), cols);
    assert_eq!(problem.rhs.len(), rows);
    if problem.rhs.iter().any(|b| b.is_neg()) {
        return Err(Error::Invariant("simplex requires a nonnegative right-hand side".into()));
    }

    let mut binv: Vec<Vec<T>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let mut beta = problem.rhs.clone();
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    let mut is_basic = vec![false; cols + rows];
    for &v in &basis {
        is_basic[v] = true;
    }
    let mut dual = vec![T::zero(); rows];
    let mut entering_col = vec![T::zero(); rows];
    let mut iterations = 0;
    let mut degenerate_run = 0usize;

    loop {
        // Dantzig pricing; after a run of degenerate pivots fall back to
        // Bland's lowest-index rule, which cannot cycle.
        let bland = degenerate_run >= BLAND_AFTER;
        let mut entering: Option<(usize, T)> = None;
        for j in 0..cols + rows {
            if is_basic[j] {
                continue;
            }
            let reduced = if j < cols {
                let mut d = problem.cost[j].clone();
                for (r, a) in &problem.columns[j] {
                    if !dual[*r].is_zero() {
                        d = d - dual[*r].clone() * a.clone();
                    }
                }
                d
            } else {
                -dual[j - cols].clone()
            };
            if reduced.is_pos() && entering.as_ref().is_none_or(|(_, best)| reduced > *best) {
                entering = Some((j, reduced));
                if bland {
                    break;
                }
            }
        }
        let Some((j, reduced)) = entering else { break };

        if iterations >= iteration_cap {
            return Err(Error::IterationCap(iteration_cap));
        }
        iterations += 1;
        if let Some(limit) = deadline {
            if iterations % 16 == 0 && Instant::now() > limit {
                return Err(Error::LpTimeout(iterations));
            }
        }

        for (i, slot) in entering_col.iter_mut().enumerate() {
            *slot = if j < cols {
                problem.columns[j]
                    .iter()
                    .fold(T::zero(), |acc, (r, a)| acc + binv[i][*r].clone() * a.clone())
            } else {
                binv[i][j - cols].clone()
            };
        }

        // Ratio test; ties go to the lowest-index basic variable.
        let mut leave: Option<(usize, T)> = None;
        for i in 0..rows {
            if !entering_col[i].is_pos() {
                continue;
            }
            let ratio = beta[i].clone() / entering_col[i].clone();
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, step)) = leave else { return Err(Error::Unbounded) };
        if step.is_zero() {
            degenerate_run += 1;
        } else {
            degenerate_run = 0;
        }

        let pivot = entering_col[r].clone();
        for x in binv[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() / pivot.clone();
            }
        }
        beta[r] = beta[r].clone() / pivot;
        let support: Vec<usize> = (0..rows).filter(|&c| !binv[r][c].is_zero()).collect();
        let pivot_row: Vec<T> = support.iter().map(|&c| binv[r][c].clone()).collect();
        for i in 0..rows {
            if i == r || entering_col[i].is_zero() {
                continue;
            }
            let factor = entering_col[i].clone();
            for (&c, v) in support.iter().zip(&pivot_row) {
                binv[i][c] = binv[i][c].clone() - factor.clone() * v.clone();
            }
            beta[i] = beta[i].clone() - factor * beta[r].clone();
        }
        for (&c, v) in support.iter().zip(&pivot_row) {
            dual[c] = dual[c].clone() + reduced.clone() * v.clone();
        }

        is_basic[basis[r]] = false;
        is_basic[j] = true;
        basis[r] = j;
    }

    let mut primal = vec![T::zero(); cols];
    for (i, &v) in basis.iter().enumerate() {
        if v < cols {
            primal[v] = beta[i].clone();
        }
    }
    let value = primal
        .iter()
        .zip(&problem.cost)
        .fold(T::zero(), |acc, (x, c)| acc + x.clone() * c.clone());
    Ok(Solution { primal, dual, value, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio, Rational};

    // max 3x + 2y  s.t. x + y ≤ 4, x + 3y ≤ 6, x ≤ 3  →  x=3, y=1, value 11.
    fn textbook<T: Scalar>() -> Problem<T> {
        let one = || T::one();
        Problem {
            rows: 3,
            columns: vec![
                vec![(0, one()), (1, one()), (2, one())],
                vec![(0, one()), (1, T::from_ratio(3, 1))],
            ],
            cost: vec![T::from_ratio(3, 1), T::from_ratio(2, 1)],
            rhs: vec![T::from_ratio(4, 1), T::from_ratio(6, 1), T::from_ratio(3, 1)],
        }
    }

    #[test]
    fn textbook_exact() {
        let sol = solve::<Rational>(&textbook(), 100).unwrap();
        assert_eq!(sol.primal, vec![int(3), int(1)]);
        assert_eq!(sol.value, int(11));
        // Strong duality: bᵀy equals the primal value.
        let by = sol.dual[0].clone() * int(4) + sol.dual[1].clone() * int(6) + sol.dual[2].clone() * int(3);
        assert_eq!(by, int(11));
        assert_eq!(sol.dual, vec![int(2), int(0), int(1)]);
    }

    #[test]
    fn textbook_float_agrees() {
        let sol = solve::<f64>(&textbook(), 100).unwrap();
        assert!((sol.value - 11.0).abs() < 1e-9);
    }

    #[test]
    fn unbounded_is_reported() {
        let p = Problem::<Rational> { rows: 1, columns: vec![vec![(0, int(-1))]], cost: vec![int(1)], rhs: vec![int(1)] };
        assert!(matches!(solve(&p, 10), Err(Error::Unbounded)));
    }

    #[test]
    fn iteration_cap() {
        assert!(matches!(solve::<Rational>(&textbook(), 1), Err(Error::IterationCap(1))));
    }

    #[test]
    fn fractional_optimum() {
        // max x + y  s.t. 2x + y ≤ 1, x + 2y ≤ 1  →  x = y = 1/3.
        let p = Problem::<Rational> {
            rows: 2,
            columns: vec![vec![(0, int(2)), (1, int(1))], vec![(0, int(1)), (1, int(2))]],
            cost: vec![int(1), int(1)],
            rhs: vec![int(1), int(1)],
        };
        let sol = solve(&p, 10).unwrap();
        assert_eq!(sol.value, ratio(2, 3));
        assert_eq!(sol.dual, vec![ratio(1, 3), ratio(1, 3)]);
    }
}
