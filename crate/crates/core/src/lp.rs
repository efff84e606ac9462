//! Exact feasibility for `{x ≥ 0, ℓ_i(x) ≥ 1}`.
//!
//! Solved as `max t` subject to `ℓ_i(x) ≥ t`, `Σ x ≤ 1`, `x ≥ 0`: the origin is a
//! feasible start, so no artificial variables are needed, and the optimum is a
//! point whose smallest slack is as large as possible.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Returns a point with `x ≥ 0` and `row·x ≥ 1` for every row, or `None`.
///
/// Dictionary simplex with Bland's rule; no tolerance anywhere.
pub fn feasible_point(rows: &[Vec<i64>], n: usize) -> Option<Vec<Rational>> {
    if rows.is_empty() {
        return Some(vec![Rational::zero(); n]);
    }
    let (x, t) = max_min_slack_small(rows, n).unwrap_or_else(|| max_min_slack(rows, n));
    if !t.is_positive() {
        return None;
    }
    Some(x.into_iter().map(|v| v / &t).collect())
}

/// `(x, t)` maximising `t` with `ℓ_i(x) ≥ t`, `Σ x ≤ 1`, `x ≥ 0`.
pub fn max_min_slack(rows: &[Vec<i64>], n: usize) -> (Vec<Rational>, Rational) {
    let m = rows.len();
    // variables: x_0..x_{n-1}, t = n, slacks n+1..=n+m, the simplex slack n+m+1
    let t_var = n;
    let nvars = n + m + 2;
    let mut nonbasic: Vec<usize> = (0..=n).collect();
    let mut basic: Vec<usize> = (n + 1..nvars).collect();
    // dictionary rows: basic = b + Σ a_c · nonbasic_c
    let mut b: Vec<Rational> = vec![Rational::zero(); m + 1];
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for row in rows {
        assert_eq!(row.len(), n, "constraint width");
        let mut r: Vec<Rational> = row.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
        r.push(-Rational::one());
        a.push(r);
    }
    let mut simplex_row = vec![-Rational::one(); n];
    simplex_row.push(Rational::zero());
    a.push(simplex_row);
    b[m] = Rational::one();
    let mut z0 = Rational::zero();
    let mut c: Vec<Rational> = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();

    loop {
        let enter = (0..=n)
            .filter(|&j| c[j].is_positive())
            .min_by_key(|&j| nonbasic[j]);
        let Some(e) = enter else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..=m {
            if a[r][e].is_negative() {
                let ratio = &b[r] / -&a[r][e];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basic[r] < basic[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (l, _) = leave.expect("bounded by the simplex row");
        pivot(&mut a, &mut b, &mut c, &mut z0, l, e);
        std::mem::swap(&mut basic[l], &mut nonbasic[e]);
    }

    let mut x = vec![Rational::zero(); n];
    for (r, &v) in basic.iter().enumerate() {
        if v < n {
            x[v] = b[r].clone();
        }
    }
    debug_assert!(basic.contains(&t_var) || z0.is_zero());
    (x, z0)
}

/// [`max_min_slack`] in `i128` with integer pivoting; `None` on overflow.
///
/// Entries are kept over a common positive denominator `d`, the magnitude of
/// the previous pivot, and every update divides exactly by it.
pub fn max_min_slack_small(rows: &[Vec<i64>], n: usize) -> Option<(Vec<Rational>, Rational)> {
    let m = rows.len();
    let nvars = n + m + 2;
    let mut nonbasic: Vec<usize> = (0..=n).collect();
    let mut basic: Vec<usize> = (n + 1..nvars).collect();
    // rows 0..m are constraints, row m is the simplex row, row m + 1 is the objective
    let mut a: Vec<Vec<i128>> = Vec::with_capacity(m + 2);
    let mut b: Vec<i128> = vec![0; m + 2];
    for row in rows {
        assert_eq!(row.len(), n, "constraint width");
        let mut r: Vec<i128> = row.iter().map(|&c| i128::from(c)).collect();
        r.push(-1);
        a.push(r);
    }
    let mut simplex_row = vec![-1i128; n];
    simplex_row.push(0);
    a.push(simplex_row);
    b[m] = 1;
    let mut obj = vec![0i128; n + 1];
    obj[n] = 1;
    a.push(obj);
    let mut d: i128 = 1;

    while let Some(e) = (0..=n).filter(|&j| a[m + 1][j] > 0).min_by_key(|&j| nonbasic[j]) {
        let mut leave: Option<usize> = None;
        for r in 0..=m {
            if a[r][e] < 0 {
                let better = match leave {
                    None => true,
                    Some(s) => {
                        // b_r / -a_re against b_s / -a_se
                        let lhs = b[r].checked_mul(-a[s][e])?;
                        let rhs = b[s].checked_mul(-a[r][e])?;
                        lhs < rhs || (lhs == rhs && basic[r] < basic[s])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
        }
        let l = leave.expect("bounded by the simplex row");
        let new_d = -a[l][e];
        for r in 0..m + 2 {
            if r == l {
                continue;
            }
            let f = a[r][e];
            let (row, pivot_row) = if r < l {
                let (lo, hi) = a.split_at_mut(l);
                (&mut lo[r], &hi[0])
            } else {
                let (lo, hi) = a.split_at_mut(r);
                (&mut hi[0], &lo[l])
            };
            for (j, v) in row.iter_mut().enumerate() {
                *v = if j == e {
                    -f
                } else {
                    exact_div(v.checked_mul(new_d)?.checked_add(f.checked_mul(pivot_row[j])?)?, d)?
                };
            }
            b[r] = exact_div(b[r].checked_mul(new_d)?.checked_add(f.checked_mul(b[l])?)?, d)?;
        }
        a[l][e] = -d;
        d = new_d;
        std::mem::swap(&mut basic[l], &mut nonbasic[e]);
    }

    let den = Rational::from_integer(BigInt::from(d));
    let mut x = vec![Rational::zero(); n];
    for (r, &v) in basic.iter().enumerate() {
        if v < n {
            x[v] = Rational::from_integer(BigInt::from(b[r])) / &den;
        }
    }
    let t = Rational::from_integer(BigInt::from(b[m + 1])) / den;
    Some((x, t))
}

fn exact_div(num: i128, d: i128) -> Option<i128> {
    debug_assert_eq!(num % d, 0, "integer pivoting must divide exactly");
    if num % d != 0 {
        return None;
    }
    Some(num / d)
}

/// Exchanges basic row `l` with nonbasic column `e`.
fn pivot(
    a: &mut [Vec<Rational>],
    b: &mut [Rational],
    c: &mut [Rational],
    z0: &mut Rational,
    l: usize,
    e: usize,
) {
    // solve row l for the entering variable
    let p = a[l][e].clone();
    let inv = -Rational::one() / &p;
    let mut row = std::mem::take(&mut a[l]);
    for (j, v) in row.iter_mut().enumerate() {
        if j == e {
            *v = -&inv;
        } else if !v.is_zero() {
            *v *= &inv;
        }
    }
    b[l] = &b[l] * &inv;
    // the leaving variable takes column e: row[e] is its coefficient
    row[e] = Rational::one() / &p;
    for (r, other) in a.iter_mut().enumerate() {
        if r == l || other.is_empty() || other[e].is_zero() {
            continue;
        }
        let f = other[e].clone();
        for (j, v) in other.iter_mut().enumerate() {
            if j == e {
                *v = &f * &row[e];
            } else if !row[j].is_zero() {
                *v += &f * &row[j];
            }
        }
        b[r] = &b[r] + &f * &b[l];
    }
    if !c[e].is_zero() {
        let f = c[e].clone();
        for (j, v) in c.iter_mut().enumerate() {
            if j == e {
                *v = &f * &row[e];
            } else if !row[j].is_zero() {
                *v += &f * &row[j];
            }
        }
        *z0 += &f * &b[l];
    }
    a[l] = row;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn check(rows: &[Vec<i64>], x: &[Rational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for r in rows {
            let v: Rational = r.iter().zip(x).map(|(c, v)| v * int(*c)).sum();
            assert!(v >= int(1), "row {r:?} at {x:?}");
        }
    }

    #[test]
    fn feasible_systems() {
        let rows = vec![vec![1, -1], vec![-1, 2]];
        let x = feasible_point(&rows, 2).unwrap();
        check(&rows, &x);

        let rows = vec![vec![3, -1, -1], vec![-1, 2, 0], vec![0, -1, 2]];
        let x = feasible_point(&rows, 3).unwrap();
        check(&rows, &x);

        // x1 < x3 < x2 together with 2x1 + x3 > 3x2 forces x1 > x2
        let rows = vec![vec![2, -3, 1], vec![-1, 0, 1], vec![0, 1, -1]];
        assert!(feasible_point(&rows, 3).is_none());
    }

    #[test]
    fn infeasible_pair() {
        let rows = vec![vec![1, -1], vec![-1, 1]];
        assert!(feasible_point(&rows, 2).is_none());
        // a form that is never positive on the orthant
        assert!(feasible_point(&[vec![-1, 0, -2]], 3).is_none());
    }

    #[test]
    fn optimum_balances_slacks() {
        // max t with x ≥ t, y ≥ t, x + y ≤ 1
        let (x, t) = max_min_slack(&[vec![1, 0], vec![0, 1]], 2);
        assert_eq!(t, crate::rational::ratio(1, 2));
        assert_eq!(x, vec![crate::rational::ratio(1, 2); 2]);
    }

    #[test]
    fn small_and_big_paths_agree() {
        let systems: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![3, -1, -1], vec![-1, 2, 0], vec![0, -1, 2]],
            vec![vec![2, -3, 1], vec![-1, 0, 1], vec![0, 1, -1]],
            vec![vec![5, -7, 2, 0], vec![-1, 4, -4, 1], vec![0, -2, 9, -6], vec![1, 1, -3, 1]],
        ];
        for rows in systems {
            let n = rows[0].len();
            assert_eq!(max_min_slack_small(&rows, n).unwrap(), max_min_slack(&rows, n));
        }
    }

    #[test]
    fn empty_system() {
        assert_eq!(feasible_point(&[], 3).unwrap(), vec![int(0); 3]);
    }
}
