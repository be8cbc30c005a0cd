//! Exact feasibility of `A x = b, x >= 0` by the two-phase simplex method's
//! first phase, over arbitrary-precision rationals with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    BigRational::from_integer(BigInt::from(v))
}

/// Returns a non-negative solution of `A x = b`, or `None` if there is none.
///
/// `a` is row-major with `b.len()` rows.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = b.len();
    assert_eq!(a.len(), m, "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    // Tableau [A | I | b] with every row's right-hand side made non-negative.
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n, "ragged matrix");
        let flip = b[i].is_negative();
        let mut row = Vec::with_capacity(width);
        for v in &a[i] {
            row.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            row.push(if k == i { Q::one() } else { Q::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-one objective (sum of artificials), and its value.
    let mut cost: Vec<Q> = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded direction cannot occur for a bounded-below objective.
            unreachable!("phase-one objective is bounded below by zero");
        };
        pivot(&mut t, &mut cost, r, enter);
        basis[r] = enter;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Q>], cost: &mut [Q], r: usize, c: usize) {
    let p = t[r][c].clone();
    for v in t[r].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    fn vecq(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn simple_feasible() {
        let a = mat(&[&[1, 1]]);
        let x = feasible_point(&a, &vecq(&[3])).unwrap();
        assert_eq!(&x[0] + &x[1], q(3));
    }

    #[test]
    fn simple_infeasible() {
        // x + y = 1 and x + y = 2.
        let a = mat(&[&[1, 1], &[1, 1]]);
        assert!(feasible_point(&a, &vecq(&[1, 2])).is_none());
        // x = -1 with x >= 0.
        assert!(feasible_point(&mat(&[&[1]]), &vecq(&[-1])).is_none());
    }

    #[test]
    fn fractional_solution() {
        // 2x = 1.
        let x = feasible_point(&mat(&[&[2]]), &vecq(&[1])).unwrap();
        assert_eq!(x[0], BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling instance, as a feasibility system.
        let a = mat(&[&[1, 0, 0, 1, -32, -4, 36], &[0, 1, 0, 4, -24, -1, 6], &[0, 0, 1, 0, 1, 0, 0]]);
        let x = feasible_point(&a, &vecq(&[0, 0, 1])).unwrap();
        for (row, rhs) in a.iter().zip(vecq(&[0, 0, 1])) {
            let lhs: Q = row.iter().zip(&x).map(|(c, v)| c * v).sum();
            assert_eq!(lhs, rhs);
        }
    }
}
