//! Exact feasibility of `A λ = b, λ >= 0` by phase-one simplex over the
//! rationals with Bland's rule (so it terminates on degenerate input).

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Returns a nonnegative solution of `A λ = b` if one exists.
///
/// `a` is row-major with `b.len()` rows, all of the same length.
pub fn feasible_nonnegative(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = b.len();
    assert_eq!(a.len(), m, "row count mismatch");
    let nvars = a.first().map_or(0, Vec::len);
    assert!(
        a.iter().all(|r| r.len() == nvars),
        "ragged constraint matrix"
    );

    // Columns: original variables, then one artificial per row. Last column is the rhs.
    let width = nvars + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r = Vec::with_capacity(width);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            r.push(if k == i {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (nvars..nvars + m).collect();

    // Reduced costs of the phase-one objective (minimize the artificial sum).
    let mut cost = vec![Rational::zero(); width];
    for r in &t {
        for j in 0..nvars {
            cost[j] -= &r[j];
        }
        cost[width - 1] -= &r[width - 1];
    }

    while let Some(enter) = (0..nvars + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = &r[width - 1] / &r[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase-one objective is bounded below by zero.
        let (row, _) = leave.expect("phase-one objective cannot be unbounded");
        pivot(&mut t, &mut cost, row, enter);
        basis[row] = enter;
    }

    // Objective value is -cost[rhs].
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); nvars];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < nvars {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let p = t[row][col].clone();
    for v in t[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

/// Writes `target` as a convex combination of `points`, if possible.
pub fn convex_combination(target: &[Rational], points: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    if points.is_empty() {
        return None;
    }
    let d = target.len();
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|k| points.iter().map(|p| p[k].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); points.len()]);
    let mut b = target.to_vec();
    b.push(Rational::one());
    feasible_nonnegative(&a, &b)
}
