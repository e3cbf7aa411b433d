use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::Rational;

/// Finds some `x >= 0` with `A x = b`, or `None` if the system is infeasible.
///
/// `a` is given by rows, each of length `n`. This is phase one of the
/// simplex method on a dense exact tableau with Bland's pivoting rule, so it
/// always terminates.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let width = n + m + 1;
    let rhs = n + m;

    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n);
        let flip = bi.is_negative();
        let mut t = alloc::vec![Rational::zero(); width];
        for (j, x) in row.iter().enumerate() {
            t[j] = if flip { -x } else { x.clone() };
        }
        t[n + i] = Rational::from_integer(1.into());
        t[rhs] = if flip { -bi } else { bi.clone() };
        tab.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = alloc::vec![Rational::zero(); width];
    for t in &tab {
        for j in 0..n {
            cost[j] -= &t[j];
        }
        cost[rhs] -= &t[rhs];
    }

    while let Some(enter) = (0..rhs).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][rhs] / &tab[i][enter];
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = &tab[l][rhs] / &tab[l][enter];
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // The phase-one objective is bounded below by zero, so some row has a
        // positive entry in an improving column.
        let l = leave.expect("phase one is bounded");
        pivot(&mut tab, &mut cost, l, enter);
        basis[l] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = alloc::vec![Rational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = tab[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], l: usize, e: usize) {
    let p = tab[l][e].clone();
    for x in tab[l].iter_mut() {
        *x /= &p;
    }
    let prow = tab[l].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == l || row[e].is_zero() {
            continue;
        }
        let f = row[e].clone();
        for (x, px) in row.iter_mut().zip(&prow) {
            if !px.is_zero() {
                *x -= &f * px;
            }
        }
    }
    if !cost[e].is_zero() {
        let f = cost[e].clone();
        for (x, px) in cost.iter_mut().zip(&prow) {
            if !px.is_zero() {
                *x -= &f * px;
            }
        }
    }
}
