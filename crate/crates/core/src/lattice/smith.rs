use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::{Integer, IntegerMatrix};

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ...`, all nonzero entries positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let k = self.d.rows().min(self.d.cols());
        (0..k).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }

    pub fn diagonal(&self) -> alloc::vec::Vec<Integer> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(&d, t..m, t..n) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot survived; promote it.
                let (pi, pj) = smallest_in_cross(&d, t);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match offender {
                Some(i) => {
                    let one = Integer::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithForm { d, u, v }
}

fn smallest_entry(
    d: &IntegerMatrix,
    rows: core::ops::Range<usize>,
    cols: core::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if d[(i, j)].is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(d: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        if !d[(i, j)].is_zero()
            && (d[*best].is_zero() || d[(i, j)].abs() < d[*best].abs())
        {
            *best = (i, j);
        }
    };
    for i in t..d.rows() {
        consider(i, t, &mut best);
    }
    for j in t..d.cols() {
        consider(t, j, &mut best);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::determinant;

    fn check(a: &IntegerMatrix) -> SmithForm {
        let s = smith(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(determinant(&s.u).abs(), Integer::from(1));
        assert_eq!(determinant(&s.v).abs(), Integer::from(1));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn examples() {
        let s = check(&IntegerMatrix::from_i64_rows(&[&[2]]));
        assert_eq!(s.d, IntegerMatrix::from_i64_rows(&[&[2]]));
        assert_eq!(s.u, IntegerMatrix::identity(1));
        assert_eq!(s.v, IntegerMatrix::identity(1));

        let s = check(&IntegerMatrix::identity(3));
        assert_eq!(s.d, IntegerMatrix::identity(3));

        let s = check(&IntegerMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.diagonal(), crate::lattice::ints(&[2, 4]));
    }

    #[test]
    fn rectangular_and_degenerate() {
        check(&IntegerMatrix::zeros(2, 3));
        check(&IntegerMatrix::zeros(0, 3));
        check(&IntegerMatrix::from_i64_rows(&[&[1, 2]]));
        let s = check(&IntegerMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), crate::lattice::ints(&[1, 6]));
        check(&IntegerMatrix::from_i64_rows(&[&[0, 6, -4], &[9, 3, 0], &[-3, 7, 11]]));
    }
}
