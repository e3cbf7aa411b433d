//! Brute-force reference implementations shared by the integration tests.
//! They avoid the library's own elimination and simplex code.
#![allow(dead_code)]

use gkz_core::lattice::ints;
use gkz_core::toric::GitProblem;
use gkz_core::{Integer, Rational};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// Lexicographic `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // Inserting at `pos` moves the new element past `n - 1 - pos` others.
            out.push((q, even == ((n - 1 - pos) % 2 == 0)));
        }
    }
    out
}

/// Leibniz determinant of a square matrix given by rows.
pub fn leibniz(m: &[Vec<Integer>]) -> Integer {
    let n = m.len();
    let mut total = Integer::zero();
    for (p, even) in permutations(n) {
        let mut term = Integer::one();
        for (i, &j) in p.iter().enumerate() {
            term *= &m[i][j];
        }
        if even {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Gcd of all `k x k` minors of a matrix given by rows.
pub fn determinantal_divisor(m: &[Vec<Integer>], k: usize) -> Integer {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut g = Integer::zero();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let minor: Vec<Vec<Integer>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            g = g.gcd(&leibniz(&minor));
        }
    }
    g
}

/// Solves `sum_k x_k cols[k] = p` when the columns are linearly independent.
/// `None` if they are dependent or `p` is not in their span.
pub fn solve_independent(cols: &[Vec<Integer>], p: &[Rational]) -> Option<Vec<Rational>> {
    let r = p.len();
    let k = cols.len();
    // Augmented r x (k + 1) matrix.
    let mut m: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| Rational::from_integer(c[i].clone())).collect();
            row.push(p[i].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let found = (pivot_row..r).find(|&i| !m[i][col].is_zero())?;
        m.swap(pivot_row, found);
        let lead = m[pivot_row][col].clone();
        for x in m[pivot_row].iter_mut() {
            *x /= &lead;
        }
        for i in 0..r {
            if i != pivot_row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let src = m[pivot_row].clone();
                for (x, s) in m[i].iter_mut().zip(&src) {
                    *x -= &f * s;
                }
            }
        }
        pivot_row += 1;
    }
    if m[k..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// Rank of a list of integer vectors.
pub fn rank(vectors: &[Vec<Integer>], dim: usize) -> usize {
    let mut basis: Vec<Vec<Integer>> = Vec::new();
    for v in vectors {
        let p: Vec<Rational> = v.iter().cloned().map(Rational::from_integer).collect();
        if basis.is_empty() && v.iter().all(Zero::is_zero) {
            continue;
        }
        if solve_independent(&basis, &p).is_none() && v.iter().any(|x| !x.is_zero()) {
            basis.push(v.clone());
        }
        if basis.len() == dim {
            break;
        }
    }
    basis.len()
}

/// Caratheodory: `p` is in `pos(gens)` iff it is a nonnegative combination
/// of some linearly independent subfamily.
pub fn cone_contains(gens: &[Vec<Integer>], p: &[Rational]) -> bool {
    if p.iter().all(Zero::is_zero) {
        return true;
    }
    let r = p.len();
    for k in 1..=r.min(gens.len()) {
        for s in subsets(gens.len(), k) {
            let cols: Vec<Vec<Integer>> = s.iter().map(|&i| gens[i].clone()).collect();
            if let Some(x) = solve_independent(&cols, p) {
                if x.iter().all(|c| !c.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Rank of `K_0` by direct enumeration: the sum of `|det beta_sigma|` over
/// bases `sigma` whose cone contains `chi` in its interior. `None` if `chi`
/// lies on the boundary of some such cone.
pub fn k0_oracle(p: &GitProblem, chi: &[Rational]) -> Option<Integer> {
    let r = p.rank();
    let mut total = Integer::zero();
    for s in subsets(p.len(), r) {
        let cols: Vec<Vec<Integer>> = s.iter().map(|&i| p.column(i).to_vec()).collect();
        let Some(x) = solve_independent(&cols, chi) else {
            continue;
        };
        if x.iter().any(Signed::is_negative) {
            continue;
        }
        if x.iter().any(Zero::is_zero) {
            return None;
        }
        let rows: Vec<Vec<Integer>> = (0..r).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        total += leibniz(&rows).abs();
    }
    Some(total)
}

pub fn problem(rank: usize, cols: &[&[i64]]) -> GitProblem {
    GitProblem::from_i64(rank, cols).unwrap()
}

pub fn q(v: &[i64]) -> Vec<Rational> {
    ints(v).into_iter().map(Rational::from_integer).collect()
}

/// Small deterministic generator for sweeps that do not need shrinking.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % ((hi - lo + 1) as u64)) as i64
    }
}
