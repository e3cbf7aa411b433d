use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{feasible_point, Integer, Rational, RationalVector};

/// Position of a point relative to the cone `pos(G)` spanned by generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Membership {
    Outside,
    /// In the cone but on the relative boundary.
    Boundary,
    /// In the interior of the cone within its linear span.
    RelativeInterior,
}

impl Membership {
    pub fn is_member(self) -> bool {
        self != Membership::Outside
    }
}

fn q(x: &Integer) -> Rational {
    Rational::from_integer(x.clone())
}

/// Rows of the `dim x k` matrix whose columns are the generators.
fn generator_rows(gens: &[Vec<Integer>], dim: usize) -> Vec<Vec<Rational>> {
    (0..dim)
        .map(|i| gens.iter().map(|g| q(&g[i])).collect())
        .collect()
}

/// Decides `p in pos(G)` exactly. The empty cone is `{0}`, whose only point
/// counts as interior.
pub fn cone_member(gens: &[Vec<Integer>], p: &RationalVector) -> Membership {
    let dim = p.dim();
    let k = gens.len();
    for g in gens {
        assert_eq!(g.len(), dim, "generator dimension mismatch");
    }
    if k == 0 {
        return if p.is_zero() {
            Membership::RelativeInterior
        } else {
            Membership::Outside
        };
    }
    let rows = generator_rows(gens, dim);
    if feasible_point(&rows, &p.0, k).is_none() {
        return Membership::Outside;
    }
    // p is a strictly positive combination iff s p = G (1 + a') for some
    // a' >= 0, s >= 0.
    let mut ext = rows.clone();
    let mut rhs = Vec::with_capacity(dim);
    for (i, row) in ext.iter_mut().enumerate() {
        let total: Rational = row.iter().fold(Rational::zero(), |acc, x| acc + x);
        row.push(-p.0[i].clone());
        rhs.push(-total);
    }
    if feasible_point(&ext, &rhs, k + 1).is_some() {
        Membership::RelativeInterior
    } else {
        Membership::Boundary
    }
}

/// A covector `c` with `<g, c> > 0` for every generator, scaled to a primitive
/// integer vector. `None` exactly when some nonzero nonnegative combination of
/// the generators vanishes.
pub fn strictly_positive_functional(gens: &[Vec<Integer>], dim: usize) -> Option<RationalVector> {
    let k = gens.len();
    if k == 0 {
        return Some(RationalVector::zero(dim));
    }
    // Variables: c+ (dim), c- (dim), surplus (k).
    let n = 2 * dim + k;
    let mut rows = Vec::with_capacity(k);
    for (i, g) in gens.iter().enumerate() {
        let mut row = alloc::vec![Rational::zero(); n];
        for (j, x) in g.iter().enumerate() {
            row[j] = q(x);
            row[dim + j] = -q(x);
        }
        row[2 * dim + i] = -Rational::one();
        rows.push(row);
    }
    let b = alloc::vec![Rational::one(); k];
    let x = feasible_point(&rows, &b, n)?;
    let c = RationalVector((0..dim).map(|j| &x[j] - &x[dim + j]).collect());
    let prim = c.primitive_direction()?;
    Some(RationalVector::from_integers(&prim))
}

/// A primitive nonzero `a >= 0` with `sum a_i g_i = 0`, if one exists.
pub fn nonnegative_relation(gens: &[Vec<Integer>], dim: usize) -> Option<Vec<Integer>> {
    let k = gens.len();
    if k == 0 {
        return None;
    }
    let mut rows = generator_rows(gens, dim);
    let mut b = alloc::vec![Rational::zero(); dim];
    rows.push(alloc::vec![Rational::one(); k]);
    b.push(Rational::one());
    let a = feasible_point(&rows, &b, k)?;
    RationalVector(a).primitive_direction()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ints, pair};

    fn gens(v: &[&[i64]]) -> Vec<Vec<Integer>> {
        v.iter().map(|g| ints(g)).collect()
    }

    #[test]
    fn membership_examples() {
        let g = gens(&[&[1, 0], &[0, 1]]);
        assert_eq!(cone_member(&g, &RationalVector::from_i64(&[1, 1])), Membership::RelativeInterior);
        assert_eq!(cone_member(&g, &RationalVector::from_i64(&[1, 0])), Membership::Boundary);
        let g = gens(&[&[1, 1], &[0, 1]]);
        assert_eq!(cone_member(&g, &RationalVector::from_i64(&[2, 1])), Membership::Outside);
    }

    #[test]
    fn lower_dimensional_cones() {
        let g = gens(&[&[1, 1]]);
        assert_eq!(cone_member(&g, &RationalVector::from_i64(&[3, 3])), Membership::RelativeInterior);
        assert_eq!(cone_member(&g, &RationalVector::from_i64(&[0, 0])), Membership::Boundary);
        assert_eq!(cone_member(&[], &RationalVector::from_i64(&[0, 0])), Membership::RelativeInterior);
        assert_eq!(cone_member(&[], &RationalVector::from_i64(&[0, 1])), Membership::Outside);
        // A full line: the origin is interior.
        let g = gens(&[&[1], &[-1]]);
        assert_eq!(cone_member(&g, &RationalVector::from_i64(&[0])), Membership::RelativeInterior);
    }

    #[test]
    fn functional_examples() {
        let g = gens(&[&[1, 0], &[0, 1], &[1, 1]]);
        let c = strictly_positive_functional(&g, 2).unwrap();
        for v in &g {
            assert!(c.pair(v) > Rational::zero());
        }
        assert!(strictly_positive_functional(&gens(&[&[1], &[-1]]), 1).is_none());

        let g = gens(&[&[1, 0], &[1, 0], &[1, 0], &[-3, 1]]);
        let c = strictly_positive_functional(&g, 2).unwrap();
        for v in &g {
            assert!(c.pair(v) > Rational::zero());
        }
        let c14 = ints(&[1, 4]);
        for v in &g {
            assert!(pair(v, &c14) > Integer::zero());
        }
    }

    #[test]
    fn relation_examples() {
        assert_eq!(nonnegative_relation(&gens(&[&[1], &[-1]]), 1), Some(ints(&[1, 1])));
        assert_eq!(nonnegative_relation(&gens(&[&[1, 0], &[0, 1]]), 2), None);
        let rel = nonnegative_relation(&gens(&[&[2, 0], &[-1, 1], &[-1, -1], &[0, 1]]), 2).unwrap();
        assert!(rel.iter().all(|x| *x >= Integer::zero()));
    }
}
