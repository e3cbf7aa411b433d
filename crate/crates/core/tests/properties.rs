//! Invariants checked on generated inputs.

mod common;

use std::cmp::Ordering;

use common::{determinantal_divisor, leibniz};
use gkz_core::curves::{
    canonical_subsets, collection_count_pn, fm_weight, hm_weight_pn, integer_weights, is_empty_pn,
    pgl2_count, pgl2_linearizable, FmLinearization, MarkSubset,
};
use gkz_core::lattice::{hyperplane_coordinates, is_primitive, kernel_basis, pair, smith, IntegerMatrix};
use gkz_core::orlov::{orlov_report, CiSpec, OrlovCase};
use gkz_core::toric::{
    exceptional_collection, flatten, generic_path, GitProblem, SodTree, ValidatedProblem,
};
use gkz_core::{Integer, Rational, RationalVector};
use num_traits::{One, Signed, Zero};
use proptest::collection::vec;
use proptest::prelude::*;

fn to_int(m: &[Vec<i64>]) -> Vec<Vec<Integer>> {
    m.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| vec(vec(-5i64..=5, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in matrix()) {
        let rows = to_int(&m);
        let cols = rows[0].len();
        let a = IntegerMatrix::from_rows(&rows, cols);
        let s = smith(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        let d = s.diagonal();
        let rank = s.rank();
        prop_assert!(d[..rank].iter().all(|x| x.is_positive()));
        prop_assert!(d[rank..].iter().all(|x| x.is_zero()));
        for w in d[..rank].windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let u_rows: Vec<Vec<Integer>> = (0..s.u.rows()).map(|i| s.u.row(i)).collect();
        let v_rows: Vec<Vec<Integer>> = (0..s.v.rows()).map(|i| s.v.row(i)).collect();
        prop_assert_eq!(leibniz(&u_rows).abs(), Integer::one());
        prop_assert_eq!(leibniz(&v_rows).abs(), Integer::one());
    }

    #[test]
    fn kernel_basis_is_saturated(m in matrix()) {
        let rows = to_int(&m);
        let cols = rows[0].len();
        let basis = kernel_basis(&IntegerMatrix::from_rows(&rows, cols));
        for b in &basis {
            for row in &rows {
                prop_assert!(pair(row, b).is_zero());
            }
        }
        if !basis.is_empty() {
            // The basis spans a saturated sublattice iff its maximal minors
            // are coprime.
            prop_assert_eq!(determinantal_divisor(&basis, basis.len()), Integer::one());
        }
    }

    #[test]
    fn hyperplane_coordinates_round_trip(
        lambda in vec(-6i64..=6, 1..=4),
        coeffs in vec(-4i64..=4, 4),
    ) {
        let lambda: Vec<Integer> = lambda.into_iter().map(Integer::from).collect();
        prop_assume!(is_primitive(&lambda));
        let h = hyperplane_coordinates(&lambda).unwrap();
        prop_assert_eq!(h.rank(), lambda.len() - 1);
        let c: Vec<Integer> = coeffs[..h.rank()].iter().map(|&x| Integer::from(x)).collect();
        let v = h.lift(&c);
        prop_assert!(pair(&v, &lambda).is_zero());
        prop_assert_eq!(h.coordinates(&v).unwrap(), c);
    }
}

/// A projective, full-rank problem and a generic character in a nonempty
/// chamber, or `None`.
fn toric_case(r: usize, cols: &[Vec<i64>], weights: &[i64]) -> Option<(ValidatedProblem, RationalVector)> {
    let p = GitProblem::new(r, to_int(cols)).ok()?;
    let v = p.validate().ok()?;
    if v.span_rank() != r {
        return None;
    }
    let mut chi = vec![Integer::zero(); r];
    for (c, &w) in cols.iter().zip(weights) {
        for (x, &y) in chi.iter_mut().zip(c) {
            *x += Integer::from(w * y);
        }
    }
    let chi = RationalVector::from_integers(&chi);
    match v.chamber_signature(&chi) {
        Ok(sig) if !sig.is_empty_chamber() => Some((v, chi)),
        _ => None,
    }
}

fn toric_input() -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<i64>)> {
    (1usize..=3)
        .prop_flat_map(|r| (Just(r), r..=7usize))
        .prop_flat_map(|(r, n)| (Just(r), vec(vec(-3i64..=3, r), n), vec(0i64..=2, n)))
}

/// Every crossing in the tree: `mu` three ways, and the chamber being
/// decomposed on the same side of the wall as the anticanonical character.
fn check_crossings(tree: &SodTree) -> Result<(), TestCaseError> {
    let SodTree::Node { problem, character, seed, blocks } = tree else {
        return Ok(());
    };
    let v = problem.validate().unwrap();
    let path = generic_path(&v, character, *seed).unwrap();
    let anti = v.anticanonical();
    let start = RationalVector::from_integers(&anti);
    let direction = path.through.sub(&start);
    let mut previous = Rational::one();
    for (k, block) in blocks.iter().enumerate() {
        let c = &block.crossing.crossing;
        prop_assert_eq!(&path.crossings[k].crossing.lambda, &c.lambda);
        prop_assert_eq!(&c.mu, &(&c.nu_plus - &c.nu_minus));
        prop_assert_eq!(&c.mu, &pair(&anti, &c.lambda));
        let t = (&previous + &block.crossing.t) / Rational::from_integer(2.into());
        let near = start.along(&direction, &t);
        prop_assert!(near.pair(&c.lambda).is_negative());
        prop_assert!(pair(&anti, &c.lambda).is_negative());
        previous = block.crossing.t.clone();
        check_crossings(&block.child)?;
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn toric_decomposition_invariants((r, cols, weights) in toric_input()) {
        let case = toric_case(r, &cols, &weights);
        prop_assume!(case.is_some());
        let (v, chi) = case.unwrap();
        let d = Integer::zero();
        let tree = exceptional_collection(&v, &chi, &d, 0).unwrap();
        let k0 = v.k0_rank(&chi).unwrap();
        prop_assert_eq!(tree.leaf_count(), k0.clone());
        prop_assert_eq!(Integer::from(flatten(&tree).len()), k0.clone());
        for seed in [1, 2] {
            prop_assert_eq!(exceptional_collection(&v, &chi, &d, seed).unwrap().leaf_count(), k0.clone());
        }
        let five = chi.scale(&Rational::from_integer(5.into()));
        prop_assert_eq!(exceptional_collection(&v, &five, &d, 0).unwrap().leaf_count(), k0);
        check_crossings(&tree)?;
    }
}

fn weights(n: usize) -> impl Strategy<Value = Vec<i64>> {
    vec(1i64..=6, n)
}

fn rationals(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

fn generic(d: &[Rational]) -> bool {
    !is_empty_pn(d)
        && canonical_subsets(d.len())
            .iter()
            .all(|i| i.balance(d).cmp(&Rational::zero()) != Ordering::Equal)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn curve_counts_are_balanced_and_symmetric(
        d in (4usize..=6).prop_flat_map(weights),
        shift in 0usize..6,
        num in 1i64..=7,
        den in 1i64..=5,
    ) {
        let d = rationals(&d);
        prop_assume!(generic(&d));
        let count = collection_count_pn(&d).unwrap();
        prop_assert!(count.is_balanced());

        let mut rotated = d.clone();
        rotated.rotate_left(shift % d.len());
        rotated.swap(0, 1);
        prop_assert_eq!(collection_count_pn(&rotated).unwrap(), count);

        let s = Rational::new(num.into(), den.into());
        let scaled: Vec<Rational> = d.iter().map(|x| x * &s).collect();
        prop_assert_eq!(collection_count_pn(&scaled).unwrap(), count);

        if pgl2_linearizable(&d) {
            prop_assert_eq!(2 * pgl2_count(&d).unwrap(), count.total());
        }
    }

    #[test]
    fn hm_weight_is_antisymmetric(d in (3usize..=7).prop_flat_map(weights), bits in any::<u32>()) {
        let d = rationals(&d);
        let n = d.len();
        let i = MarkSubset::from_bits(n, bits & ((1 << n) - 1));
        prop_assert_eq!(hm_weight_pn(&d, i), -hm_weight_pn(&d, i.complement()));
        prop_assert_eq!(i.canonical(), i.complement().canonical());
    }

    #[test]
    fn fm_weight_without_divisors_is_hm_weight(
        d in (3usize..=7).prop_flat_map(weights),
        bits in any::<u32>(),
        j in 0usize..3,
    ) {
        let d = rationals(&d);
        let n = d.len();
        let lin = FmLinearization::new(j, d.clone(), Default::default()).unwrap();
        let i = MarkSubset::from_bits(n, bits & ((1 << n) - 1));
        prop_assert_eq!(fm_weight(&lin, i), hm_weight_pn(&d, i));
    }

    #[test]
    fn emptiness_is_a_single_heavy_mark(d in (3usize..=7).prop_flat_map(weights)) {
        let q = rationals(&d);
        let total: i64 = d.iter().sum();
        prop_assert_eq!(is_empty_pn(&q), d.iter().any(|&x| 2 * x > total));
    }
}

#[test]
fn orlov_sweep() {
    let degrees_up_to = |c: usize| -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for _ in 0..c {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (1..=5).map(move |d| {
                        let mut w = v.clone();
                        w.push(d);
                        w
                    })
                })
                .collect();
        }
        out
    };
    for n in 1..=8 {
        for c in 0..=3 {
            for degrees in degrees_up_to(c) {
                let spec = CiSpec::new(n, degrees.clone()).unwrap();
                let report = orlov_report(&spec, &Integer::zero()).unwrap();
                let a = n as i64 - degrees.iter().map(|&d| d as i64).sum::<i64>();
                assert_eq!(report.engine_mu, Integer::from(a));
                let expected = match a.cmp(&0) {
                    Ordering::Greater => OrlovCase::SigmaSideLarger,
                    Ordering::Equal => OrlovCase::Equivalence,
                    Ordering::Less => OrlovCase::LgSideLarger,
                };
                assert_eq!(report.case, expected);
                let len = report.sigma_side_objects.len() + report.lg_side_objects.len();
                assert_eq!(len as i64, a.abs());
            }
        }
    }
}

#[test]
fn integer_weights_clear_denominators() {
    let d = vec![Rational::new(1.into(), 2.into()), Rational::new(3.into(), 4.into())];
    assert_eq!(integer_weights(&d), vec![Integer::from(2), Integer::from(3)]);
}
