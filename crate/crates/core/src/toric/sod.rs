use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::Zero;

use super::path::{generic_path, PathCrossing, DEFAULT_SEED_ATTEMPTS};
use super::{GitProblem, ToricError, ValidatedProblem, WallCrossing};
use crate::lattice::{HyperplaneCoordinates, Integer, RationalVector};

/// One wall on the path: `|mu|` twisted copies of the wall problem's category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallBlock {
    pub crossing: PathCrossing,
    pub twists: Vec<Integer>,
    /// The quotient of the fixed locus, in coordinates on `lambda^perp`.
    pub subproblem: GitProblem,
    pub sub_character: RationalVector,
    /// The decomposition of the wall problem, shared by every copy.
    pub child: Box<SodTree>,
}

impl WallBlock {
    /// `(twist, tree)` for each copy, in semiorthogonal order.
    pub fn copies(&self) -> impl Iterator<Item = (&Integer, &SodTree)> {
        self.twists.iter().map(move |j| (j, &*self.child))
    }
}

/// Nested semiorthogonal decomposition produced by wall crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SodTree {
    /// Rank zero with no columns: the quotient is a point.
    UnitLeaf,
    /// The character lies outside the effective cone.
    Empty,
    Node {
        problem: GitProblem,
        character: RationalVector,
        /// Seed of the path that succeeded.
        seed: u64,
        blocks: Vec<WallBlock>,
    },
}

impl SodTree {
    /// Number of exceptional objects after flattening.
    pub fn leaf_count(&self) -> Integer {
        match self {
            SodTree::UnitLeaf => Integer::from(1),
            SodTree::Empty => Integer::zero(),
            SodTree::Node { blocks, .. } => blocks
                .iter()
                .map(|b| b.child.leaf_count() * Integer::from(b.twists.len()))
                .sum(),
        }
    }

    /// Every crossing in the tree, each wall listed once per distinct node.
    pub fn crossings(&self) -> Vec<(&GitProblem, &PathCrossing)> {
        let mut out = Vec::new();
        self.collect_crossings(&mut out);
        out
    }

    fn collect_crossings<'a>(&'a self, out: &mut Vec<(&'a GitProblem, &'a PathCrossing)>) {
        if let SodTree::Node {
            problem, blocks, ..
        } = self
        {
            for b in blocks {
                out.push((problem, &b.crossing));
                b.child.collect_crossings(out);
            }
        }
    }
}

/// The wall problem at `chi_0`: columns `beta_F` and `chi_0` written in the
/// basis of `lambda^perp`.
pub fn wall_subproblem(
    p: &ValidatedProblem,
    crossing: &WallCrossing,
    chi_0: &RationalVector,
) -> Result<(ValidatedProblem, RationalVector), ToricError> {
    let h = &crossing.coordinates;
    let mut columns = Vec::with_capacity(crossing.fixed.len());
    for &i in &crossing.fixed {
        columns.push(h.coordinates(p.column(i))?);
    }
    let labels = crossing.fixed.iter().map(|&i| p.labels()[i].clone()).collect();
    let character = h.rational_coordinates(chi_0)?;
    let sub = GitProblem::with_labels(h.rank(), columns, labels)?.validate()?;
    if sub.rank() > 0 {
        if sub.span_rank() != sub.rank() {
            return Err(ToricError::DegenerateWallPoint);
        }
        match sub.chamber_signature(&character) {
            Ok(sig) if !sig.is_empty_chamber() => {}
            _ => return Err(ToricError::DegenerateWallPoint),
        }
    }
    Ok((sub, character))
}

/// Decomposes the quotient at `chi` along a generic path, recursing into
/// the wall problems. Seeds `seed, seed + 1, ...` are tried in turn when a
/// path turns out to be degenerate.
pub fn exceptional_collection(
    p: &ValidatedProblem,
    chi: &RationalVector,
    d: &Integer,
    seed: u64,
) -> Result<SodTree, ToricError> {
    if p.rank() == 0 {
        return Ok(if p.is_empty() {
            SodTree::UnitLeaf
        } else {
            SodTree::Empty
        });
    }
    let mut last = ToricError::DegeneratePath;
    for s in seed..seed + DEFAULT_SEED_ATTEMPTS {
        match collection_along_path(p, chi, d, seed, s) {
            Ok(tree) => return Ok(tree),
            Err(
                e @ (ToricError::DegeneratePath
                | ToricError::DegenerateWallPoint
                | ToricError::SeedsExhausted { .. }),
            ) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(ToricError::SeedsExhausted {
        first_seed: seed,
        attempts: DEFAULT_SEED_ATTEMPTS,
        last: Box::new(last),
    })
}

fn collection_along_path(
    p: &ValidatedProblem,
    chi: &RationalVector,
    d: &Integer,
    base_seed: u64,
    seed: u64,
) -> Result<SodTree, ToricError> {
    let path = generic_path(p, chi, seed)?;
    if path.crossings.is_empty() {
        return Ok(SodTree::Empty);
    }
    let mut blocks = Vec::with_capacity(path.crossings.len());
    for crossing in path.crossings {
        let (sub, sub_chi) = wall_subproblem(p, &crossing.crossing, &crossing.point)?;
        let child = exceptional_collection(&sub, &sub_chi, d, base_seed)?;
        blocks.push(WallBlock {
            twists: crossing.crossing.twist_range(d),
            crossing,
            subproblem: sub.problem().clone(),
            sub_character: sub_chi,
            child: Box::new(child),
        });
    }
    Ok(SodTree::Node {
        problem: p.problem().clone(),
        character: chi.clone(),
        seed,
        blocks,
    })
}

/// One step of an exceptional object's history.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLink {
    /// The one-parameter subgroup, in the lattice of its own level.
    pub lambda: Vec<Integer>,
    /// Fixed columns, as indices of the root problem.
    pub fixed: Vec<usize>,
    pub twist: Integer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalObject {
    pub chain: Vec<ChainLink>,
    /// `sum_k j_k chi_tw,k`, with each twist character carried back to the
    /// root lattice through the hyperplane bases.
    pub character: Vec<Integer>,
}

/// Depth-first list of the leaves, in block order and twist order.
pub fn flatten(tree: &SodTree) -> Vec<ExceptionalObject> {
    let (rank, n) = match tree {
        SodTree::Node { problem, .. } => (problem.rank(), problem.len()),
        _ => (0, 0),
    };
    let mut out = Vec::new();
    let origin: Vec<usize> = (0..n).collect();
    let mut walk = Walk {
        lifts: Vec::new(),
        chain: Vec::new(),
        out: &mut out,
    };
    walk.visit(tree, &origin, alloc::vec![Integer::zero(); rank]);
    out
}

struct Walk<'a, 'b> {
    lifts: Vec<&'a HyperplaneCoordinates>,
    chain: Vec<ChainLink>,
    out: &'b mut Vec<ExceptionalObject>,
}

impl<'a> Walk<'a, '_> {
    fn to_root(&self, v: &[Integer]) -> Vec<Integer> {
        let mut v = v.to_vec();
        for h in self.lifts.iter().rev() {
            v = h.lift(&v);
        }
        v
    }

    fn visit(&mut self, tree: &'a SodTree, origin: &[usize], acc: Vec<Integer>) {
        match tree {
            SodTree::Empty => {}
            SodTree::UnitLeaf => self.out.push(ExceptionalObject {
                chain: self.chain.clone(),
                character: acc,
            }),
            SodTree::Node { blocks, .. } => {
                for block in blocks {
                    let wc = &block.crossing.crossing;
                    let lifted = self.to_root(wc.twist_lift());
                    let fixed: Vec<usize> = wc.fixed.iter().map(|&i| origin[i]).collect();
                    for (j, child) in block.copies() {
                        let next: Vec<Integer> =
                            acc.iter().zip(&lifted).map(|(a, l)| a + j * l).collect();
                        self.chain.push(ChainLink {
                            lambda: wc.lambda.clone(),
                            fixed: fixed.clone(),
                            twist: j.clone(),
                        });
                        self.lifts.push(&wc.coordinates);
                        self.visit(child, &fixed, next);
                        self.lifts.pop();
                        self.chain.pop();
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ints;

    fn validated(rank: usize, cols: &[&[i64]]) -> ValidatedProblem {
        GitProblem::from_i64(rank, cols).unwrap().validate().unwrap()
    }

    fn collection(p: &ValidatedProblem, chi: &[i64]) -> SodTree {
        exceptional_collection(p, &RationalVector::from_i64(chi), &Integer::zero(), 0).unwrap()
    }

    #[test]
    fn p2_tree() {
        let p = validated(1, &[&[1], &[1], &[1]]);
        let tree = collection(&p, &[1]);
        let SodTree::Node { blocks, .. } = &tree else { panic!("expected a node") };
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].twists, ints(&[-2, -1, 0]));
        assert_eq!(*blocks[0].child, SodTree::UnitLeaf);
        let objs = flatten(&tree);
        let twists: Vec<Integer> = objs.iter().map(|o| o.chain[0].twist.clone()).collect();
        assert_eq!(twists, ints(&[-2, -1, 0]));
        let chars: Vec<Vec<Integer>> = objs.iter().map(|o| o.character.clone()).collect();
        assert_eq!(chars, alloc::vec![ints(&[2]), ints(&[1]), ints(&[0])]);
    }

    #[test]
    fn blowup_tree_shapes() {
        let p = validated(2, &[&[1, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let tree = collection(&p, &[4, 3]);
        let SodTree::Node { blocks, .. } = &tree else { panic!("expected a node") };
        let shape: Vec<(usize, Integer)> =
            blocks.iter().map(|b| (b.twists.len(), b.child.leaf_count())).collect();
        assert_eq!(shape, alloc::vec![(1, 1.into()), (3, 1.into())]);
        assert_eq!(flatten(&tree).len(), 4);

        let tree = collection(&p, &[2, 1]);
        let SodTree::Node { blocks, .. } = &tree else { panic!("expected a node") };
        let shape: Vec<(usize, Integer)> =
            blocks.iter().map(|b| (b.twists.len(), b.child.leaf_count())).collect();
        assert_eq!(shape, alloc::vec![(2, 2.into())]);
        assert_eq!(flatten(&tree).len(), 4);
    }

    #[test]
    fn blowup_first_wall_problem() {
        let p = validated(2, &[&[1, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let wc = crate::toric::wall_crossing(&p, &ints(&[-1, 1])).unwrap();
        let (sub, chi) = wall_subproblem(&p, &wc, &RationalVector::from_i64(&[1, 1])).unwrap();
        assert_eq!(sub.rank(), 1);
        assert_eq!(sub.columns(), &[ints(&[1])]);
        assert_eq!(chi, RationalVector::from_i64(&[1]));
    }

    #[test]
    fn product_wall_problem_is_a_line() {
        let p = validated(2, &[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]);
        let wc = crate::toric::wall_crossing(&p, &ints(&[-1, 0])).unwrap();
        let (sub, chi) = wall_subproblem(&p, &wc, &RationalVector::from_i64(&[0, 1])).unwrap();
        assert_eq!(sub.columns(), &[ints(&[1]), ints(&[1])]);
        assert_eq!(chi, RationalVector::from_i64(&[1]));
    }

    #[test]
    fn unit_and_empty() {
        let p = GitProblem::new(0, Vec::new()).unwrap().validate().unwrap();
        let tree = collection(&p, &[]);
        assert_eq!(tree, SodTree::UnitLeaf);
        let objs = flatten(&tree);
        assert_eq!(objs.len(), 1);
        assert!(objs[0].chain.is_empty());

        let p = validated(1, &[&[1], &[1]]);
        assert_eq!(collection(&p, &[-1]), SodTree::Empty);
        assert!(flatten(&SodTree::Empty).is_empty());
    }

    #[test]
    fn weighted_projective_counts() {
        let p = validated(1, &[&[1], &[1], &[2]]);
        assert_eq!(flatten(&collection(&p, &[1])).len(), 4);
        let p = validated(1, &[&[1], &[2], &[3]]);
        assert_eq!(flatten(&collection(&p, &[1])).len(), 6);
    }
}
