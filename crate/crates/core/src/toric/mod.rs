//! Variation of GIT for a torus `G = G_m^r` acting linearly on `A^n`.
//!
//! The action is recorded by its weight columns `beta_1, ..., beta_n` in
//! `Z^r`. A character `chi` picks the quotient; the semistable locus depends
//! only on which cones `pos(beta_S)` contain `chi`, and the chambers of the
//! secondary fan are the regions where the set of simplicial cones
//! containing `chi` is constant.

mod fan;
mod path;
mod sod;
mod walls;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::lattice::{
    cone_member, nonnegative_relation, solve_square, strictly_positive_functional,
    sublattice_index, Integer, IntegerMatrix, LatticeError, Membership, Rational, RationalVector,
};

pub use fan::{chamber_graph, ChamberGraph, ChamberNode, GraphEdge};
pub use path::{generic_path, perturbation, GenericPath, PathCrossing, DEFAULT_SEED_ATTEMPTS};
pub use sod::{
    exceptional_collection, flatten, wall_subproblem, ChainLink, ExceptionalObject, SodTree,
    WallBlock,
};
pub use walls::{candidate_hyperplanes, wall_crossing, Hyperplane, WallCrossing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToricError {
    ZeroColumn(usize),
    /// A nonzero nonnegative relation among the columns, i.e. a nonconstant
    /// invariant monomial.
    NotProjective { witness: Vec<Integer> },
    DimensionMismatch { expected: usize, found: usize },
    /// The columns do not span `Q^r`, so the secondary fan has no chambers.
    RankDeficient { rank: usize, span: usize },
    OnWall,
    DegeneratePath,
    DegenerateWallPoint,
    NotPrimitive,
    /// Every perturbation in the retry schedule failed.
    SeedsExhausted { first_seed: u64, attempts: u64, last: Box<ToricError> },
    Lattice(LatticeError),
}

impl From<LatticeError> for ToricError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::NotPrimitive => ToricError::NotPrimitive,
            other => ToricError::Lattice(other),
        }
    }
}

impl fmt::Display for ToricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToricError::ZeroColumn(i) => write!(f, "column {} is zero", i + 1),
            ToricError::NotProjective { witness } => {
                f.write_str("action is not projective; invariant monomial with exponents (")?;
                for (i, w) in witness.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{w}")?;
                }
                f.write_str(")")
            }
            ToricError::DimensionMismatch { expected, found } => {
                write!(f, "expected a vector of length {expected}, found {found}")
            }
            ToricError::RankDeficient { rank, span } => {
                write!(f, "columns span a rank {span} sublattice of Z^{rank}")
            }
            ToricError::OnWall => f.write_str("character lies on a wall of the secondary fan"),
            ToricError::DegeneratePath => f.write_str("path meets a cone of codimension two"),
            ToricError::DegenerateWallPoint => {
                f.write_str("wall point lies on a wall of the wall problem")
            }
            ToricError::NotPrimitive => f.write_str("one-parameter subgroup is not primitive"),
            ToricError::SeedsExhausted {
                first_seed,
                attempts,
                last,
            } => write!(
                f,
                "no generic path for seeds {first_seed}..{}: {last}",
                first_seed + attempts
            ),
            ToricError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

/// Weights of a linear `G_m^r` action on `A^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GitProblem {
    rank: usize,
    columns: Vec<Vec<Integer>>,
    labels: Vec<String>,
}

impl GitProblem {
    pub fn new(rank: usize, columns: Vec<Vec<Integer>>) -> Result<Self, ToricError> {
        let labels = (1..=columns.len()).map(|i| format!("x{i}")).collect();
        Self::with_labels(rank, columns, labels)
    }

    pub fn with_labels(
        rank: usize,
        columns: Vec<Vec<Integer>>,
        labels: Vec<String>,
    ) -> Result<Self, ToricError> {
        if let Some(c) = columns.iter().find(|c| c.len() != rank) {
            return Err(ToricError::DimensionMismatch {
                expected: rank,
                found: c.len(),
            });
        }
        if labels.len() != columns.len() {
            return Err(ToricError::DimensionMismatch {
                expected: columns.len(),
                found: labels.len(),
            });
        }
        Ok(GitProblem {
            rank,
            columns,
            labels,
        })
    }

    pub fn from_i64(rank: usize, columns: &[&[i64]]) -> Result<Self, ToricError> {
        Self::new(rank, columns.iter().map(|c| crate::lattice::ints(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Vec<Integer>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[Integer] {
        &self.columns[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weight_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_columns(&self.columns, self.rank)
    }

    /// Dimension of the span of the columns.
    pub fn span_rank(&self) -> usize {
        let m = IntegerMatrix::from_rows(&self.columns, self.rank);
        crate::lattice::smith(&m).rank()
    }

    pub fn columns_of(&self, subset: &[usize]) -> Vec<Vec<Integer>> {
        subset.iter().map(|&i| self.columns[i].clone()).collect()
    }

    pub fn validate(&self) -> Result<ValidatedProblem, ToricError> {
        if let Some(i) = self.columns.iter().position(|c| c.iter().all(Zero::is_zero)) {
            return Err(ToricError::ZeroColumn(i));
        }
        match strictly_positive_functional(&self.columns, self.rank) {
            Some(c) => Ok(ValidatedProblem {
                problem: self.clone(),
                functional: c,
            }),
            None => {
                let witness = nonnegative_relation(&self.columns, self.rank)
                    .expect("Gordan alternative: a nonnegative relation exists");
                Err(ToricError::NotProjective { witness })
            }
        }
    }
}

/// A projective problem together with a covector that is strictly positive
/// on every column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedProblem {
    problem: GitProblem,
    functional: RationalVector,
}

impl core::ops::Deref for ValidatedProblem {
    type Target = GitProblem;
    fn deref(&self) -> &GitProblem {
        &self.problem
    }
}

impl ValidatedProblem {
    pub fn problem(&self) -> &GitProblem {
        &self.problem
    }

    pub fn positive_functional(&self) -> &RationalVector {
        &self.functional
    }

    /// The anticanonical character `sum_i beta_i`.
    pub fn anticanonical(&self) -> Vec<Integer> {
        let mut sum = alloc::vec![Integer::zero(); self.rank];
        for c in &self.columns {
            for (s, x) in sum.iter_mut().zip(c) {
                *s += x;
            }
        }
        sum
    }

    /// Whether a point with coordinate support `support` is semistable for `chi`.
    pub fn is_semistable(&self, support: &[usize], chi: &RationalVector) -> bool {
        cone_member(&self.columns_of(support), chi).is_member()
    }

    /// Whether `chi` is in the effective cone `pos(beta_1, ..., beta_n)`.
    pub fn is_effective(&self, chi: &RationalVector) -> bool {
        cone_member(&self.columns, chi).is_member()
    }

    pub(crate) fn require_full_rank(&self) -> Result<(), ToricError> {
        let span = self.span_rank();
        if span != self.rank {
            return Err(ToricError::RankDeficient {
                rank: self.rank,
                span,
            });
        }
        Ok(())
    }

    fn check_dim(&self, chi: &RationalVector) -> Result<(), ToricError> {
        if chi.dim() != self.rank {
            return Err(ToricError::DimensionMismatch {
                expected: self.rank,
                found: chi.dim(),
            });
        }
        Ok(())
    }

    /// Every nonsingular `r`-subset `sigma` together with the coefficients of
    /// `chi` in the basis `beta_sigma`, in lexicographic order of `sigma`.
    fn simplicial_coefficients(
        &self,
        chi: &RationalVector,
    ) -> Vec<(Vec<usize>, Vec<Rational>)> {
        let mut out = Vec::new();
        for sigma in Subsets::new(self.len(), self.rank) {
            let cols: Vec<&[Integer]> = sigma.iter().map(|&i| self.column(i)).collect();
            if let Some(a) = solve_square(&cols, &chi.0) {
                out.push((sigma, a));
            }
        }
        out
    }

    /// All `sigma` with `beta_sigma` a basis of `Q^r` and `chi` in
    /// `pos(beta_sigma)`, with their lattice indices.
    pub fn sigma_bases(&self, chi: &RationalVector) -> Result<Vec<(Vec<usize>, Integer)>, ToricError> {
        self.check_dim(chi)?;
        let mut out = Vec::new();
        for (sigma, a) in self.simplicial_coefficients(chi) {
            if a.iter().all(|x| !x.is_negative()) {
                let index = sublattice_index(&IntegerMatrix::from_columns(
                    &self.columns_of(&sigma),
                    self.rank,
                ))?;
                out.push((sigma, index));
            }
        }
        Ok(out)
    }

    /// The set of simplicial cones containing `chi` in their interior. Two
    /// characters off the walls lie in the same chamber exactly when their
    /// signatures agree; the empty signature is the empty chamber.
    pub fn chamber_signature(&self, chi: &RationalVector) -> Result<Signature, ToricError> {
        self.check_dim(chi)?;
        let mut sigmas = Vec::new();
        for (sigma, a) in self.simplicial_coefficients(chi) {
            if a.iter().any(Signed::is_negative) {
                continue;
            }
            if a.iter().any(Zero::is_zero) {
                return Err(ToricError::OnWall);
            }
            sigmas.push(sigma);
        }
        Ok(Signature(sigmas))
    }

    /// Rank of `K_0` of the quotient: the sum of the indices of the
    /// simplicial cones containing `chi`.
    pub fn k0_rank(&self, chi: &RationalVector) -> Result<Integer, ToricError> {
        let sig = self.chamber_signature(chi)?;
        let mut total = Integer::zero();
        for sigma in &sig.0 {
            total += sublattice_index(&IntegerMatrix::from_columns(
                &self.columns_of(sigma),
                self.rank,
            ))?;
        }
        Ok(total)
    }

    pub fn membership(&self, subset: &[usize], chi: &RationalVector) -> Membership {
        cone_member(&self.columns_of(subset), chi)
    }
}

/// Sorted list of the index sets `sigma` whose cones contain a character.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub Vec<Vec<usize>>);

impl Signature {
    pub fn is_empty_chamber(&self) -> bool {
        self.0.is_empty()
    }
}

/// Lexicographic enumeration of `k`-subsets of `0..n`.
pub(crate) struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        Subsets { n, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
