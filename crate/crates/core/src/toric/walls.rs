use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{GitProblem, Subsets, ToricError};
use crate::lattice::{hyperplane_coordinates, is_primitive, pair, primitive_normal, HyperplaneCoordinates, Integer};

/// A hyperplane of the wall arrangement: the span of some rank `r - 1` set of
/// columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    /// Primitive, lexicographically positive normal.
    pub normal: Vec<Integer>,
    /// Columns lying in the hyperplane.
    pub fixed: Vec<usize>,
}

/// All hyperplanes spanned by columns, sorted by normal. For `r = 1` this is
/// the single hyperplane `{0}`.
pub fn candidate_hyperplanes(p: &GitProblem) -> Vec<Hyperplane> {
    let r = p.rank();
    if r == 0 {
        return Vec::new();
    }
    let mut normals = BTreeSet::new();
    for subset in Subsets::new(p.len(), r - 1) {
        if let Ok(normal) = primitive_normal(&p.columns_of(&subset), r) {
            normals.insert(normal);
        }
    }
    normals
        .into_iter()
        .map(|normal| {
            let fixed = (0..p.len())
                .filter(|&i| pair(p.column(i), &normal).is_zero())
                .collect();
            Hyperplane { normal, fixed }
        })
        .collect()
}

/// Invariants of the elementary wall crossing defined by an oriented
/// one-parameter subgroup `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCrossing {
    pub lambda: Vec<Integer>,
    /// `w_i = <beta_i, lambda>`.
    pub weights: Vec<Integer>,
    /// `F = {i : w_i = 0}`.
    pub fixed: Vec<usize>,
    pub nu_plus: Integer,
    pub nu_minus: Integer,
    pub t_plus: Integer,
    pub t_minus: Integer,
    pub mu: Integer,
    /// Basis of `lambda^perp` and the twist character `chi_tw`.
    pub coordinates: HyperplaneCoordinates,
}

impl WallCrossing {
    pub fn twist_lift(&self) -> &[Integer] {
        &self.coordinates.twist_lift
    }

    /// Window twists for anchor `d`: `[t_minus - d + 1, t_plus - d]` when
    /// `mu < 0`, `[-t_minus + d, -t_plus + d - 1]` when `mu > 0`, and nothing
    /// when `mu = 0`. The length is `|mu|` in every case.
    pub fn twist_range(&self, d: &Integer) -> Vec<Integer> {
        let (lo, hi) = if self.mu.is_negative() {
            (&self.t_minus - d + 1, &self.t_plus - d)
        } else {
            (-&self.t_minus + d, -&self.t_plus + d - 1)
        };
        let mut out = Vec::new();
        let mut j = lo;
        while j <= hi {
            out.push(j.clone());
            j += 1;
        }
        out
    }
}

pub fn wall_crossing(p: &GitProblem, lambda: &[Integer]) -> Result<WallCrossing, ToricError> {
    if lambda.len() != p.rank() {
        return Err(ToricError::DimensionMismatch {
            expected: p.rank(),
            found: lambda.len(),
        });
    }
    if !is_primitive(lambda) {
        return Err(ToricError::NotPrimitive);
    }
    let weights: Vec<Integer> = p.columns().iter().map(|b| pair(b, lambda)).collect();
    let fixed = (0..weights.len()).filter(|&i| weights[i].is_zero()).collect();
    let nu_plus: Integer = weights.iter().filter(|w| w.is_positive()).sum();
    let nu_minus: Integer = weights.iter().filter(|w| w.is_negative()).map(|w| -w).sum();
    let coordinates = hyperplane_coordinates(lambda)?;
    Ok(WallCrossing {
        lambda: lambda.to_vec(),
        weights,
        fixed,
        t_plus: -&nu_plus,
        t_minus: -&nu_minus,
        mu: &nu_plus - &nu_minus,
        nu_plus,
        nu_minus,
        coordinates,
    })
}
