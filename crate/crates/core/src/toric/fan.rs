use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{candidate_hyperplanes, wall_crossing, Hyperplane, Signature, Subsets, ToricError, ValidatedProblem};
use crate::lattice::{cone_member, kernel_basis, Integer, IntegerMatrix, Membership, Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberNode {
    pub signature: Signature,
    /// A character in the interior of the chamber.
    pub sample: RationalVector,
    /// Zero for the empty chamber.
    pub k0: Integer,
}

impl ChamberNode {
    pub fn is_empty_chamber(&self) -> bool {
        self.signature.is_empty_chamber()
    }
}

/// Two chambers sharing a wall. `lambda` is positive on `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub lambda: Vec<Integer>,
    pub wall_point: RationalVector,
    pub mu: Integer,
}

/// Chambers of the secondary fan, including the empty chamber, and the walls
/// between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberGraph {
    pub hyperplanes: Vec<Hyperplane>,
    /// Nonempty chambers sorted by signature, then the empty chamber.
    pub nodes: Vec<ChamberNode>,
    pub edges: Vec<GraphEdge>,
}

/// Builds the adjacency graph by visiting every cell of every wall: a point
/// in the relative interior of a cell is pushed a little to either side and
/// both chambers are identified by signature.
pub fn chamber_graph(p: &ValidatedProblem) -> Result<ChamberGraph, ToricError> {
    p.require_full_rank()?;
    let r = p.rank();
    let hyperplanes = candidate_hyperplanes(p);
    let mut nodes: BTreeMap<Signature, RationalVector> = BTreeMap::new();
    let mut raw_edges: BTreeMap<(Signature, Signature), (Vec<Integer>, RationalVector)> =
        BTreeMap::new();

    for (k, h) in hyperplanes.iter().enumerate() {
        let fixed = p.columns_of(&h.fixed);
        let others: Vec<&Hyperplane> = hyperplanes
            .iter()
            .enumerate()
            .filter(|&(k2, _)| k2 != k)
            .map(|(_, h2)| h2)
            .collect();
        for point in wall_cell_points(r, h, &others, &fixed) {
            let normal = RationalVector::from_integers(&h.normal);
            let (minus, plus) = push_off(&point, &normal, &others);
            let s_minus = p.chamber_signature(&minus)?;
            let s_plus = p.chamber_signature(&plus)?;
            if s_minus == s_plus {
                continue;
            }
            nodes.entry(s_minus.clone()).or_insert(minus);
            nodes.entry(s_plus.clone()).or_insert(plus);
            raw_edges
                .entry((s_minus, s_plus))
                .or_insert((h.normal.clone(), point));
        }
    }

    let mut ordered: Vec<(Signature, RationalVector)> = nodes
        .iter()
        .filter(|(s, _)| !s.is_empty_chamber())
        .map(|(s, v)| (s.clone(), v.clone()))
        .collect();
    if let Some((s, v)) = nodes.iter().find(|(s, _)| s.is_empty_chamber()) {
        ordered.push((s.clone(), v.clone()));
    }
    let index: BTreeMap<Signature, usize> = ordered
        .iter()
        .enumerate()
        .map(|(i, (s, _))| (s.clone(), i))
        .collect();

    let mut chamber_nodes = Vec::with_capacity(ordered.len());
    for (signature, sample) in ordered {
        let k0 = p.k0_rank(&sample)?;
        chamber_nodes.push(ChamberNode {
            signature,
            sample,
            k0,
        });
    }
    let mut edges = Vec::with_capacity(raw_edges.len());
    for ((s_minus, s_plus), (lambda, wall_point)) in raw_edges {
        let mu = wall_crossing(p, &lambda)?.mu;
        edges.push(GraphEdge {
            from: index[&s_minus],
            to: index[&s_plus],
            lambda,
            wall_point,
            mu,
        });
    }
    edges.sort_by(|a, b| (a.from, a.to).cmp(&(b.from, b.to)));

    Ok(ChamberGraph {
        hyperplanes,
        nodes: chamber_nodes,
        edges,
    })
}

/// One point in the relative interior of each cell that the other
/// hyperplanes cut out of `pos(beta_F)` inside `h`.
fn wall_cell_points(
    r: usize,
    h: &Hyperplane,
    others: &[&Hyperplane],
    fixed: &[Vec<Integer>],
) -> Vec<RationalVector> {
    if r == 1 {
        return alloc::vec![RationalVector::zero(1)];
    }
    // Rays of the cells: lines where h meets r - 2 further hyperplanes.
    let mut rays: Vec<Vec<Integer>> = Vec::new();
    for subset in Subsets::new(others.len(), r - 2) {
        let mut rows = alloc::vec![h.normal.clone()];
        rows.extend(subset.iter().map(|&i| others[i].normal.clone()));
        let kernel = kernel_basis(&IntegerMatrix::from_rows(&rows, r));
        if kernel.len() != 1 {
            continue;
        }
        let u = &kernel[0];
        let neg: Vec<Integer> = u.iter().map(|x| -x).collect();
        for dir in [u.clone(), neg] {
            if !rays.contains(&dir)
                && cone_member(fixed, &RationalVector::from_integers(&dir)).is_member()
            {
                rays.push(dir);
            }
        }
    }
    rays.sort();

    let mut points = Vec::new();
    for subset in Subsets::new(rays.len(), r - 1) {
        let mut sum = alloc::vec![Integer::zero(); r];
        for &i in &subset {
            for (s, x) in sum.iter_mut().zip(&rays[i]) {
                *s += x;
            }
        }
        let point = RationalVector::from_integers(&sum);
        if others.iter().any(|o| point.pair(&o.normal).is_zero()) {
            continue;
        }
        if cone_member(fixed, &point) != Membership::RelativeInterior {
            continue;
        }
        points.push(point);
    }
    points
}

/// Points `point -/+ eps * normal` close enough to stay in the chambers
/// adjacent to the wall cell.
fn push_off(
    point: &RationalVector,
    normal: &RationalVector,
    others: &[&Hyperplane],
) -> (RationalVector, RationalVector) {
    let mut eps = Rational::one();
    loop {
        let plus = point.along(normal, &eps);
        let minus = point.along(normal, &-eps.clone());
        let stays = others.iter().all(|o| {
            let s = point.pair(&o.normal).signum();
            plus.pair(&o.normal).signum() == s && minus.pair(&o.normal).signum() == s
        });
        if stays {
            return (minus, plus);
        }
        eps /= Rational::from_integer(2.into());
    }
}
