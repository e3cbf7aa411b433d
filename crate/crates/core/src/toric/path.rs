use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{candidate_hyperplanes, wall_crossing, ToricError, ValidatedProblem, WallCrossing};
use crate::lattice::{cone_member, Integer, Rational, RationalVector};

/// Number of consecutive seeds tried before a path search gives up.
pub const DEFAULT_SEED_ATTEMPTS: u64 = 16;

/// Index of the first prime used in perturbations (the 26th prime is 101).
/// Starting above the size of typical normal vectors keeps
/// `sum_i lambda_i / p_i` away from zero.
const PRIME_OFFSET: usize = 25;

/// How many times the perturbation size is halved before giving up.
const MAX_HALVINGS: usize = 64;

/// One wall met by a path, with `lambda` oriented toward the far side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCrossing {
    /// Path parameter; the start is at 0 and the perturbed character at 1.
    pub t: Rational,
    /// Where the path meets the wall.
    pub point: RationalVector,
    pub crossing: WallCrossing,
}

/// A straight path from the anticanonical character through a perturbed
/// copy of the target character, and the walls it crosses after leaving
/// the target chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericPath {
    pub seed: u64,
    pub start: Vec<Integer>,
    /// The perturbed, rescaled target character.
    pub through: RationalVector,
    /// Size of the perturbation that was applied.
    pub delta: Rational,
    pub crossings: Vec<PathCrossing>,
}

/// `n`-th prime, counting from 0.
fn nth_prime(n: usize) -> u64 {
    let mut count = 0;
    let mut candidate = 1u64;
    loop {
        candidate += 1;
        if (2..).take_while(|d| d * d <= candidate).all(|d| candidate % d != 0) {
            if count == n {
                return candidate;
            }
            count += 1;
        }
    }
}

/// The deterministic perturbation direction for `seed`: coordinate `i` is
/// `1 / p` for the `(seed * dim + i)`-th prime past the offset.
pub fn perturbation(seed: u64, dim: usize) -> RationalVector {
    let base = seed as usize * dim + PRIME_OFFSET;
    RationalVector(
        (0..dim)
            .map(|i| Rational::new(Integer::one(), Integer::from(nth_prime(base + i))))
            .collect(),
    )
}

/// Straight path from `sum_i beta_i` through a perturbation of `chi`,
/// continued until it leaves the effective cone.
///
/// `chi` is first rescaled so that a strictly positive functional takes half
/// its value at the anticanonical character; this places the ray's exit at a
/// bounded parameter and makes the result independent of positive rescaling
/// of `chi`. Only walls met after the target chamber are returned. Every
/// returned `lambda` pairs negatively with the start, so `mu < 0`.
pub fn generic_path(
    p: &ValidatedProblem,
    chi: &RationalVector,
    seed: u64,
) -> Result<GenericPath, ToricError> {
    p.check_dim(chi)?;
    p.require_full_rank()?;
    let signature = p.chamber_signature(chi)?;
    let start = p.anticanonical();
    let mut path = GenericPath {
        seed,
        start: start.clone(),
        through: chi.clone(),
        delta: Rational::zero(),
        crossings: Vec::new(),
    };
    if p.rank() == 0 || signature.is_empty_chamber() {
        return Ok(path);
    }

    let a = RationalVector::from_integers(&start);
    let c = p.positive_functional();
    let level = a.dot(c) / (chi.dot(c) * Rational::from_integer(2.into()));
    let chi_hat = chi.scale(&level);
    let v = perturbation(seed, p.rank());
    let hyperplanes = candidate_hyperplanes(p);

    let mut delta = Rational::one();
    let mut through = None;
    for _ in 0..MAX_HALVINGS {
        let candidate = chi_hat.along(&v, &delta);
        let generic = hyperplanes
            .iter()
            .all(|h| !candidate.pair(&h.normal).is_zero());
        if generic
            && candidate.sub(&a).dot(c).is_negative()
            && p.chamber_signature(&candidate).as_ref() == Ok(&signature)
        {
            through = Some(candidate);
            break;
        }
        delta /= Rational::from_integer(2.into());
    }
    let through = through.ok_or(ToricError::DegeneratePath)?;
    let direction = through.sub(&a);

    let mut crossings = Vec::new();
    for (k, h) in hyperplanes.iter().enumerate() {
        let speed = direction.pair(&h.normal);
        if speed.is_zero() {
            continue;
        }
        let t = -a.pair(&h.normal) / &speed;
        if t <= Rational::one() {
            continue;
        }
        let point = a.along(&direction, &t);
        if !cone_member(&p.columns_of(&h.fixed), &point).is_member() {
            continue;
        }
        if hyperplanes
            .iter()
            .enumerate()
            .any(|(k2, h2)| k2 != k && point.pair(&h2.normal).is_zero())
        {
            return Err(ToricError::DegeneratePath);
        }
        let lambda: Vec<Integer> = if speed.is_positive() {
            h.normal.clone()
        } else {
            h.normal.iter().map(|x| -x).collect()
        };
        let crossing = wall_crossing(p, &lambda)?;
        debug_assert!(crossing.mu.is_negative());
        crossings.push(PathCrossing { t, point, crossing });
    }
    crossings.sort_by(|x, y| x.t.cmp(&y.t));
    if crossings.windows(2).any(|w| w[0].t == w[1].t) {
        return Err(ToricError::DegeneratePath);
    }

    path.through = through;
    path.delta = delta;
    path.crossings = crossings;
    Ok(path)
}
