use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::{canonical_subsets, check_weights, CurvesError, MarkSubset, MAX_POINTS};
use crate::lattice::{Integer, Rational};
use crate::toric::{perturbation, DEFAULT_SEED_ATTEMPTS};

/// `delta_k = 1 / (HASSETT_DELTA_SCALE * 2^(n - k))` for the Hassett presets.
pub const HASSETT_DELTA_SCALE: i64 = 100;

/// Sizes of the direction perturbation tried for each seed.
const DIRECTION_HALVINGS: usize = 8;

/// How many times a start point lying on a `|I| = |I^c|` wall is nudged.
const NUDGE_HALVINGS: usize = 64;

/// `O(d + a)` on the blowup stage `F_j`: the pullback of `O(d)` twisted by
/// `sum_S a_S Sigma^S` over the exceptional divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FmLinearization {
    j: usize,
    d: Vec<Rational>,
    a: BTreeMap<MarkSubset, Rational>,
    divisor_min: usize,
    mu_min: usize,
    ample: bool,
    /// `sum_{S subset of mask} a_S`, indexed by mask.
    a_sums: Vec<Rational>,
    /// `sum_{S subset of mask, |S| >= mu_min} (|S| - 2)`, indexed by mask.
    mu_sums: Vec<i64>,
}

impl FmLinearization {
    /// Default ranges: divisors `Sigma^S` with `|S| >= max(n - j - 1, 2)` for
    /// `j >= 1` and none on `F_0`; the same range in the `mu` formula.
    pub fn new(
        j: usize,
        d: Vec<Rational>,
        a: BTreeMap<MarkSubset, Rational>,
    ) -> Result<Self, CurvesError> {
        let min = default_divisor_min(d.len(), j);
        Self::with_ranges(j, d, a, min, min)
    }

    pub fn with_ranges(
        j: usize,
        d: Vec<Rational>,
        a: BTreeMap<MarkSubset, Rational>,
        divisor_min: usize,
        mu_min: usize,
    ) -> Result<Self, CurvesError> {
        check_weights(&d)?;
        let n = d.len();
        if n > MAX_POINTS.min(16) {
            return Err(CurvesError::TooManyPoints(n));
        }
        for (s, value) in &a {
            if s.n() != n || s.len() < divisor_min.max(2) {
                return Err(CurvesError::UnexpectedDivisor(*s));
            }
            if value.is_positive() {
                return Err(CurvesError::PositiveDivisorCoefficient(*s));
            }
        }
        let size = 1usize << n;
        let mut a_sums = alloc::vec![Rational::zero(); size];
        let mut mu_sums = alloc::vec![0i64; size];
        for (s, value) in &a {
            a_sums[s.bits() as usize] = value.clone();
        }
        for mask in 0..size {
            let k = mask.count_ones() as usize;
            if k >= mu_min.max(2) {
                mu_sums[mask] = k as i64 - 2;
            }
        }
        // Sums over submasks.
        for bit in 0..n {
            for mask in 0..size {
                if mask & (1 << bit) != 0 {
                    let below = a_sums[mask ^ (1 << bit)].clone();
                    a_sums[mask] += below;
                    mu_sums[mask] += mu_sums[mask ^ (1 << bit)];
                }
            }
        }
        Ok(FmLinearization {
            j,
            d,
            a,
            divisor_min,
            mu_min,
            ample: true,
            a_sums,
            mu_sums,
        })
    }

    /// `d = (2, ..., 2)` and `a_S = -delta_{|S|}` for every divisor, with
    /// `delta_k = 1 / (100 * 2^(n - k))`. Valid for `ceil(n/2) <= j <= n - 2`.
    pub fn hassett(n: usize, j: usize) -> Result<Self, CurvesError> {
        if n < 3 || n > 16 || j < n.div_ceil(2) || j + 2 > n {
            return Err(CurvesError::InvalidStage { n, j });
        }
        let min = default_divisor_min(n, j);
        let a = (0u32..1 << n)
            .map(|bits| MarkSubset::from_bits(n, bits))
            .filter(|s| s.len() >= min)
            .map(|s| {
                let delta = Rational::new(
                    Integer::one(),
                    Integer::from(HASSETT_DELTA_SCALE) * Integer::from(2).pow((n - s.len()) as u32),
                );
                (s, -delta)
            })
            .collect();
        Self::new(j, alloc::vec![Rational::from_integer(2.into()); n], a)
    }

    pub fn set_ample(&mut self, ample: bool) {
        self.ample = ample;
    }

    pub fn is_ample(&self) -> bool {
        self.ample
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn stage(&self) -> usize {
        self.j
    }

    pub fn weights(&self) -> &[Rational] {
        &self.d
    }

    pub fn divisors(&self) -> &BTreeMap<MarkSubset, Rational> {
        &self.a
    }

    pub fn divisor_min(&self) -> usize {
        self.divisor_min
    }

    pub fn mu_min(&self) -> usize {
        self.mu_min
    }

    /// The weight of [`fm_weight`] with `d` replaced by `x`.
    pub fn weight_at(&self, x: &[Rational], i: MarkSubset) -> Rational {
        let c = i.complement();
        i.balance(x) / Rational::from_integer(2.into()) - &self.a_sums[i.bits() as usize]
            + &self.a_sums[c.bits() as usize]
    }

    /// Some single mark outweighs the rest: the semistable locus is empty.
    pub fn empty_witness(&self, x: &[Rational]) -> Option<usize> {
        (0..self.n()).find(|&i| self.weight_at(x, MarkSubset::new(self.n(), &[i])).is_positive())
    }
}

fn default_divisor_min(n: usize, j: usize) -> usize {
    if j == 0 {
        n + 1
    } else {
        (n.saturating_sub(j + 1)).max(2)
    }
}

/// `(sum_I d - sum_{I^c} d) / 2 - sum_{S in I} a_S + sum_{S in I^c} a_S`.
pub fn fm_weight(lin: &FmLinearization, i: MarkSubset) -> Rational {
    lin.weight_at(&lin.d, i)
}

/// Weight of the anticanonical bundle at a fixed point over the wall `H_I`:
/// `|I| - |I^c| + sum_{S in I} (|S| - 2) - sum_{S in I^c} (|S| - 2)`.
pub fn fm_wall_mu(lin: &FmLinearization, i: MarkSubset) -> Result<Integer, CurvesError> {
    let c = i.complement();
    let balance = i.len() as i64 - c.len() as i64;
    let mu = balance + lin.mu_sums[i.bits() as usize] - lin.mu_sums[c.bits() as usize];
    if mu.signum() != balance.signum() {
        return Err(CurvesError::SignMismatch {
            subset: i,
            mu: mu.into(),
        });
    }
    Ok(mu.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbyssWall {
    /// The side whose weight turns positive; `|I| <= |I^c|`.
    pub subset: MarkSubset,
    pub t: Rational,
    /// The `d`-part of the crossing point; `a` stays fixed.
    pub point: Vec<Rational>,
    pub mu: Integer,
}

/// A straight path from `start` along `direction`, with `a` fixed, that
/// crosses only admissible walls and ends in the empty chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbyssCertificate {
    pub seed: u64,
    /// The linearization, or a point next to it across `|I| = |I^c|` walls
    /// only (those crossings are equivalences).
    pub start: Vec<Rational>,
    pub direction: Vec<Rational>,
    pub walls: Vec<AbyssWall>,
    pub terminal: Vec<Rational>,
    /// A mark outweighing all others at `terminal`.
    pub witness: usize,
}

impl AbyssCertificate {
    /// Rechecks every condition of the certificate against `lin`.
    pub fn verify(&self, lin: &FmLinearization) -> bool {
        let at = |t: &Rational| -> Vec<Rational> {
            self.start
                .iter()
                .zip(&self.direction)
                .map(|(s, w)| s + t * w)
                .collect()
        };
        let mut last = Rational::zero();
        for wall in &self.walls {
            let c = wall.subset.complement();
            let balance = wall.subset.len() as i64 - c.len() as i64;
            if wall.subset.len() > c.len()
                || wall.t <= last
                || at(&wall.t) != wall.point
                || !lin.weight_at(&wall.point, wall.subset).is_zero()
                || fm_wall_mu(lin, wall.subset).as_ref() != Ok(&wall.mu)
                || wall.mu.signum() != Integer::from(balance.signum())
                || wall.point.iter().any(|x| !x.is_positive())
            {
                return false;
            }
            last = wall.t.clone();
        }
        self.terminal.iter().all(Rational::is_positive)
            && self.witness < lin.n()
            && lin
                .weight_at(&self.terminal, MarkSubset::new(lin.n(), &[self.witness]))
                .is_positive()
    }
}

/// Searches for a path certifying that `lin` slides into the abyss.
///
/// Candidate directions are `d - (2, ..., 2)` (the continuation of the
/// straight line from the anticanonical point) and each `e_i`, each bent by
/// a small seeded perturbation. Seeds `seed..seed + DEFAULT_SEED_ATTEMPTS`
/// are tried in order.
pub fn find_abyss_path(lin: &FmLinearization, seed: u64) -> Result<AbyssCertificate, CurvesError> {
    if !lin.ample {
        return Err(CurvesError::NotAmple);
    }
    let n = lin.n();
    let subsets = canonical_subsets(n);
    for s in seed..seed + DEFAULT_SEED_ATTEMPTS {
        let start = nudged_start(lin, &subsets, s)?;
        if let Some(i) = lin.empty_witness(&start) {
            return Ok(AbyssCertificate {
                seed: s,
                direction: alloc::vec![Rational::zero(); n],
                terminal: start.clone(),
                start,
                walls: Vec::new(),
                witness: i,
            });
        }
        let two = Rational::from_integer(2.into());
        let mut bases: Vec<Vec<Rational>> = Vec::new();
        let outward: Vec<Rational> = start.iter().map(|x| x - &two).collect();
        if outward.iter().any(|x| !x.is_zero()) {
            bases.push(outward);
        }
        for i in 0..n {
            let mut e = alloc::vec![Rational::zero(); n];
            e[i] = Rational::one();
            bases.push(e);
        }
        let v = perturbation(s, n);
        for base in &bases {
            let scale = base.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::one);
            let mut eta = scale / Rational::from_integer(100.into());
            for _ in 0..DIRECTION_HALVINGS {
                let direction: Vec<Rational> =
                    base.iter().zip(&v.0).map(|(b, vi)| b + &eta * vi).collect();
                if let Some(cert) = ray(lin, &subsets, &start, &direction, s)? {
                    return Ok(cert);
                }
                eta /= Rational::from_integer(2.into());
            }
        }
    }
    Err(CurvesError::NoAbyssPath)
}

/// `lin`'s own weights when they avoid every wall; otherwise a nearby point
/// in an adjacent chamber, allowed only across `|I| = |I^c|` walls.
fn nudged_start(
    lin: &FmLinearization,
    subsets: &[MarkSubset],
    seed: u64,
) -> Result<Vec<Rational>, CurvesError> {
    let signs: Vec<Ordering> = subsets
        .iter()
        .map(|&i| fm_weight(lin, i).cmp(&Rational::zero()))
        .collect();
    let mut balanced = false;
    for (&i, s) in subsets.iter().zip(&signs) {
        if *s == Ordering::Equal {
            if i.len() != i.complement().len() {
                return Err(CurvesError::OnWall(i));
            }
            balanced = true;
        }
    }
    if !balanced {
        return Ok(lin.d.clone());
    }
    let v = perturbation(seed, lin.n());
    let mut eps = Rational::new(Integer::one(), Integer::from(10_000));
    for _ in 0..NUDGE_HALVINGS {
        let x: Vec<Rational> = lin.d.iter().zip(&v.0).map(|(d, vi)| d + &eps * vi).collect();
        let ok = subsets.iter().zip(&signs).all(|(&i, s)| {
            let now = lin.weight_at(&x, i).cmp(&Rational::zero());
            now != Ordering::Equal && (*s == Ordering::Equal || now == *s)
        });
        if ok {
            return Ok(x);
        }
        eps /= Rational::from_integer(2.into());
    }
    Err(CurvesError::NoAbyssPath)
}

/// Follows one ray; `Ok(None)` if it is not generic, leaves the ample
/// region, crosses an inadmissible wall, or never becomes empty.
fn ray(
    lin: &FmLinearization,
    subsets: &[MarkSubset],
    start: &[Rational],
    direction: &[Rational],
    seed: u64,
) -> Result<Option<AbyssCertificate>, CurvesError> {
    let two = Rational::from_integer(2.into());
    let at = |t: &Rational| -> Vec<Rational> {
        start.iter().zip(direction).map(|(s, w)| s + t * w).collect()
    };
    let leave = direction
        .iter()
        .zip(start)
        .filter(|(w, _)| w.is_negative())
        .map(|(w, s)| s / -w)
        .min();

    let mut events: Vec<(Rational, MarkSubset, Rational)> = Vec::new();
    for &k in subsets {
        let rate = k.balance(direction) / &two;
        if rate.is_zero() {
            continue;
        }
        let t = -lin.weight_at(start, k) / &rate;
        if t.is_positive() {
            events.push((t, k, rate));
        }
    }
    events.sort_by(|x, y| x.0.cmp(&y.0));

    let mut walls = Vec::new();
    for (idx, (t, k, rate)) in events.iter().enumerate() {
        if leave.as_ref().is_some_and(|l| t >= l) {
            return Ok(None);
        }
        if events.get(idx + 1).is_some_and(|next| next.0 == *t) {
            return Ok(None);
        }
        let subset = if rate.is_positive() { *k } else { k.complement() };
        if subset.len() > subset.complement().len() {
            return Ok(None);
        }
        let mu = fm_wall_mu(lin, subset)?;
        walls.push(AbyssWall {
            subset,
            t: t.clone(),
            point: at(t),
            mu,
        });
        let after = match events.get(idx + 1) {
            Some(next) => (t + &next.0) / &two,
            None => t + Rational::one(),
        };
        if leave.as_ref().is_some_and(|l| after >= *l) {
            return Ok(None);
        }
        let terminal = at(&after);
        if let Some(witness) = lin.empty_witness(&terminal) {
            return Ok(Some(AbyssCertificate {
                seed,
                start: start.to_vec(),
                direction: direction.to_vec(),
                walls,
                terminal,
                witness,
            }));
        }
    }
    Ok(None)
}
