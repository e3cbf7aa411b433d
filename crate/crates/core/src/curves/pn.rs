use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::{canonical_subsets, check_weights, pgl2_linearizable, CurvesError, MarkSubset, ParityCount};
use crate::lattice::Rational;
use crate::toric::{perturbation, DEFAULT_SEED_ATTEMPTS};

/// Bound on the number of chambers visited by the marked search.
const MAX_STATES: usize = 4096;

/// How many times the perturbation of the target is halved.
const MAX_HALVINGS: usize = 64;

/// Hilbert-Mumford weight `(sum_I d - sum_{I^c} d) / 2` for this orientation
/// of `I`.
pub fn hm_weight_pn(d: &[Rational], i: MarkSubset) -> Rational {
    i.balance(d) / Rational::from_integer(2.into())
}

/// Some weight strictly exceeds the sum of the others.
pub fn is_empty_pn(d: &[Rational]) -> bool {
    let total: Rational = d.iter().sum();
    d.iter().any(|x| x + x > total)
}

/// Semistability of a configuration given by its coincidence blocks
/// (0-based marks): every block weighs at most half the total.
pub fn is_semistable_pn(d: &[Rational], blocks: &[Vec<usize>]) -> bool {
    let total: Rational = d.iter().sum();
    blocks.iter().all(|b| {
        let s: Rational = b.iter().map(|&i| &d[i]).sum();
        &s + &s <= total
    })
}

/// Sign of `sum_I d - sum_{I^c} d` for every canonical `I`.
pub fn chamber_sign_pn(d: &[Rational]) -> BTreeMap<MarkSubset, Ordering> {
    canonical_subsets(d.len())
        .into_iter()
        .map(|i| (i, i.balance(d).cmp(&Rational::zero())))
        .collect()
}

fn sign_vector(d: &[Rational], subsets: &[MarkSubset]) -> Vec<Ordering> {
    subsets
        .iter()
        .map(|i| i.balance(d).cmp(&Rational::zero()))
        .collect()
}

/// `d` is valid, off every wall and not in the empty chamber.
fn check_chamber(d: &[Rational]) -> Result<(), CurvesError> {
    check_weights(d)?;
    if let Some((i, _)) = chamber_sign_pn(d).into_iter().find(|(_, s)| *s == Ordering::Equal) {
        return Err(CurvesError::OnWall(i));
    }
    if is_empty_pn(d) {
        return Err(CurvesError::EmptyChamber);
    }
    Ok(())
}

/// A wall crossed away from the anticanonical side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PnWall {
    /// The side whose weight grows through the crossing.
    pub growing: MarkSubset,
    /// `|I^c| - |I|` copies of `[pt / (Z/2)]`.
    pub copies: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkEnd {
    /// Three points: a single chamber, whose quotient is `[pt / (Z/2)]`.
    Base,
    /// The walk entered the empty chamber.
    Empty,
    /// The walk reached `d_marking = 0` inside a boundary chamber, where the
    /// quotient is a `P^1`-bundle over the quotient for the reduced weights.
    Boundary {
        marking: usize,
        reduced: Vec<Rational>,
        reduced_count: ParityCount,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    /// Straight line from `(2, ..., 2)` through `through`, a perturbed and
    /// rescaled copy of the target.
    Straight { seed: u64, through: Vec<Rational> },
    /// Chamber-by-chamber moves, then a descent of `d_marking` to zero.
    Marked { marking: usize, start: Vec<Rational> },
}

/// One admissible walk and the collection size it certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PnWalk {
    pub route: Route,
    pub walls: Vec<PnWall>,
    pub end: WalkEnd,
    pub count: ParityCount,
}

/// Size of the exceptional collection on `[P^ss(d) / SL_2]`, split by the
/// action of `-1`.
pub fn collection_count_pn(d: &[Rational]) -> Result<ParityCount, CurvesError> {
    Ok(pn_walk(d, 0)?.count)
}

/// Even part of [`collection_count_pn`]: the collection on the `PGL_2`
/// quotient.
pub fn pgl2_count(d: &[Rational]) -> Result<u64, CurvesError> {
    check_weights(d)?;
    if !pgl2_linearizable(d) {
        return Err(CurvesError::NotPgl2Linearizable);
    }
    Ok(collection_count_pn(d)?.even)
}

/// Growing side of a crossing of canonical `k` whose balance changes at
/// `rate`, and the number of copies it contributes, if the crossing moves
/// away from the anticanonical side.
fn admissible(k: MarkSubset, rate: &Rational) -> Option<(MarkSubset, u64)> {
    let growing = if rate.is_positive() { k } else { k.complement() };
    let (a, b) = (growing.len(), growing.complement().len());
    (a <= b).then(|| (growing, (b - a) as u64))
}

/// Straight-line walk for the first seed in `seed..seed + DEFAULT_SEED_ATTEMPTS`
/// that yields a generic path.
pub fn pn_walk(d: &[Rational], seed: u64) -> Result<PnWalk, CurvesError> {
    check_chamber(d)?;
    if d.len() == 3 {
        return Ok(PnWalk {
            route: Route::Straight {
                seed,
                through: d.to_vec(),
            },
            walls: Vec::new(),
            end: WalkEnd::Base,
            count: ParityCount::BASE,
        });
    }
    for s in seed..seed + DEFAULT_SEED_ATTEMPTS {
        if let Some(walk) = straight_walk(d, s)? {
            return Ok(walk);
        }
    }
    Err(CurvesError::NoBoundaryPath)
}

/// `Ok(None)` when the path for this seed is not generic.
fn straight_walk(d: &[Rational], seed: u64) -> Result<Option<PnWalk>, CurvesError> {
    let n = d.len();
    let subsets = canonical_subsets(n);
    let total: Rational = d.iter().sum();
    let level = Rational::from_integer(n.into()) / total;
    let scaled: Vec<Rational> = d.iter().map(|x| x * &level).collect();
    let signs = sign_vector(&scaled, &subsets);
    let v = perturbation(seed, n);

    let mut delta = Rational::one();
    let mut through = None;
    for _ in 0..MAX_HALVINGS {
        let candidate: Vec<Rational> = scaled
            .iter()
            .zip(&v.0)
            .map(|(x, vi)| x + &delta * vi)
            .collect();
        if sign_vector(&candidate, &subsets) == signs {
            through = Some(candidate);
            break;
        }
        delta /= Rational::from_integer(2.into());
    }
    let Some(through) = through else {
        return Ok(None);
    };
    let two = Rational::from_integer(2.into());
    let direction: Vec<Rational> = through.iter().map(|x| x - &two).collect();

    // The exit through a coordinate facet d_i = 0.
    let mut exit: Option<(Rational, usize)> = None;
    let mut tied = false;
    for (i, w) in direction.iter().enumerate() {
        if !w.is_negative() {
            continue;
        }
        let t = &two / -w;
        match &exit {
            Some((best, _)) if t == *best => tied = true,
            Some((best, _)) if t > *best => {}
            _ => {
                exit = Some((t, i));
                tied = false;
            }
        }
    }
    let Some((t_exit, marking)) = exit else {
        return Ok(None);
    };
    if tied {
        return Ok(None);
    }

    let a = alloc::vec![two.clone(); n];
    let mut events: Vec<(Rational, MarkSubset, Rational)> = Vec::new();
    for &k in &subsets {
        let rate = k.balance(&direction);
        if rate.is_zero() {
            continue;
        }
        let t = -k.balance(&a) / &rate;
        if t <= Rational::one() {
            continue;
        }
        match t.cmp(&t_exit) {
            Ordering::Less => events.push((t, k, rate)),
            Ordering::Equal => return Ok(None),
            Ordering::Greater => {}
        }
    }
    events.sort_by(|x, y| x.0.cmp(&y.0));
    if events.windows(2).any(|w| w[0].0 == w[1].0) {
        return Ok(None);
    }

    let mut walls = Vec::new();
    let mut count = ParityCount::default();
    for (_, k, rate) in &events {
        let (growing, copies) =
            admissible(*k, rate).expect("straight paths from (2, ..., 2) cross away from it");
        walls.push(PnWall { growing, copies });
        count = count.add_copies(copies);
        if growing.len() == 1 {
            return Ok(Some(PnWalk {
                route: Route::Straight { seed, through },
                walls,
                end: WalkEnd::Empty,
                count,
            }));
        }
    }

    let reduced: Vec<Rational> = (0..n)
        .filter(|&i| i != marking)
        .map(|i| &a[i] + &t_exit * &direction[i])
        .collect();
    let reduced_count = match pn_walk(&reduced, seed) {
        Ok(w) => w.count,
        Err(CurvesError::OnWall(_) | CurvesError::EmptyChamber | CurvesError::NoBoundaryPath) => {
            return Ok(None)
        }
        Err(e) => return Err(e),
    };
    let count = ParityCount {
        even: count.even + reduced_count.doubled().even,
        odd: count.odd + reduced_count.doubled().odd,
    };
    Ok(Some(PnWalk {
        route: Route::Straight { seed, through },
        walls,
        end: WalkEnd::Boundary {
            marking,
            reduced,
            reduced_count,
        },
        count,
    }))
}

/// Admissible walk ending with `d_marking` sliding to zero.
///
/// Breadth-first over chambers: from each visited chamber the walk first
/// tries to lower `d_marking` straight to zero; otherwise it moves along
/// `1_J - 1_{J^c}` across the first wall met, provided that crossing moves
/// away from the anticanonical side (`|I| <= |I^c|` for the growing side).
pub fn marked_walk(d: &[Rational], marking: usize) -> Result<PnWalk, CurvesError> {
    check_chamber(d)?;
    let n = d.len();
    if marking >= n {
        return Err(CurvesError::DimensionMismatch {
            expected: n,
            found: marking + 1,
        });
    }
    if n == 3 {
        return pn_walk(d, 0).map(|mut w| {
            w.route = Route::Marked {
                marking,
                start: d.to_vec(),
            };
            w
        });
    }
    let subsets = canonical_subsets(n);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(sign_vector(d, &subsets));
    queue.push_back((d.to_vec(), Vec::<PnWall>::new()));

    while let Some((p, walls)) = queue.pop_front() {
        if let Some(walk) = descend(&p, marking, &walls, &subsets, d)? {
            return Ok(walk);
        }
        for u in moves(&p, &subsets) {
            let Some((q, wall)) = step(&p, &u, &subsets) else {
                continue;
            };
            if seen.len() >= MAX_STATES {
                break;
            }
            if seen.insert(sign_vector(&q, &subsets)) {
                let mut w = walls.clone();
                w.push(wall);
                queue.push_back((q, w));
            }
        }
    }
    Err(CurvesError::NoBoundaryPath)
}

/// Directions tried from `p`: `1_J - 1_{J^c}` for every wall `H_J` that can
/// still be crossed admissibly, and `+/- e_i` for every mark.
fn moves(p: &[Rational], subsets: &[MarkSubset]) -> Vec<Vec<Rational>> {
    let n = p.len();
    let unit = |i: usize, s: i64| -> Vec<Rational> {
        let mut e = alloc::vec![Rational::zero(); n];
        e[i] = Rational::from_integer(s.into());
        e
    };
    let mut out = Vec::new();
    for &j in subsets {
        let balance = j.balance(p);
        let forward = if j.len() < j.complement().len() {
            if balance.is_positive() {
                continue;
            }
            true
        } else {
            balance.is_negative()
        };
        out.push(
            (0..n)
                .map(|i| Rational::from_integer(if j.contains(i) == forward { 1 } else { -1 }.into()))
                .collect(),
        );
    }
    for i in 0..n {
        out.push(unit(i, 1));
        out.push(unit(i, -1));
    }
    out
}

/// Moves from `p` along `u` across exactly one wall into the next chamber,
/// if that wall is met first, alone, admissibly and not into the empty
/// chamber.
fn step(p: &[Rational], u: &[Rational], subsets: &[MarkSubset]) -> Option<(Vec<Rational>, PnWall)> {
    let mut events: Vec<(Rational, Option<(MarkSubset, Rational)>)> = Vec::new();
    for &k in subsets {
        let rate = k.balance(u);
        if rate.is_zero() {
            continue;
        }
        let s = -k.balance(p) / &rate;
        if s.is_positive() {
            events.push((s, Some((k, rate))));
        }
    }
    for (x, ui) in p.iter().zip(u) {
        if ui.is_negative() {
            events.push((x / -ui, None));
        }
    }
    events.sort_by(|x, y| x.0.cmp(&y.0));
    if events.len() < 2 || events[0].0 == events[1].0 {
        return None;
    }
    let (k, rate) = events[0].1.as_ref()?;
    let (growing, copies) = admissible(*k, rate)?;
    if growing.len() == 1 {
        return None;
    }
    let s = (&events[0].0 + &events[1].0) / Rational::from_integer(2.into());
    let q = p.iter().zip(u).map(|(x, ui)| x + &s * ui).collect();
    Some((q, PnWall { growing, copies }))
}

/// Lowers `d_marking` from `p` to zero. `Ok(None)` if a crossing on the way
/// is inadmissible or not generic.
fn descend(
    p: &[Rational],
    marking: usize,
    walls: &[PnWall],
    subsets: &[MarkSubset],
    start: &[Rational],
) -> Result<Option<PnWalk>, CurvesError> {
    let end = &p[marking];
    let mut events = Vec::new();
    for &k in subsets {
        // d_marking decreases at unit speed.
        let rate = Rational::from_integer(if k.contains(marking) { -1 } else { 1 }.into());
        let s = -k.balance(p) / &rate;
        if !s.is_positive() || s > *end {
            continue;
        }
        if s == *end {
            return Ok(None);
        }
        events.push((s, k, rate));
    }
    events.sort_by(|x, y| x.0.cmp(&y.0));
    if events.windows(2).any(|w| w[0].0 == w[1].0) {
        return Ok(None);
    }
    let mut walls = walls.to_vec();
    for (_, k, rate) in &events {
        let Some((growing, copies)) = admissible(*k, rate) else {
            return Ok(None);
        };
        walls.push(PnWall { growing, copies });
        if growing.len() == 1 {
            let count = ParityCount::default().add_copies(walls.iter().map(|w| w.copies).sum());
            return Ok(Some(PnWalk {
                route: Route::Marked {
                    marking,
                    start: start.to_vec(),
                },
                walls,
                end: WalkEnd::Empty,
                count,
            }));
        }
    }
    let reduced: Vec<Rational> = p
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != marking)
        .map(|(_, x)| x.clone())
        .collect();
    let reduced_count = match pn_walk(&reduced, 0) {
        Ok(w) => w.count,
        Err(CurvesError::OnWall(_) | CurvesError::EmptyChamber) => return Ok(None),
        Err(e) => return Err(e),
    };
    let count = reduced_count
        .doubled()
        .add_copies(walls.iter().map(|w| w.copies).sum());
    Ok(Some(PnWalk {
        route: Route::Marked {
            marking,
            start: start.to_vec(),
        },
        walls,
        end: WalkEnd::Boundary {
            marking,
            reduced,
            reduced_count,
        },
        count,
    }))
}
