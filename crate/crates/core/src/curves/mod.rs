//! `n` points on `P^1` modulo `SL_2` or `PGL_2`, and the Fulton-MacPherson
//! blowups `F_j` of `(P^1)^n`.
//!
//! A linearization `O(d)` of `(P^1)^n` is a positive weight vector. Its
//! semistable locus is cut out by the inequalities
//! `sum_{i in I} d_i <= sum_{i in I^c} d_i` over coincidence sets `I`, so the
//! chambers are the cells of the arrangement of hyperplanes
//! `H_I = {sum_I d = sum_{I^c} d}`.

mod fm;
mod pn;

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::lattice::{Integer, Rational};

pub use fm::{
    find_abyss_path, fm_wall_mu, fm_weight, AbyssCertificate, AbyssWall, FmLinearization,
    HASSETT_DELTA_SCALE,
};
pub use pn::{
    chamber_sign_pn, collection_count_pn, hm_weight_pn, is_empty_pn, is_semistable_pn,
    marked_walk, pgl2_count, pn_walk, PnWall, PnWalk, Route, WalkEnd,
};

/// Largest number of marked points accepted. Subsets are stored as bitmasks
/// and the arrangements have `2^(n-1) - 1` hyperplanes.
pub const MAX_POINTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvesError {
    TooFewPoints(usize),
    TooManyPoints(usize),
    /// 0-based index of a weight that is not strictly positive.
    NonPositiveWeight(usize),
    DimensionMismatch { expected: usize, found: usize },
    OnWall(MarkSubset),
    EmptyChamber,
    NoBoundaryPath,
    NotPgl2Linearizable,
    /// `mu` of a wall has the wrong sign for the sizes of its two sides.
    SignMismatch { subset: MarkSubset, mu: Integer },
    NoAbyssPath,
    /// The blowup stage is outside the range supported by the request.
    InvalidStage { n: usize, j: usize },
    /// A divisor coefficient outside the admitted size range.
    UnexpectedDivisor(MarkSubset),
    PositiveDivisorCoefficient(MarkSubset),
    NotAmple,
}

impl fmt::Display for CurvesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvesError::TooFewPoints(n) => write!(f, "need at least 3 points, got {n}"),
            CurvesError::TooManyPoints(n) => {
                write!(f, "at most {MAX_POINTS} points are supported, got {n}")
            }
            CurvesError::NonPositiveWeight(i) => write!(f, "weight d{} is not positive", i + 1),
            CurvesError::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} weights, found {found}")
            }
            CurvesError::OnWall(s) => write!(f, "weights lie on the wall H_{s}"),
            CurvesError::EmptyChamber => write!(f, "weights lie in an empty chamber"),
            CurvesError::NoBoundaryPath => write!(f, "no admissible path to a boundary chamber found"),
            CurvesError::NotPgl2Linearizable => {
                write!(f, "weights do not linearize for PGL2: the integer sum is odd")
            }
            CurvesError::SignMismatch { subset, mu } => write!(
                f,
                "mu = {mu} across H_{subset} has the wrong sign for |I| - |I^c| = {}",
                subset.len() as i64 - subset.complement().len() as i64
            ),
            CurvesError::NoAbyssPath => write!(f, "no admissible path into an empty chamber found"),
            CurvesError::InvalidStage { n, j } => {
                write!(f, "blowup stage j = {j} is not valid for n = {n}")
            }
            CurvesError::UnexpectedDivisor(s) => {
                write!(f, "no exceptional divisor for S = {s} at this stage")
            }
            CurvesError::PositiveDivisorCoefficient(s) => {
                write!(f, "coefficient of the divisor for S = {s} must be <= 0")
            }
            CurvesError::NotAmple => write!(f, "linearization is not declared ample"),
        }
    }
}

/// A subset of the marks `{0, ..., n-1}` (printed 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkSubset {
    n: u8,
    bits: u32,
}

impl MarkSubset {
    /// Panics if `n > MAX_POINTS` or an index is out of range.
    pub fn new(n: usize, members: &[usize]) -> Self {
        assert!(n <= MAX_POINTS, "too many marks");
        let mut bits = 0u32;
        for &i in members {
            assert!(i < n, "mark {i} out of range for n = {n}");
            bits |= 1 << i;
        }
        MarkSubset { n: n as u8, bits }
    }

    pub fn from_bits(n: usize, bits: u32) -> Self {
        assert!(n <= MAX_POINTS && (bits >> n) == 0, "bits out of range");
        MarkSubset { n: n as u8, bits }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n() && self.bits & (1 << i) != 0
    }

    pub fn complement(&self) -> Self {
        MarkSubset {
            n: self.n,
            bits: !self.bits & full_mask(self.n()),
        }
    }

    /// The representative of `{I, I^c}` with fewer elements, or the one
    /// containing the first mark on a tie.
    pub fn canonical(&self) -> Self {
        let c = self.complement();
        match self.len().cmp(&c.len()) {
            core::cmp::Ordering::Less => *self,
            core::cmp::Ordering::Greater => c,
            core::cmp::Ordering::Equal if self.contains(0) => *self,
            core::cmp::Ordering::Equal => c,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&i| self.contains(i))
    }

    /// `sum_{i in I} x_i - sum_{i in I^c} x_i`.
    pub fn balance(&self, x: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if self.contains(i) {
                s += xi;
            } else {
                s -= xi;
            }
        }
        s
    }
}

impl fmt::Display for MarkSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Canonical representatives of all nonempty proper subsets, by bitmask.
pub fn canonical_subsets(n: usize) -> Vec<MarkSubset> {
    assert!(n <= MAX_POINTS, "too many marks");
    (1..full_mask(n))
        .map(|bits| MarkSubset::from_bits(n, bits))
        .filter(MarkSubset::is_canonical)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Sl2,
    Pgl2,
}

/// Sizes of the two halves of an exceptional collection on the `SL_2`
/// quotient: objects on which `-1` acts trivially and by `-1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParityCount {
    pub even: u64,
    pub odd: u64,
}

impl ParityCount {
    pub const BASE: ParityCount = ParityCount { even: 1, odd: 1 };

    pub fn total(&self) -> u64 {
        self.even + self.odd
    }

    pub fn is_balanced(&self) -> bool {
        self.even == self.odd
    }

    /// Two copies of a collection, the second twisted by `O(1)` on the
    /// `P^1`-bundle, which swaps parities.
    pub fn doubled(&self) -> ParityCount {
        ParityCount {
            even: self.even + self.odd,
            odd: self.odd + self.even,
        }
    }

    /// `k` copies of `[pt / (Z/2)]` add one object of each parity apiece.
    pub fn add_copies(&self, k: u64) -> ParityCount {
        ParityCount {
            even: self.even + k,
            odd: self.odd + k,
        }
    }
}

impl fmt::Display for ParityCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.even, self.odd)
    }
}

/// Checked weight vector for `(P^1)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PnLinearization {
    d: Vec<Rational>,
    group: Group,
}

impl PnLinearization {
    pub fn new(d: Vec<Rational>, group: Group) -> Result<Self, CurvesError> {
        check_weights(&d)?;
        if group == Group::Pgl2 && !pgl2_linearizable(&d) {
            return Err(CurvesError::NotPgl2Linearizable);
        }
        Ok(PnLinearization { d, group })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.d
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }
}

/// `n >= 3`, `n <= MAX_POINTS` and every weight positive.
pub fn check_weights(d: &[Rational]) -> Result<(), CurvesError> {
    if d.len() < 3 {
        return Err(CurvesError::TooFewPoints(d.len()));
    }
    if d.len() > MAX_POINTS {
        return Err(CurvesError::TooManyPoints(d.len()));
    }
    match d.iter().position(|x| *x <= Rational::zero()) {
        Some(i) => Err(CurvesError::NonPositiveWeight(i)),
        None => Ok(()),
    }
}

/// Clears denominators by their least common multiple (without dividing out
/// a common factor of the numerators).
pub fn integer_weights(d: &[Rational]) -> Vec<Integer> {
    use num_integer::Integer as _;
    let l = d
        .iter()
        .fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    d.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Whether the integer form of `d` has even total degree, which is when
/// `O(d)` carries a `PGL_2` linearization.
pub fn pgl2_linearizable(d: &[Rational]) -> bool {
    use num_integer::Integer as _;
    integer_weights(d).iter().sum::<Integer>().is_even()
}
