//! Exact integer and rational linear algebra, and rational polyhedral cones.
//!
//! Vectors of `Z^r` are plain `Vec<Integer>`; points of `Q^r` (characters on
//! a path, wall points) are [`RationalVector`]s. Matrices store rows; a
//! weight matrix keeps one weight per column.

mod cone;
mod hnf;
mod matrix;
mod simplex;
mod smith;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cone::{cone_member, nonnegative_relation, strictly_positive_functional, Membership};
pub use hnf::{hyperplane_coordinates, kernel_basis, primitive_normal, HyperplaneCoordinates};
pub use matrix::{determinant, solve_square, sublattice_index, IntegerMatrix};
pub use simplex::feasible_point;
pub use smith::{smith, SmithForm};

pub type Integer = BigInt;
pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    /// The vectors do not span a subspace of the required rank.
    Rank { expected: usize, found: usize },
    Singular,
    NotPrimitive,
    /// A vector that should lie in a lattice hyperplane does not.
    NotInHyperplane,
    DimensionMismatch { expected: usize, found: usize },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Rank { expected, found } => {
                write!(f, "span has rank {found}, expected {expected}")
            }
            LatticeError::Singular => f.write_str("matrix is singular"),
            LatticeError::NotPrimitive => f.write_str("vector is not primitive"),
            LatticeError::NotInHyperplane => f.write_str("vector does not lie in the hyperplane"),
            LatticeError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
        }
    }
}

/// A point of `Q^r` with reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zero(dim: usize) -> Self {
        RationalVector(alloc::vec![Rational::zero(); dim])
    }

    pub fn from_integers(v: &[Integer]) -> Self {
        RationalVector(v.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn from_i64(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    /// Pairing with an integer covector.
    pub fn pair(&self, covector: &[Integer]) -> Rational {
        self.0
            .iter()
            .zip(covector)
            .map(|(x, c)| x * Rational::from_integer(c.clone()))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(x, y)| x * y)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn scale(&self, s: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(x, y)| x - y).collect())
    }

    /// `self + t * direction`.
    pub fn along(&self, direction: &RationalVector, t: &Rational) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .zip(&direction.0)
                .map(|(x, d)| x + d * t)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// The primitive integer vector on the ray through `self`, or `None` for zero.
    pub fn primitive_direction(&self) -> Option<Vec<Integer>> {
        if self.is_zero() {
            return None;
        }
        let mut denom_lcm = Integer::one();
        for x in &self.0 {
            denom_lcm = num_integer::Integer::lcm(&denom_lcm, x.denom());
        }
        let ints: Vec<Integer> = self
            .0
            .iter()
            .map(|x| (x * Rational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        Some(primitive_part(&ints))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Integer pairing `<u, v>`.
pub fn pair(u: &[Integer], v: &[Integer]) -> Integer {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn gcd_all(v: &[Integer]) -> Integer {
    v.iter()
        .fold(Integer::zero(), |g, x| num_integer::Integer::gcd(&g, x))
}

pub fn is_primitive(v: &[Integer]) -> bool {
    gcd_all(v).is_one()
}

/// Divides out the content of `v`; the zero vector is returned unchanged.
pub fn primitive_part(v: &[Integer]) -> Vec<Integer> {
    let g = gcd_all(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Flips `v` so that its first nonzero entry is positive.
pub fn lex_positive(mut v: Vec<Integer>) -> Vec<Integer> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut v {
                *x = -core::mem::take(x);
            }
        }
    }
    v
}

pub fn ints(v: &[i64]) -> Vec<Integer> {
    v.iter().map(|&x| Integer::from(x)).collect()
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
