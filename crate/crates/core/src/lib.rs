//! Exact wall-crossing engine for variation of GIT quotients of affine space
//! by tori, and for the classical `(P^1)^n` and Fulton-MacPherson models of
//! pointed rational curves.
//!
//! Everything here is exact: integers are arbitrary precision and every
//! chamber or wall decision is a sign test on reduced rationals.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, presets and the
//! command line live in the `gkz` crate.
#![no_std]

extern crate alloc;

pub mod curves;
pub mod lattice;
pub mod orlov;
pub mod toric;

pub use lattice::{Integer, IntegerMatrix, Membership, Rational, RationalVector};
