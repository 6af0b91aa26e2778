//! Sum systems, centred sum systems and their enumeration through joint
//! ordered factorisations.
//!
//! An `m`-part sum system for `N` is a family of finite sets
//! `A_1, ..., A_m` of non-negative integers whose set sum hits every
//! integer in `0..N` exactly once. Every such system arises from a joint
//! ordered factorisation (JOF) of its cardinality tuple, and the number of
//! systems is expressible through associated divisor functions and Stirling
//! numbers of the second kind.
//!
//! The crate is split into:
//!
//! - [`arith`]: the Dirichlet convolution algebra (Möbius, `d_j`, `c_j`,
//!   `c_j^(r)`) over exact 128-bit integers with overflow detection,
//! - [`jof`]: joint ordered factorisations, validation, enumeration and the
//!   closed-form count for a fixed tuple,
//! - [`systems`]: construction and verification of sum systems, centred sum
//!   systems and sum-and-distance systems, plus the sum and sum-of-squares
//!   invariants,
//! - [`counting`]: closed-form and brute-force counts of `m`-part systems,
//!   Stirling numbers, binomial inversion and sum-over-divisors identities,
//! - [`cli`]: the command-line front end.
//!
//! All arithmetic is exact. Half-integers are carried as doubled integers.

pub mod arith;
pub mod cli;
pub mod counting;
mod error;
pub mod jof;
pub mod systems;

pub use error::{Error, Result};
