//! Exact-rational machinery for the ordered partition loss and the
//! Weston-Watkins (WW) multiclass hinge loss.
//!
//! The crate is `no_std` and only needs `alloc`. Every scalar is a
//! [`Rational`] backed by arbitrary-precision integers, so ties between
//! inner risks are decided exactly.
//!
//! Module map:
//!
//! * [`algebra`] rationals, probability vectors, permutations and the
//!   prefix-sum / first-difference operators.
//! * [`partition`] ordered partitions of `{1..k}`, their enumeration, the
//!   integer embedding into `R^k` and its inverse.
//! * [`loss`] WW hinge, ordered partition loss, Crammer-Singer hinge and the
//!   reduced (difference-coordinate) hinge.
//! * [`lp`] a dense exact simplex solver with Bland's rule.
//! * [`risk`] inner and Bayes risks, minimizer sets and argmax-link checks.
//! * [`arrangement`] sign vectors of the semiorder hyperplane arrangement.
//! * [`regions`] Bayes decision regions on the 3-class simplex.
//! * [`witness`] unique-minimizer witnesses and embedding cardinality.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod arrangement;
mod error;
pub mod loss;
pub mod lp;
pub mod partition;
pub mod regions;
pub mod risk;
pub mod witness;

pub use algebra::{Permutation, ProbVector, Rational};
pub use error::Error;
pub use partition::OrderedPartition;

pub type Result<T, E = Error> = core::result::Result<T, E>;
