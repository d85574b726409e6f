//! The semiorder hyperplane arrangement `{1 - (v_i - v_j) = 0 : i != j}`.
//!
//! The WW hinge is affine on the closure of each cell, and every closed cell
//! meets the embedded ordered partitions.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;
use crate::partition::{skcz_vectors, ScoreVector};
use crate::{Error, Result};

/// Largest `k` for the exhaustive witness scan.
pub const WITNESS_MAX_K: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    fn of(x: &Rational) -> Sign {
        if x.is_positive() {
            Sign::Pos
        } else if x.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    fn admits(self, x: &Rational) -> bool {
        match self {
            Sign::Pos => !x.is_negative(),
            Sign::Neg => !x.is_positive(),
            Sign::Zero => x.is_zero(),
        }
    }
}

/// Signs of `1 - (v_i - v_j)` over the `k(k-1)` ordered pairs, row-major
/// with the diagonal skipped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    k: usize,
    signs: Vec<Sign>,
}

impl SignVector {
    pub fn k(&self) -> usize {
        self.k
    }

    fn slot(k: usize, i: usize, j: usize) -> usize {
        i * (k - 1) + if j < i { j } else { j - 1 }
    }

    /// Sign for the ordered pair `(i, j)`, 0-based, `i != j`.
    pub fn get(&self, i: usize, j: usize) -> Sign {
        assert!(i != j && i < self.k && j < self.k, "pair ({i},{j}) out of range");
        self.signs[Self::slot(self.k, i, j)]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }
}

fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
}

fn level(v: &[Rational], i: usize, j: usize) -> Rational {
    Rational::one() - (&v[i] - &v[j])
}

pub fn sign_vector(v: &[Rational]) -> SignVector {
    let k = v.len();
    SignVector {
        k,
        signs: pairs(k).map(|(i, j)| Sign::of(&level(v, i, j))).collect(),
    }
}

/// Membership in the closed cell: strict signs relax to weak inequalities,
/// zero signs stay equalities.
pub fn closed_cell_contains(theta: &SignVector, w: &[Rational]) -> bool {
    w.len() == theta.k
        && pairs(theta.k)
            .zip(&theta.signs)
            .all(|((i, j), s)| s.admits(&level(w, i, j)))
}

pub fn closed_cell_contains_int(theta: &SignVector, w: &[i64]) -> bool {
    w.len() == theta.k
        && pairs(theta.k).zip(&theta.signs).all(|((i, j), s)| {
            let x = 1 - (w[i] - w[j]);
            match s {
                Sign::Pos => x >= 0,
                Sign::Neg => x <= 0,
                Sign::Zero => x == 0,
            }
        })
}

/// First embedded ordered partition lying in the closed cell `theta`, by
/// exhaustive scan. `None` would contradict the nonemptiness of every
/// closed cell's intersection with `S_k C_Z`.
pub fn skcz_witness(theta: &SignVector) -> Result<Option<ScoreVector>> {
    Error::check_k("closed-cell witness scan", theta.k, 2, WITNESS_MAX_K)?;
    Ok(skcz_vectors(theta.k)?
        .into_iter()
        .find(|w| closed_cell_contains_int(theta, w)))
}

/// Reusable scan set for many witness queries at the same `k`.
#[derive(Debug, Clone)]
pub struct WitnessScanner {
    k: usize,
    candidates: Vec<ScoreVector>,
}

impl WitnessScanner {
    pub fn new(k: usize) -> Result<Self> {
        Error::check_k("closed-cell witness scan", k, 2, WITNESS_MAX_K)?;
        Ok(WitnessScanner {
            k,
            candidates: skcz_vectors(k)?,
        })
    }

    pub fn find(&self, theta: &SignVector) -> Result<Option<&ScoreVector>> {
        Error::check_dim(self.k, theta.k)?;
        Ok(self
            .candidates
            .iter()
            .find(|w| closed_cell_contains_int(theta, w)))
    }
}
