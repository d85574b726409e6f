//! Exact scalars, probability vectors and permutations.
//!
//! Indices are 0-based in code. Documentation and all external formats use
//! 1-based class labels.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Parses `"a/b"`, `"-7"` or a finite decimal such as `"0.51"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) || (digits.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let whole: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let magnitude = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn parse_vector(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    Error::check_dim(a.len(), b.len())?;
    Ok(a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
}

/// `<p, loss>` for an integer loss vector.
pub fn dot_int(a: &[Rational], b: &[i64]) -> Result<Rational> {
    Error::check_dim(a.len(), b.len())?;
    let mut acc = Rational::zero();
    for (x, &y) in a.iter().zip(b) {
        if y != 0 && !x.is_zero() {
            acc += x * BigInt::from(y);
        }
    }
    Ok(acc)
}

/// Indices attaining the maximum entry, ascending.
pub fn argmax<T: Ord>(v: &[T]) -> Vec<usize> {
    let Some(max) = v.iter().max() else {
        return Vec::new();
    };
    (0..v.len()).filter(|&i| &v[i] == max).collect()
}

/// Decimal rendering for display only; rounds half away from zero.
pub fn to_decimal(x: &Rational, digits: usize) -> alloc::string::String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + rat(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if x.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    let frac = frac.to_string();
    let pad = "0".repeat(digits - frac.len());
    format!("{sign}{whole}.{pad}{frac}")
}

/// A point of the probability simplex with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProbVector(Vec<Rational>);

impl ProbVector {
    /// Rejects negative entries and sums other than exactly one.
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::Domain(format!(
                "probability vector needs at least 2 entries, got {}",
                entries.len()
            )));
        }
        if let Some(x) = entries.iter().find(|x| x.is_negative()) {
            return Err(Error::Domain(format!("negative probability {x}")));
        }
        let total: Rational = entries.iter().sum();
        if !total.is_one() {
            return Err(Error::Domain(format!("probabilities sum to {total}, not 1")));
        }
        Ok(ProbVector(entries))
    }

    /// Normalizes nonnegative integer weights.
    pub fn from_weights(weights: &[u64]) -> Result<Self> {
        let total: u64 = weights.iter().sum();
        if total == 0 {
            return Err(Error::Domain("all weights are zero".into()));
        }
        let total = BigInt::from(total);
        Self::new(
            weights
                .iter()
                .map(|&w| Rational::new(BigInt::from(w), total.clone()))
                .collect(),
        )
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_vector(s)?)
    }

    /// Vertex `e_label` (0-based label).
    pub fn vertex(k: usize, label: usize) -> Result<Self> {
        if label >= k {
            return Err(Error::Domain(format!("label {} outside 1..={k}", label + 1)));
        }
        let mut e = alloc::vec![Rational::zero(); k];
        e[label] = Rational::one();
        Self::new(e)
    }

    pub fn uniform(k: usize) -> Result<Self> {
        Self::new(alloc::vec![rat(1, k as i64); k])
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn max(&self) -> &Rational {
        self.0.iter().max().expect("nonempty")
    }

    pub fn argmax(&self) -> Vec<usize> {
        argmax(&self.0)
    }

    pub fn permuted(&self, sigma: &Permutation) -> Result<Self> {
        Ok(ProbVector(sigma.apply(&self.0)?))
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl core::fmt::Display for ProbVector {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A bijection on `{0..k}` acting on vectors by `[σv]_i = v_{σ(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let k = map.len();
        let mut seen = alloc::vec![false; k];
        for &x in &map {
            if x >= k || seen[x] {
                return Err(Error::Domain(format!("not a permutation of 0..{k}: {map:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { map })
    }

    /// Builds from 1-based images, e.g. `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Domain("labels are 1-based".into()));
        }
        Self::new(images.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            map: (0..k).collect(),
        }
    }

    /// The transposition swapping `i` and `j` (0-based).
    pub fn transposition(k: usize, i: usize, j: usize) -> Result<Self> {
        if i >= k || j >= k {
            return Err(Error::Domain(format!("transposition ({i},{j}) outside 0..{k}")));
        }
        let mut map: Vec<usize> = (0..k).collect();
        map.swap(i, j);
        Ok(Permutation { map })
    }

    pub fn k(&self) -> usize {
        self.map.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn apply<T: Clone>(&self, v: &[T]) -> Result<Vec<T>> {
        Error::check_dim(self.k(), v.len())?;
        Ok(self.map.iter().map(|&j| v[j].clone()).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.k()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { map: inv }
    }

    /// Matrix product: `self.compose(other).apply(v) == self.apply(other.apply(v))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        Error::check_dim(self.k(), other.k())?;
        Ok(Permutation {
            map: self.map.iter().map(|&i| other.map[i]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// All `k!` permutations in lexicographic order of their image arrays.
    pub fn all(k: usize) -> Vec<Permutation> {
        distinct_permutations(&(0..k).collect::<Vec<_>>())
            .into_iter()
            .map(|map| Permutation { map })
            .collect()
    }
}

impl core::fmt::Display for Permutation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str(")")
    }
}

/// Every distinct rearrangement of a multiset, in lexicographic order.
pub fn distinct_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut cur = items.to_vec();
    cur.sort();
    let mut out = Vec::new();
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            return out;
        }
    }
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Prefix sums, `T v` with `T` lower-triangular ones.
pub fn t_apply<T>(v: &[T]) -> Vec<T>
where
    T: Clone + Zero + Add<Output = T>,
{
    let mut acc = T::zero();
    v.iter()
        .map(|x| {
            acc = acc.clone() + x.clone();
            acc.clone()
        })
        .collect()
}

/// First differences, `D v`; the inverse of [`t_apply`].
pub fn d_apply<T>(v: &[T]) -> Vec<T>
where
    T: Clone + Zero + Sub<Output = T>,
{
    (0..v.len())
        .map(|i| {
            if i == 0 {
                v[0].clone()
            } else {
                v[i].clone() - v[i - 1].clone()
            }
        })
        .collect()
}

/// The permutation `σ` with `σv` non-increasing; ties keep the smaller
/// original index first.
pub fn sort_desc_permutation<T: Ord>(v: &[T]) -> Permutation {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].cmp(&v[a]));
    Permutation { map: idx }
}
