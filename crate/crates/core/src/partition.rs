//! Ordered partitions (bucket orders) of `{1..k}` and their integer embedding.
//!
//! A partition `(S_1, ..., S_l)` with `l >= 2` maps to the score vector whose
//! entry `j` is `-(i-1)` when label `j` sits in bucket `S_i`. The image of this
//! map is exactly the set of integer vectors whose sorted-descending form starts
//! at 0, ends at or below -1 and descends in steps of 0 or 1; [`quasi_link`]
//! inverts it.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{distinct_permutations, t_apply, Permutation};
use crate::{Error, Result};

/// Largest `k` enumerated without an explicit override.
pub const DEFAULT_MAX_K: usize = 10;

/// Integer score vector in `R^k`.
pub type ScoreVector = Vec<i64>;

/// Nonempty, disjoint buckets covering `{0..k}`, at least two of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    blocks: Vec<Vec<usize>>,
    k: usize,
}

impl OrderedPartition {
    /// Blocks hold 0-based labels; each block is sorted on construction.
    pub fn new(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.len() < 2 {
            return Err(Error::Domain(format!(
                "ordered partition needs at least 2 blocks, got {}",
                blocks.len()
            )));
        }
        let mut seen = vec![false; k];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::Domain("empty block".into()));
            }
            block.sort_unstable();
            for &j in block.iter() {
                if j >= k {
                    return Err(Error::Domain(format!("label {} outside 1..={k}", j + 1)));
                }
                if seen[j] {
                    return Err(Error::Domain(format!("label {} appears twice", j + 1)));
                }
                seen[j] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Domain(format!("label {} not covered", missing + 1)));
        }
        Ok(OrderedPartition { blocks, k })
    }

    /// Blocks given with 1-based labels.
    pub fn from_one_based(blocks: &[&[usize]]) -> Result<Self> {
        let k = blocks.iter().map(|b| b.len()).sum();
        let mut out = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.contains(&0) {
                return Err(Error::Domain("labels are 1-based".into()));
            }
            out.push(b.iter().map(|&j| j - 1).collect());
        }
        Self::new(k, out)
    }

    /// Parses `"2|3|1"`, `"1|2,3"` or the compact `"1|23"` (single-digit
    /// labels only).
    pub fn parse(s: &str) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for part in s.trim().split('|') {
            let part = part.trim();
            let labels: Vec<&str> = if part.contains(',') {
                part.split(',').map(str::trim).collect()
            } else {
                part.char_indices().map(|(i, c)| &part[i..i + c.len_utf8()]).collect()
            };
            let mut block = Vec::with_capacity(labels.len());
            for l in labels {
                let j: usize = l
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad label {l:?} in {s:?}")))?;
                if j == 0 {
                    return Err(Error::Parse(format!("labels are 1-based in {s:?}")));
                }
                block.push(j - 1);
            }
            blocks.push(block);
        }
        let k = blocks.iter().map(Vec::len).sum();
        Self::new(k, blocks)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn top_block(&self) -> &[usize] {
        &self.blocks[0]
    }

    /// 0-based bucket index of every label.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.k];
        for (i, b) in self.blocks.iter().enumerate() {
            for &j in b {
                r[j] = i;
            }
        }
        r
    }

    /// `c_i = |S_1| + ... + |S_i|` for `i = 1..=l`.
    pub fn cumulative_sizes(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|b| {
                acc += b.len();
                acc
            })
            .collect()
    }

    /// Blocks with 1-based labels, for serialization.
    pub fn one_based_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&j| j + 1).collect())
            .collect()
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (n, j) in b.iter().enumerate() {
                if n > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", j + 1)?;
            }
        }
        Ok(())
    }
}

impl core::str::FromStr for OrderedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Every nontrivial ordered partition of `{1..k}` for `2 <= k <= 10`.
///
/// Order: block count ascending, then lexicographic in the sequence of
/// sorted blocks.
pub fn enumerate_ordered_partitions(k: usize) -> Result<Vec<OrderedPartition>> {
    enumerate_with_limit(k, DEFAULT_MAX_K)
}

pub fn enumerate_with_limit(k: usize, max_k: usize) -> Result<Vec<OrderedPartition>> {
    Error::check_k("ordered partition enumeration", k, 2, max_k)?;
    let mut out = Vec::new();
    let all: Vec<usize> = (0..k).collect();
    for l in 2..=k {
        let mut prefix = Vec::with_capacity(l);
        fill_blocks(&all, l, &mut prefix, &mut |blocks| {
            out.push(OrderedPartition {
                blocks: blocks.to_vec(),
                k,
            })
        });
    }
    Ok(out)
}

fn fill_blocks(
    remaining: &[usize],
    blocks_left: usize,
    prefix: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if blocks_left == 1 {
        prefix.push(remaining.to_vec());
        emit(prefix);
        prefix.pop();
        return;
    }
    let max_size = remaining.len() - (blocks_left - 1);
    let mut current = Vec::new();
    lex_subsets(remaining, 0, max_size, &mut current, &mut |block| {
        let rest: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|j| !block.contains(j))
            .collect();
        prefix.push(block.to_vec());
        fill_blocks(&rest, blocks_left - 1, prefix, emit);
        prefix.pop();
    });
}

/// Nonempty subsets of `items` (sorted) of size at most `max_size`, in
/// lexicographic order of their sorted element lists.
fn lex_subsets(
    items: &[usize],
    start: usize,
    max_size: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if current.len() == max_size {
        return;
    }
    for i in start..items.len() {
        current.push(items[i]);
        visit(current);
        lex_subsets(items, i + 1, max_size, current, visit);
        current.pop();
    }
}

/// Entry `j` is `-(i-1)` when label `j` lies in the `i`-th bucket.
pub fn embed(s: &OrderedPartition) -> ScoreVector {
    s.ranks().into_iter().map(|r| -(r as i64)).collect()
}

/// Sorted-descending form starts at 0, ends at or below -1, and every
/// consecutive gap is 0 or 1.
pub fn is_in_skcz(v: &[i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut sorted = v.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted[0] == 0
        && *sorted.last().unwrap() <= -1
        && sorted.windows(2).all(|w| matches!(w[0] - w[1], 0 | 1))
}

/// Inverse of [`embed`]: bucket `i` collects the labels scored `-(i-1)`.
pub fn quasi_link(v: &[i64]) -> Result<OrderedPartition> {
    if !is_in_skcz(v) {
        return Err(Error::Domain(format!(
            "{v:?} is not an embedded ordered partition"
        )));
    }
    let depth = (-v.iter().min().unwrap()) as usize;
    let mut blocks = vec![Vec::new(); depth + 1];
    for (j, &x) in v.iter().enumerate() {
        blocks[(-x) as usize].push(j);
    }
    OrderedPartition::new(v.len(), blocks)
}

/// Relabels every bucket through `sigma`: bucket `i` becomes `σ(S_i)`.
pub fn permute_partition(sigma: &Permutation, s: &OrderedPartition) -> Result<OrderedPartition> {
    Error::check_dim(s.k(), sigma.k())?;
    let blocks = s
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&j| sigma.image(j)).collect())
        .collect();
    OrderedPartition::new(s.k(), blocks)
}

/// The indicator `ζ(S)` with ones at positions `c_i + 1` (1-based) for
/// `i < l`, together with the cumulative sizes `c_1..c_{l-1}`.
///
/// `-T ζ(S)` is the sorted-descending embedding of `S`.
pub fn zeta_and_cumsums(s: &OrderedPartition) -> (Vec<i64>, Vec<usize>) {
    let mut c = s.cumulative_sizes();
    c.pop();
    let mut zeta = vec![0i64; s.k()];
    for &ci in &c {
        zeta[ci] = 1;
    }
    (zeta, c)
}

/// All of `S_k C_Z`, built as the distinct rearrangements of `-T s` over
/// nonzero `s ∈ {0,1}^k` with `s_1 = 0`. Independent of [`enumerate_ordered_partitions`].
pub fn skcz_vectors(k: usize) -> Result<Vec<ScoreVector>> {
    Error::check_k("S_k C_Z enumeration", k, 2, DEFAULT_MAX_K)?;
    let mut out = Vec::new();
    for mask in 1u32..(1 << (k - 1)) {
        let mut s = vec![0i64; k];
        for (bit, slot) in s[1..].iter_mut().enumerate() {
            *slot = ((mask >> bit) & 1) as i64;
        }
        let staircase: Vec<i64> = t_apply(&s).into_iter().map(|x| -x).collect();
        out.extend(distinct_permutations(&staircase));
    }
    Ok(out)
}

/// Short label for a partition, same as its `Display` form.
pub fn label(s: &OrderedPartition) -> String {
    format!("{s}")
}
