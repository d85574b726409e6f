//! Loss vectors: entry `y` is the loss suffered when the true label is `y`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::partition::OrderedPartition;
use crate::{Error, Result};

/// `h(x) = max(0, 1 - x)`.
pub fn hinge(x: &Rational) -> Rational {
    let r = Rational::one() - x;
    if r > Rational::zero() {
        r
    } else {
        Rational::zero()
    }
}

fn check_classes(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!("need at least 2 classes, got {k}")));
    }
    Ok(())
}

/// Weston-Watkins hinge: `[L(v)]_y = sum_{i != y} h(v_y - v_i)`.
pub fn ww_hinge(v: &[Rational]) -> Result<Vec<Rational>> {
    check_classes(v.len())?;
    Ok((0..v.len())
        .map(|y| {
            (0..v.len())
                .filter(|&i| i != y)
                .map(|i| hinge(&(&v[y] - &v[i])))
                .sum()
        })
        .collect())
}

/// [`ww_hinge`] restricted to integer score vectors.
pub fn ww_hinge_int(v: &[i64]) -> Vec<i64> {
    (0..v.len())
        .map(|y| {
            (0..v.len())
                .filter(|&i| i != y)
                .map(|i| (1 - (v[y] - v[i])).max(0))
                .sum()
        })
        .collect()
}

/// Ordered partition loss. Label `i` in bucket `b` pays `|S_1| - 1` plus
/// `|S_1 ∪ ... ∪ S_{j+1}|` for every earlier bucket boundary `j < b`.
///
/// The values are integers, returned as `i64`.
pub fn op_loss(s: &OrderedPartition) -> Vec<i64> {
    let c = s.cumulative_sizes();
    // escape[b] = c_2 + ... + c_{b+1}: total paid by a label in bucket b.
    let mut escape = vec![0i64; s.len()];
    for b in 1..s.len() {
        escape[b] = escape[b - 1] + c[b] as i64;
    }
    let base = s.top_block().len() as i64 - 1;
    s.ranks().into_iter().map(|b| base + escape[b]).collect()
}

/// Crammer-Singer hinge `[L^CS(v)]_y = max_{i != y} h(v_y - v_i)`.
pub fn cs_hinge(v: &[Rational]) -> Result<Vec<Rational>> {
    check_classes(v.len())?;
    Ok((0..v.len())
        .map(|y| {
            (0..v.len())
                .filter(|&i| i != y)
                .map(|i| hinge(&(&v[y] - &v[i])))
                .max()
                .expect("k >= 2")
        })
        .collect())
}

/// `π(v) = (v_1 - v_2, ..., v_1 - v_k)`.
pub fn pi_map(v: &[Rational]) -> Result<Vec<Rational>> {
    check_classes(v.len())?;
    Ok(v[1..].iter().map(|x| &v[0] - x).collect())
}

/// Coordinates of `ρ_label z` for a 0-based label; `ρ_0` is the identity.
///
/// For `label = m >= 1`, entry `m-1` is `-z_{m-1}` and every other entry `j`
/// is `z_j - z_{m-1}`. These satisfy `π σ_m = ρ_m π` where `σ_m` swaps
/// labels 0 and `m`.
pub fn rho_apply(label: usize, z: &[Rational]) -> Result<Vec<Rational>> {
    let k = z.len() + 1;
    if label >= k {
        return Err(Error::Domain(format!(
            "rho index {} outside 1..={k}",
            label + 1
        )));
    }
    if label == 0 {
        return Ok(z.to_vec());
    }
    let pivot = &z[label - 1];
    Ok(z.iter()
        .enumerate()
        .map(|(j, zj)| if j == label - 1 { -pivot } else { zj - pivot })
        .collect())
}

/// Sparse row form of `ρ_label`: entry `j` of `ρ_label z` equals
/// `sum(coef * z[col])` over the returned pairs.
pub fn rho_row(label: usize, j: usize) -> Vec<(usize, i64)> {
    if label == 0 {
        vec![(j, 1)]
    } else if j == label - 1 {
        vec![(label - 1, -1)]
    } else {
        vec![(j, 1), (label - 1, -1)]
    }
}

/// Reduced hinge `[L̃(z)]_y = sum_j h([ρ_y z]_j)` on difference coordinates.
pub fn reduced_hinge(z: &[Rational]) -> Result<Vec<Rational>> {
    check_classes(z.len() + 1)?;
    (0..=z.len())
        .map(|y| Ok(rho_apply(y, z)?.iter().map(hinge).sum()))
        .collect()
}

/// Closed form of `D L(-T s)` for `s ∈ {0,1}^k` with `s_1 = 0`.
///
/// With 1-based `y`: entry 1 is `min{i : s_i = 1} - 2`; entry `y > 1` is
/// `min{i > y : s_i = 1} - 1` when `s_y = 1` and 0 otherwise. An empty
/// minimum is taken as `k + 1`.
pub fn dl_formula(s: &[i64]) -> Result<Vec<i64>> {
    let k = s.len();
    check_classes(k)?;
    if let Some(x) = s.iter().find(|&&x| x != 0 && x != 1) {
        return Err(Error::Domain(format!("indicator entry {x} is not 0 or 1")));
    }
    if s[0] != 0 {
        return Err(Error::Domain("indicator must have s_1 = 0".into()));
    }
    // 1-based position of the first one strictly after 0-based index `after`.
    let next_one = |after: Option<usize>| -> i64 {
        let start = after.map_or(0, |a| a + 1);
        (start..k)
            .find(|&i| s[i] == 1)
            .map_or(k as i64 + 1, |i| i as i64 + 1)
    };
    Ok((0..k)
        .map(|y| {
            if y == 0 {
                next_one(None) - 2
            } else if s[y] == 1 {
                next_one(Some(y)) - 1
            } else {
                0
            }
        })
        .collect())
}
