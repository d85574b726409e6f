//! Unique-minimizer witnesses and the embedding cardinality sweep.
//!
//! For each `S` we maximize the margin `t` such that
//! `<p, ℓ(T) - ℓ(S)> >= t` for every `T != S`, over `p` in the simplex and
//! `0 <= t <= 1`. A positive optimum certifies that `S` is the unique
//! minimizer at the optimal `p`.
//!
//! The full LP has `|OP_k| - 1` rows, so it is solved by row generation:
//! solve on an active subset, add the most violated rows, repeat. Each round
//! only tightens the subset LP, and the loop stops once the subset optimum is
//! feasible for every row, at which point it is optimal for the full LP.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{dot_int, ProbVector, Rational};
use crate::lp::{solve_lp, Bound, LinearProgram, LpOutcome, Relation};
use crate::partition::{enumerate_ordered_partitions, OrderedPartition};
use crate::risk::LossTable;
use crate::{Error, Result};

/// Largest `k` for which the sweep backs a published count.
pub const SWEEP_MAX_K: usize = 7;

/// Experimental upper limit.
pub const SWEEP_EXPERIMENTAL_K: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRecord {
    pub partition: OrderedPartition,
    pub witness: ProbVector,
    /// Smallest inner-risk gap to any other partition at `witness`.
    pub margin: Rational,
    /// Row-generation rounds used by the search.
    pub rounds: usize,
}

/// Precomputed `OP_k` and loss vectors for repeated witness searches.
#[derive(Debug, Clone)]
pub struct WitnessSearch {
    table: LossTable,
    batch: usize,
}

impl WitnessSearch {
    pub fn new(k: usize) -> Result<Self> {
        Self::with_limit(k, SWEEP_MAX_K)
    }

    /// Allows `k` up to `max_k` (clamped to [`SWEEP_EXPERIMENTAL_K`]).
    pub fn with_limit(k: usize, max_k: usize) -> Result<Self> {
        Error::check_k("witness search", k, 2, max_k.min(SWEEP_EXPERIMENTAL_K))?;
        Ok(WitnessSearch {
            table: LossTable::new(k)?,
            batch: 2 * k,
        })
    }

    pub fn table(&self) -> &LossTable {
        &self.table
    }

    pub fn k(&self) -> usize {
        self.table.k()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Witness for the partition at `index` in enumeration order.
    pub fn find(&self, index: usize) -> Result<Option<WitnessRecord>> {
        let losses = self.table.losses();
        if index >= losses.len() {
            return Err(Error::Domain(format!("partition index {index} out of range")));
        }
        let k = self.k();
        let own = &losses[index];
        let gaps: Vec<Vec<i64>> = losses
            .iter()
            .map(|other| other.iter().zip(own).map(|(a, b)| a - b).collect())
            .collect();

        let mut active: Vec<usize> = Vec::new();
        let mut rounds = 0;
        loop {
            rounds += 1;
            let (p, t) = match solve_margin_lp(k, &gaps, &active)? {
                Some(sol) => sol,
                None => return Ok(None),
            };
            let mut violated: Vec<(Rational, usize)> = Vec::new();
            let evaluated = margins(&p, &t, &gaps, index)?;
            for (n, gap) in evaluated {
                if gap < t {
                    violated.push((gap, n));
                }
            }
            if violated.is_empty() {
                if !t.is_positive() {
                    return Ok(None);
                }
                return Ok(Some(WitnessRecord {
                    partition: self.table.partitions()[index].clone(),
                    witness: ProbVector::new(p)?,
                    margin: t,
                    rounds,
                }));
            }
            violated.sort();
            active.extend(violated.into_iter().take(self.batch).map(|(_, n)| n));
        }
    }

    /// Re-evaluates every gap at the witness; true iff all are at least the
    /// recorded margin and the margin is positive.
    pub fn certify(&self, record: &WitnessRecord) -> Result<bool> {
        let Some(index) = self.table.index_of(&record.partition) else {
            return Ok(false);
        };
        if !record.margin.is_positive() {
            return Ok(false);
        }
        let own = dot_int(record.witness.entries(), &self.table.losses()[index])?;
        for (n, loss) in self.table.losses().iter().enumerate() {
            if n != index && dot_int(record.witness.entries(), loss)? - &own < record.margin {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Subset LP: maximize `t` over `p ∈ Δ^k`, `0 <= t <= 1`, with only the
/// `active` gap rows. `None` when infeasible.
fn solve_margin_lp(k: usize, gaps: &[Vec<i64>], active: &[usize]) -> Result<Option<(Vec<Rational>, Rational)>> {
    let mut objective = vec![Rational::zero(); k + 1];
    objective[k] = -Rational::one();
    let mut lp = LinearProgram::new(objective);
    lp.set_bounds(
        k,
        Bound {
            lower: Some(Rational::zero()),
            upper: Some(Rational::one()),
        },
    )?;
    let mut simplex_row = vec![Rational::one(); k + 1];
    simplex_row[k] = Rational::zero();
    lp.add_constraint(simplex_row, Relation::Eq, Rational::one())?;
    for &n in active {
        let mut row: Vec<Rational> = gaps[n].iter().map(|&d| Rational::from_integer(d.into())).collect();
        row.push(-Rational::one());
        lp.add_constraint(row, Relation::Ge, Rational::zero())?;
    }
    match solve_lp(&lp)? {
        LpOutcome::Optimal { mut point, .. } => {
            let t = point.pop().expect("k + 1 variables");
            Ok(Some((point, t)))
        }
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(Error::Lp("margin LP unbounded despite t <= 1".into())),
    }
}

/// `(index, <p, gap>)` for every other partition. Uses `i128` over a
/// common denominator when it fits, exact rationals otherwise.
fn margins(p: &[Rational], t: &Rational, gaps: &[Vec<i64>], skip: usize) -> Result<Vec<(usize, Rational)>> {
    let others = (0..gaps.len()).filter(|&n| n != skip);
    if let Some((nums, denom)) = common_denominator(p) {
        // Only rows at or below t matter to the caller; the i128 path
        // screens them out cheaply and computes exact values for the rest.
        let t_scaled = t * Rational::from_integer(denom.clone());
        let denom_r = Rational::from_integer(denom);
        let mut out = Vec::new();
        for n in others {
            let mut acc: i128 = 0;
            for (a, &d) in nums.iter().zip(&gaps[n]) {
                acc += a * d as i128;
            }
            let scaled = Rational::from_integer(acc.into());
            if scaled < t_scaled {
                out.push((n, scaled / &denom_r));
            }
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    for n in others {
        let g = dot_int(p, &gaps[n])?;
        if g < *t {
            out.push((n, g));
        }
    }
    Ok(out)
}

fn common_denominator(p: &[Rational]) -> Option<(Vec<i128>, BigInt)> {
    let denom = p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    // Keep headroom for sums of k products with |gap| < 2^20.
    if denom.bits() > 80 {
        return None;
    }
    let nums = p
        .iter()
        .map(|x| (x.numer() * (&denom / x.denom())).to_i128())
        .collect::<Option<Vec<_>>>()?;
    Some((nums, denom))
}

pub fn find_unique_witness(s: &OrderedPartition) -> Result<Option<WitnessRecord>> {
    let search = WitnessSearch::new(s.k())?;
    let index = search
        .table()
        .index_of(s)
        .ok_or_else(|| Error::Domain(format!("{s} not found in OP_{}", s.k())))?;
    search.find(index)
}

/// Number of partitions of `OP_k` that are the unique minimizer somewhere;
/// fails naming the first partition without a witness.
pub fn embedding_cardinality(k: usize) -> Result<usize> {
    Error::check_k("embedding cardinality", k, 3, SWEEP_MAX_K)?;
    let search = WitnessSearch::new(k)?;
    for index in 0..search.len() {
        if search.find(index)?.is_none() {
            return Err(Error::Domain(format!(
                "no unique-minimizer witness for {}",
                search.table().partitions()[index]
            )));
        }
    }
    let n = search.len();
    debug_assert_eq!(n, enumerate_ordered_partitions(k)?.len());
    Ok(n)
}
