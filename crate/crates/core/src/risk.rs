//! Inner risks `<p, loss>`, Bayes risks and their minimizer sets.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{argmax, dot_int, rat, sort_desc_permutation, ProbVector, Rational};
use crate::loss::{op_loss, ww_hinge, ww_hinge_int};
use crate::lp::{build_bayes_lp, optimize_over_face, solve_lp, Bound, LinearProgram, LpOutcome, Relation};
use crate::partition::{enumerate_ordered_partitions, skcz_vectors, OrderedPartition};
use crate::{Error, Result};

/// Largest `k` for the brute-force Bayes risks.
pub const BAYES_MAX_K: usize = 8;

/// Largest `k` for the LP-based `Ω` membership test.
pub const OMEGA_MAX_K: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiskReport {
    pub value: Rational,
    /// Every minimizer, in enumeration order.
    pub minimizers: Vec<OrderedPartition>,
    pub unique: bool,
}

/// All of `OP_k` with their loss vectors, built once and reused across `p`.
#[derive(Debug, Clone)]
pub struct LossTable {
    k: usize,
    partitions: Vec<OrderedPartition>,
    losses: Vec<Vec<i64>>,
}

impl LossTable {
    pub fn new(k: usize) -> Result<Self> {
        Error::check_k("ordered partition loss table", k, 2, BAYES_MAX_K)?;
        let partitions = enumerate_ordered_partitions(k)?;
        let losses = partitions.iter().map(op_loss).collect();
        Ok(LossTable { k, partitions, losses })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn partitions(&self) -> &[OrderedPartition] {
        &self.partitions
    }

    pub fn losses(&self) -> &[Vec<i64>] {
        &self.losses
    }

    pub fn index_of(&self, s: &OrderedPartition) -> Option<usize> {
        self.partitions.iter().position(|t| t == s)
    }

    /// Exact minimum of `<p, ℓ(S)>` with the complete argmin set.
    pub fn bayes(&self, p: &ProbVector) -> Result<RiskReport> {
        Error::check_dim(self.k, p.k())?;
        let mut best: Option<Rational> = None;
        let mut minimizers = Vec::new();
        for (s, loss) in self.partitions.iter().zip(&self.losses) {
            let r = dot_int(p.entries(), loss)?;
            match &best {
                Some(b) if r > *b => {}
                Some(b) if r == *b => minimizers.push(s.clone()),
                _ => {
                    best = Some(r);
                    minimizers.clear();
                    minimizers.push(s.clone());
                }
            }
        }
        let unique = minimizers.len() == 1;
        Ok(RiskReport {
            value: best.expect("OP_k is nonempty"),
            minimizers,
            unique,
        })
    }
}

/// `<p, ℓ(S)>`.
pub fn inner_risk(p: &ProbVector, s: &OrderedPartition) -> Result<Rational> {
    Error::check_dim(s.k(), p.k())?;
    dot_int(p.entries(), &op_loss(s))
}

/// Bayes risk of the ordered partition loss by full enumeration of `OP_k`.
pub fn bayes_op(p: &ProbVector) -> Result<RiskReport> {
    LossTable::new(p.k())?.bayes(p)
}

/// Bayes risk of the WW hinge as a minimum over the integer staircase
/// vectors `S_k C_Z`.
pub fn bayes_ww_enum(p: &ProbVector) -> Result<Rational> {
    Error::check_k("S_k C_Z Bayes risk", p.k(), 2, BAYES_MAX_K)?;
    let mut best: Option<Rational> = None;
    for v in skcz_vectors(p.k())? {
        let r = dot_int(p.entries(), &ww_hinge_int(&v))?;
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    Ok(best.expect("S_k C_Z is nonempty"))
}

/// `n`-constrained WW Bayes risk (minimum over `v` with at least `n` tied
/// maxima) via the exact LP.
pub fn bayes_ww_lp(p: &ProbVector, n: usize) -> Result<Rational> {
    Ok(bayes_ww_lp_solution(p, n)?.0)
}

/// Optimal value together with a minimizing score vector `v` in the
/// original (unsorted) label order, normalized so `max v = 0`.
pub fn bayes_ww_lp_solution(p: &ProbVector, n: usize) -> Result<(Rational, Vec<Rational>)> {
    let sigma = sort_desc_permutation(p.entries());
    let sorted = p.permuted(&sigma)?;
    let lp = build_bayes_lp(&sorted, n)?;
    let (x, value) = solve_lp(&lp)?.into_optimal()?;
    // v_1 = 0 and v_{j+1} = -z_j in sorted coordinates.
    let k = p.k();
    let mut u = vec![Rational::zero(); k];
    for j in 0..k - 1 {
        u[j + 1] = -x[j].clone();
    }
    Ok((value, sigma.inverse().apply(&u)?))
}

/// Where `p` sits relative to `Ω` for the WW hinge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaStatus {
    /// `argmax p` has more than one element.
    TiedArgmax,
    /// Every minimizer `v` has `argmax v = argmax p`.
    Inside,
    /// Some minimizer ties another label with `argmax p` (no minimizer ranks
    /// one strictly above it). Counted as outside `Ω`.
    TiedOptimum,
    /// Some minimizer ranks another label strictly above `argmax p`.
    Outside,
}

/// Probes the optimal face of `v ↦ <p, L(v)>` with one LP per competing
/// label, normalized by `v_{j*} = 0`.
pub fn omega_ww_status(p: &ProbVector) -> Result<OmegaStatus> {
    let k = p.k();
    Error::check_k("Ω membership", k, 2, OMEGA_MAX_K)?;
    let top = p.argmax();
    if top.len() != 1 {
        return Ok(OmegaStatus::TiedArgmax);
    }
    let j_star = top[0];
    let m = bayes_ww_lp(p, 1)?;
    let lp = epigraph_lp(p, j_star)?;
    let mut status = OmegaStatus::Inside;
    for j in (0..k).filter(|&j| j != j_star) {
        let mut secondary = vec![Rational::zero(); lp.num_vars()];
        secondary[j] = -Rational::one();
        match optimize_over_face(&lp, &m, secondary)? {
            LpOutcome::Optimal { value, .. } => {
                // value = -max v_j
                if value < Rational::zero() {
                    return Ok(OmegaStatus::Outside);
                }
                if value.is_zero() {
                    status = OmegaStatus::TiedOptimum;
                }
            }
            LpOutcome::Unbounded => return Ok(OmegaStatus::Outside),
            LpOutcome::Infeasible => {
                return Err(Error::Lp(format!("optimal face empty at p = ({p}), risk {m}")))
            }
        }
    }
    Ok(status)
}

/// Variables `v_0..v_{k-1}` (free, `v_{j*}` pinned to 0) followed by
/// `ξ_{y,i} >= max(0, 1 - (v_y - v_i))` for `i != y`.
fn epigraph_lp(p: &ProbVector, j_star: usize) -> Result<LinearProgram> {
    let k = p.k();
    let mut objective = vec![Rational::zero(); k];
    let mut slots = Vec::new();
    for y in 0..k {
        for i in (0..k).filter(|&i| i != y) {
            slots.push((y, i));
            objective.push(p.entries()[y].clone());
        }
    }
    let mut lp = LinearProgram::new(objective);
    for j in 0..k {
        lp.set_free(j)?;
    }
    lp.set_bounds(
        j_star,
        Bound {
            lower: Some(Rational::zero()),
            upper: Some(Rational::zero()),
        },
    )?;
    let one = Rational::one();
    for (n, &(y, i)) in slots.iter().enumerate() {
        lp.add_sparse(
            &[(k + n, one.clone()), (y, one.clone()), (i, -one.clone())],
            Relation::Ge,
            one.clone(),
        )?;
    }
    Ok(lp)
}

pub fn omega_ww(p: &ProbVector) -> Result<bool> {
    Ok(omega_ww_status(p)? == OmegaStatus::Inside)
}

/// Majority condition: a unique label with probability above 1/2.
pub fn omega_cs(p: &ProbVector) -> bool {
    p.argmax().len() == 1 && *p.max() > rat(1, 2)
}

/// Under the majority condition every minimizer's top bucket is the
/// argmax singleton.
pub fn check_majority_prop(p: &ProbVector) -> Result<bool> {
    if *p.max() <= rat(1, 2) {
        return Err(Error::Domain(format!("max p = {} is not above 1/2", p.max())));
    }
    let j_star = p.argmax()[0];
    let report = bayes_op(p)?;
    Ok(report.minimizers.iter().all(|s| s.top_block() == [j_star]))
}

/// `p_{j*} = α`, all other labels `(1-α)/(k-1)`.
pub fn sln_vector(k: usize, alpha: &Rational, j_star: usize) -> Result<ProbVector> {
    if k < 2 || j_star >= k {
        return Err(Error::Domain(format!("label {} outside 1..={k}", j_star + 1)));
    }
    let rest = (Rational::one() - alpha) / Rational::from_integer((k as i64 - 1).into());
    let mut p = vec![rest; k];
    p[j_star] = alpha.clone();
    ProbVector::new(p)
}

/// Symmetric label noise: for `1/k < α < 1` the unique minimizer is
/// `({j*}, rest)`.
pub fn check_sln_prop(k: usize, alpha: &Rational, j_star: usize) -> Result<bool> {
    if *alpha <= rat(1, k as i64) || *alpha >= Rational::one() {
        return Err(Error::Domain(format!("alpha = {alpha} outside (1/{k}, 1)")));
    }
    let p = sln_vector(k, alpha, j_star)?;
    let rest: Vec<usize> = (0..k).filter(|&j| j != j_star).collect();
    let expected = OrderedPartition::new(k, vec![vec![j_star], rest])?;
    let report = bayes_op(&p)?;
    Ok(report.minimizers == [expected])
}

/// For an optimal `v` and `max p > 1/k`, a minimizer `S` of the ordered
/// partition loss with `argmax v ⊆ S_1`.
pub fn top_block_witness(p: &ProbVector, v: &[Rational]) -> Result<Option<OrderedPartition>> {
    Error::check_dim(p.k(), v.len())?;
    if *p.max() <= rat(1, p.k() as i64) {
        return Err(Error::Precondition(format!("max p = {} is not above 1/{}", p.max(), p.k())));
    }
    let report = bayes_op(p)?;
    let risk = crate::algebra::dot(p.entries(), &ww_hinge(v)?)?;
    if risk != report.value {
        return Err(Error::Precondition(format!(
            "v has risk {risk}, Bayes risk is {}",
            report.value
        )));
    }
    let top = argmax(v);
    Ok(report
        .minimizers
        .into_iter()
        .find(|s| top.iter().all(|j| s.top_block().contains(j))))
}

pub fn argmax_in_top_block(p: &ProbVector, v: &[Rational]) -> Result<bool> {
    Ok(top_block_witness(p, v)?.is_some())
}

/// `ṽ` with `-1` at the first least likely label and 0 elsewhere.
pub fn trivial_partition_vector(p: &ProbVector) -> Vec<i64> {
    let e = p.entries();
    let i_star = (0..e.len()).min_by(|&a, &b| e[a].cmp(&e[b])).expect("k >= 2");
    let mut v = vec![0; e.len()];
    v[i_star] = -1;
    v
}
