//! Exact-rational linear programming.
//!
//! Problems are minimizations over a dense row list. The solver converts to
//! standard form, runs a two-phase tableau simplex and uses Bland's rule for
//! both entering and leaving variables, so it terminates on degenerate
//! instances.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::{ProbVector, Rational};
use crate::loss::rho_row;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }

    fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub row: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `None` means unbounded on that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bound {
    pub fn nonnegative() -> Self {
        Bound {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        Bound {
            lower: None,
            upper: None,
        }
    }
}

/// `minimize c·x` subject to row constraints and per-variable bounds.
/// Variables default to `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    bounds: Vec<Bound>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        let bounds = vec![Bound::nonnegative(); objective.len()];
        LinearProgram {
            objective,
            constraints: Vec::new(),
            bounds,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }

    pub fn add_constraint(&mut self, row: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<()> {
        Error::check_dim(self.num_vars(), row.len())?;
        self.constraints.push(Constraint { row, relation, rhs });
        Ok(())
    }

    /// Adds a constraint given as sparse `(column, coefficient)` pairs.
    pub fn add_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) -> Result<()> {
        let mut row = vec![Rational::zero(); self.num_vars()];
        for (j, a) in terms {
            if *j >= row.len() {
                return Err(Error::Dimension {
                    expected: row.len(),
                    found: j + 1,
                });
            }
            row[*j] += a;
        }
        self.add_constraint(row, relation, rhs)
    }

    pub fn set_bounds(&mut self, var: usize, bound: Bound) -> Result<()> {
        if var >= self.num_vars() {
            return Err(Error::Dimension {
                expected: self.num_vars(),
                found: var + 1,
            });
        }
        self.bounds[var] = bound;
        Ok(())
    }

    pub fn set_free(&mut self, var: usize) -> Result<()> {
        self.set_bounds(var, Bound::free())
    }

    pub fn set_objective(&mut self, objective: Vec<Rational>) -> Result<()> {
        Error::check_dim(self.num_vars(), objective.len())?;
        self.objective = objective;
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Result<Rational> {
        crate::algebra::dot(&self.objective, x)
    }

    /// Exact check of every row and bound.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = self.bounds.iter().zip(x).all(|(b, xi)| {
            b.lower.as_ref().is_none_or(|l| xi >= l) && b.upper.as_ref().is_none_or(|u| xi <= u)
        });
        bounds_ok
            && self.constraints.iter().all(|c| {
                let lhs = crate::algebra::dot(&c.row, x).expect("validated width");
                c.relation.holds(&lhs, &c.rhs)
            })
    }

    fn validate(&self) -> Result<()> {
        Error::check_dim(self.num_vars(), self.bounds.len())?;
        for c in &self.constraints {
            Error::check_dim(self.num_vars(), c.row.len())?;
        }
        Ok(())
    }
}

/// Plain-text dump, one row per line.
impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn terms(f: &mut fmt::Formatter<'_>, row: &[Rational]) -> fmt::Result {
            let mut first = true;
            for (j, a) in row.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                write!(f, "{a} x{j}")?;
            }
            if first {
                f.write_str("0")?;
            }
            Ok(())
        }
        f.write_str("minimize ")?;
        terms(f, &self.objective)?;
        writeln!(f)?;
        for (i, c) in self.constraints.iter().enumerate() {
            write!(f, "c{i}: ")?;
            terms(f, &c.row)?;
            writeln!(f, " {} {}", c.relation, c.rhs)?;
        }
        for (j, b) in self.bounds.iter().enumerate() {
            match (&b.lower, &b.upper) {
                (Some(l), None) if l.is_zero() => {}
                (None, None) => writeln!(f, "x{j} free")?,
                (Some(l), None) => writeln!(f, "x{j} >= {l}")?,
                (None, Some(u)) => writeln!(f, "x{j} <= {u}")?,
                (Some(l), Some(u)) => writeln!(f, "{l} <= x{j} <= {u}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    /// The optimal point and value, or an error naming the outcome.
    pub fn into_optimal(self) -> Result<(Vec<Rational>, Rational)> {
        match self {
            LpOutcome::Optimal { point, value } => Ok((point, value)),
            LpOutcome::Infeasible => Err(Error::Lp("infeasible".into())),
            LpOutcome::Unbounded => Err(Error::Lp("unbounded".into())),
        }
    }
}

/// How an original variable is recovered from standard-form columns.
#[derive(Debug, Clone)]
enum VarMap {
    Shift { col: usize, lower: Rational },
    Reflect { col: usize, upper: Rational },
    Split { pos: usize, neg: usize },
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.num_vars();

    // Standard-form columns for the original variables.
    let mut maps = Vec::with_capacity(n);
    let mut extra_rows: Vec<(usize, Rational)> = Vec::new();
    let mut ncols = 0;
    for b in &lp.bounds {
        match (&b.lower, &b.upper) {
            (Some(l), upper) => {
                if let Some(u) = upper {
                    if u < l {
                        return Ok(LpOutcome::Infeasible);
                    }
                    extra_rows.push((ncols, u - l));
                }
                maps.push(VarMap::Shift {
                    col: ncols,
                    lower: l.clone(),
                });
                ncols += 1;
            }
            (None, Some(u)) => {
                maps.push(VarMap::Reflect {
                    col: ncols,
                    upper: u.clone(),
                });
                ncols += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split {
                    pos: ncols,
                    neg: ncols + 1,
                });
                ncols += 2;
            }
        }
    }
    let nstruct = ncols;

    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &lp.constraints {
        let mut row = vec![Rational::zero(); nstruct];
        let mut rhs = c.rhs.clone();
        for (a, m) in c.row.iter().zip(&maps) {
            if a.is_zero() {
                continue;
            }
            match m {
                VarMap::Shift { col, lower } => {
                    row[*col] += a;
                    rhs -= a * lower;
                }
                VarMap::Reflect { col, upper } => {
                    row[*col] -= a;
                    rhs -= a * upper;
                }
                VarMap::Split { pos, neg } => {
                    row[*pos] += a;
                    row[*neg] -= a;
                }
            }
        }
        rows.push((row, c.relation, rhs));
    }
    for (col, width) in extra_rows {
        let mut row = vec![Rational::zero(); nstruct];
        row[col] = Rational::from_integer(1.into());
        rows.push((row, Relation::Le, width));
    }
    for (row, rel, rhs) in &mut rows {
        // Negative right-hand sides are negated; `a·x >= 0` becomes
        // `-a·x <= 0` so its slack can start in the basis.
        if rhs.is_negative() || (rhs.is_zero() && *rel == Relation::Ge) {
            row.iter_mut().for_each(|a| *a = -a.clone());
            *rhs = -rhs.clone();
            *rel = rel.flipped();
        }
    }

    let mut struct_cost = vec![Rational::zero(); nstruct];
    for (c, m) in lp.objective.iter().zip(&maps) {
        match m {
            VarMap::Shift { col, .. } => struct_cost[*col] += c,
            VarMap::Reflect { col, .. } => struct_cost[*col] -= c,
            VarMap::Split { pos, neg } => {
                struct_cost[*pos] += c;
                struct_cost[*neg] -= c;
            }
        }
    }

    let x = match Tableau::build(&rows, nstruct).run(&struct_cost) {
        Phase::Infeasible => return Ok(LpOutcome::Infeasible),
        Phase::Unbounded => return Ok(LpOutcome::Unbounded),
        Phase::Optimal(x) => x,
    };

    let point: Vec<Rational> = maps
        .iter()
        .map(|m| match m {
            VarMap::Shift { col, lower } => &x[*col] + lower,
            VarMap::Reflect { col, upper } => upper - &x[*col],
            VarMap::Split { pos, neg } => &x[*pos] - &x[*neg],
        })
        .collect();
    let value = lp.objective_value(&point)?;
    debug_assert!(lp.is_feasible(&point));
    Ok(LpOutcome::Optimal { point, value })
}

enum Phase {
    Optimal(Vec<Rational>),
    Infeasible,
    Unbounded,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

/// Dense tableau `[A | b]` with an explicit basis; `b >= 0` throughout.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
    nstruct: usize,
}

impl Tableau {
    fn build(rows: &[(Vec<Rational>, Relation, Rational)], nstruct: usize) -> Self {
        let mut kinds = vec![ColKind::Structural; nstruct];
        for (_, rel, _) in rows {
            match rel {
                Relation::Le => kinds.push(ColKind::Slack),
                Relation::Ge => kinds.extend([ColKind::Slack, ColKind::Artificial]),
                Relation::Eq => kinds.push(ColKind::Artificial),
            }
        }
        let width = kinds.len();
        let one = Rational::from_integer(1.into());
        let mut t_rows = Vec::with_capacity(rows.len());
        let mut rhs = Vec::with_capacity(rows.len());
        let mut basis = Vec::with_capacity(rows.len());
        let mut next = nstruct;
        for (row, rel, b) in rows {
            let mut r = row.clone();
            r.resize(width, Rational::zero());
            match rel {
                Relation::Le => {
                    r[next] = one.clone();
                    basis.push(next);
                    next += 1;
                }
                Relation::Ge => {
                    r[next] = -one.clone();
                    r[next + 1] = one.clone();
                    basis.push(next + 1);
                    next += 2;
                }
                Relation::Eq => {
                    r[next] = one.clone();
                    basis.push(next);
                    next += 1;
                }
            }
            t_rows.push(r);
            rhs.push(b.clone());
        }
        Tableau {
            rows: t_rows,
            rhs,
            basis,
            kinds,
            nstruct,
        }
    }

    fn run(mut self, struct_cost: &[Rational]) -> Phase {
        let width = self.kinds.len();
        if self.kinds.contains(&ColKind::Artificial) {
            let cost: Vec<Rational> = self
                .kinds
                .iter()
                .map(|k| {
                    if *k == ColKind::Artificial {
                        Rational::from_integer(1.into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            let allowed = vec![true; width];
            match self.simplex(&cost, &allowed) {
                Some(v) if v.is_zero() => {}
                // Phase 1 is bounded below by 0, so `None` cannot happen.
                _ => return Phase::Infeasible,
            }
            self.drive_out_artificials();
        }
        let mut cost = struct_cost.to_vec();
        cost.resize(width, Rational::zero());
        let allowed: Vec<bool> = self.kinds.iter().map(|k| *k != ColKind::Artificial).collect();
        match self.simplex(&cost, &allowed) {
            None => Phase::Unbounded,
            Some(_) => {
                let mut x = vec![Rational::zero(); self.nstruct];
                for (i, &b) in self.basis.iter().enumerate() {
                    if b < self.nstruct {
                        x[b] = self.rhs[i].clone();
                    }
                }
                Phase::Optimal(x)
            }
        }
    }

    /// Minimizes `cost` over columns marked `allowed`. Returns the optimal
    /// objective value, or `None` when unbounded.
    fn simplex(&mut self, cost: &[Rational], allowed: &[bool]) -> Option<Rational> {
        let width = cost.len();
        // Reduced costs d_j = c_j - c_B^T A_j and objective -c_B^T b.
        let mut reduced = cost.to_vec();
        let mut obj = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (r, a) in reduced.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *r -= cb * a;
                }
            }
            obj -= cb * &self.rhs[i];
        }
        loop {
            // Bland: lowest-index improving column.
            let Some(enter) = (0..width).find(|&j| allowed[j] && reduced[j].is_negative()) else {
                return Some(-obj);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave?;
            self.pivot(row, enter);
            let f = reduced[enter].clone();
            if !f.is_zero() {
                for (r, a) in reduced.iter_mut().zip(&self.rows[row]) {
                    if !a.is_zero() {
                        *r -= &f * a;
                    }
                }
                obj -= &f * &self.rhs[row];
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for a in self.rows[row].iter_mut() {
            if !a.is_zero() {
                *a /= &p;
            }
        }
        self.rhs[row] /= &p;
        let support: Vec<usize> = (0..self.rows[row].len())
            .filter(|&j| !self.rows[row][j].is_zero())
            .collect();
        let pivot_row = core::mem::take(&mut self.rows[row]);
        let pivot_rhs = self.rhs[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for &j in &support {
                r[j] -= &f * &pivot_row[j];
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.rows[row] = pivot_row;
        self.basis[row] = col;
    }

    /// After a zero-cost phase 1, pivot basic artificials out or drop their
    /// (redundant) rows.
    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.kinds[self.basis[i]] != ColKind::Artificial {
                i += 1;
                continue;
            }
            let replacement = (0..self.kinds.len())
                .find(|&j| self.kinds[j] != ColKind::Artificial && !self.rows[i][j].is_zero());
            match replacement {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}

/// Re-optimizes `secondary` over the optimal face `{x : c·x = opt_value}`.
pub fn optimize_over_face(lp: &LinearProgram, opt_value: &Rational, secondary: Vec<Rational>) -> Result<LpOutcome> {
    let mut face = lp.clone();
    face.add_constraint(lp.objective.clone(), Relation::Eq, opt_value.clone())?;
    face.set_objective(secondary)?;
    solve_lp(&face)
}

/// Variable layout of [`build_bayes_lp`]: `z` first, then `ξ_y` blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BayesLpLayout {
    pub k: usize,
}

impl BayesLpLayout {
    pub fn z(&self, j: usize) -> usize {
        j
    }

    pub fn xi(&self, y: usize, j: usize) -> usize {
        (self.k - 1) * (1 + y) + j
    }

    pub fn num_vars(&self) -> usize {
        (self.k - 1) * (self.k + 1)
    }
}

/// The reduced-coordinate LP whose optimum is the `n`-constrained Bayes risk
/// of the WW hinge:
///
/// minimize `sum_y p_y 1·ξ_y` over `z >= 0`, `ξ_y >= 0`,
/// `ξ_y >= 1 - ρ_y z`, and `z_j = 0` for the first `n - 1` coordinates.
///
/// `p` must already be sorted non-increasing.
pub fn build_bayes_lp(p: &ProbVector, n: usize) -> Result<LinearProgram> {
    let k = p.k();
    if !p.is_sorted_desc() {
        return Err(Error::Precondition(format!("p = ({p}) is not sorted non-increasing")));
    }
    if n < 1 || n >= k {
        return Err(Error::Precondition(format!("n = {n} outside 1..={}", k - 1)));
    }
    let layout = BayesLpLayout { k };
    let mut objective = vec![Rational::zero(); layout.num_vars()];
    for (y, py) in p.entries().iter().enumerate() {
        for j in 0..k - 1 {
            objective[layout.xi(y, j)] = py.clone();
        }
    }
    let mut lp = LinearProgram::new(objective);
    let one = Rational::from_integer(1.into());
    for y in 0..k {
        for j in 0..k - 1 {
            let mut terms = vec![(layout.xi(y, j), one.clone())];
            terms.extend(
                rho_row(y, j)
                    .into_iter()
                    .map(|(c, a)| (layout.z(c), Rational::from_integer(a.into()))),
            );
            lp.add_sparse(&terms, Relation::Ge, one.clone())?;
        }
    }
    for j in 0..n - 1 {
        lp.add_sparse(&[(layout.z(j), one.clone())], Relation::Eq, Rational::zero())?;
    }
    Ok(lp)
}
