//! Dense two-phase simplex over any ordered-field scalar.
//!
//! Exact scalars pivot by Bland's smallest-index rule in both the
//! entering and leaving choice, so those runs terminate on every input
//! without perturbation tricks. Float runs pick pivots for numerical
//! health instead — most-negative entering column, minimum-ratio row
//! with near-ties resolved toward the largest pivot element — flipping
//! to Bland's rule through long degenerate stretches, all under a
//! pivot-count cap that turns a cycling or stuck run into an error
//! rather than a hang. A float "optimal" verdict is never taken from
//! the drifted tableau directly: the final basis is re-derived from
//! pristine constraint data and certified by duality, and any
//! discrepancy surfaces as [`Error::LpStalled`] so callers can retry
//! exactly. Intended scale is the few-hundred-column programs produced
//! by the cut-measure distortion certificates, so the tableau is dense
//! and unfactorized.

use crate::scalar::{pivot_eps, Scalar};
use crate::{Error, Rat, Result};

/// Float-mode guard rails, scaled for coefficient data of order one to
/// a few hundred. A reduced cost must clear `FLOAT_COST_TOL` to enter
/// the basis — elimination dust sits orders of magnitude below it — and
/// a pivot element must clear `FLOAT_PIVOT_FLOOR` before a row is
/// divided by it; violating either means the run is numerically stuck,
/// not that the verdict changed.
const FLOAT_COST_TOL: f64 = 1e-9;
const FLOAT_PIVOT_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

/// Sign restriction of one decision variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    NonNeg,
    Free,
}

#[derive(Debug, Clone)]
pub struct Constraint<S> {
    pub coeffs: Vec<S>,
    pub rel: Rel,
    pub rhs: S,
}

#[derive(Debug, Clone)]
pub struct LinearProgram<S> {
    pub sense: Sense,
    pub objective: Vec<S>,
    pub vars: Vec<VarKind>,
    pub constraints: Vec<Constraint<S>>,
}

impl<S: Scalar> LinearProgram<S> {
    pub fn new(sense: Sense, objective: Vec<S>, vars: Vec<VarKind>) -> Result<Self> {
        if objective.len() != vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "objective has {} coefficients for {} variables",
                objective.len(),
                vars.len()
            )));
        }
        Ok(LinearProgram {
            sense,
            objective,
            vars,
            constraints: Vec::new(),
        })
    }

    pub fn constrain(&mut self, coeffs: Vec<S>, rel: Rel, rhs: S) -> Result<()> {
        if coeffs.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "constraint has {} coefficients for {} variables",
                coeffs.len(),
                self.vars.len()
            )));
        }
        self.constraints.push(Constraint { coeffs, rel, rhs });
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<S> {
    Optimal { x: Vec<S>, value: S },
    Infeasible,
    Unbounded,
}

/// Outcome plus the pivot count that produced it (the pivot rules are
/// deterministic for a fixed scalar type, so it doubles as a regression
/// fingerprint).
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<S> {
    pub outcome: LpOutcome<S>,
    pub pivots: u64,
}

// ---------------------------------------------------------------------------
// Tableau
// ---------------------------------------------------------------------------

struct Tableau<S> {
    a: Vec<Vec<S>>,
    b: Vec<S>,
    basis: Vec<usize>,
    /// Reduced-cost row of the objective currently being minimized.
    red: Vec<S>,
    /// Value of that objective at the current basic solution.
    val: S,
    eps: S,
    /// Entering threshold: a column's reduced cost must fall below
    /// `-cost_tol`. Zero in exact mode, [`FLOAT_COST_TOL`] for floats.
    cost_tol: S,
    pivots: u64,
    pivot_cap: u64,
}

impl<S: Scalar> Tableau<S> {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.red.len()
    }

    /// Load a fresh objective (costs per column) and price out the
    /// current basis.
    fn set_objective(&mut self, costs: Vec<S>) {
        debug_assert_eq!(costs.len(), self.cols());
        self.red = costs;
        self.val = S::zero();
        for i in 0..self.rows() {
            let k = self.basis[i];
            if self.red[k].is_zero() {
                continue;
            }
            let f = self.red[k].clone();
            self.val = self.val.clone() + f.clone() * self.b[i].clone();
            for j in 0..self.cols() {
                self.red[j] = self.red[j].clone() - f.clone() * self.a[i][j].clone();
            }
        }
        // Anchor the basic columns at exactly zero reduced cost; in
        // float mode the elimination above leaves dust there.
        for i in 0..self.rows() {
            let k = self.basis[i];
            self.red[k] = S::zero();
        }
    }

    fn pivot(&mut self, r: usize, c: usize) -> Result<()> {
        self.pivots += 1;
        if self.pivots > self.pivot_cap {
            return Err(Error::LpStalled);
        }
        let p = self.a[r][c].clone();
        debug_assert!(!p.is_zero());
        for j in 0..self.cols() {
            self.a[r][j] = self.a[r][j].clone() / p.clone();
        }
        self.b[r] = self.b[r].clone() / p.clone();
        self.a[r][c] = S::one();
        for i in 0..self.rows() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for j in 0..self.cols() {
                self.a[i][j] = self.a[i][j].clone() - f.clone() * self.a[r][j].clone();
            }
            self.a[i][c] = S::zero();
            self.b[i] = self.b[i].clone() - f.clone() * self.b[r].clone();
        }
        if !self.red[c].is_zero() {
            let f = self.red[c].clone();
            for j in 0..self.cols() {
                self.red[j] = self.red[j].clone() - f.clone() * self.a[r][j].clone();
            }
            self.red[c] = S::zero();
            self.val = self.val.clone() + f * self.b[r].clone();
        }
        self.basis[r] = c;
        Ok(())
    }

    /// Run pivots on the current objective until optimal or unbounded.
    /// Columns at index `>= col_limit` are barred from entering (used
    /// to fence off artificials in phase 2 transitions). Exact scalars
    /// follow Bland's rule end to end, which terminates by theorem.
    /// Floats normally pick pivots for numerical health, but that pair
    /// of rules can cycle on degenerate corners (and these cut-cone
    /// programs are full of them), so a long stretch of degenerate
    /// pivots flips the run to Bland's rule until the objective moves
    /// again; the pivot cap stays as the formal terminator.
    fn optimize(&mut self, col_limit: usize) -> Result<bool> {
        let flip = 2 * self.rows() as u64 + 16;
        let floor = S::from_f64(FLOAT_PIVOT_FLOOR);
        let mut stuck: u64 = 0;
        loop {
            let bland = S::EXACT || stuck >= flip;
            let neg_tol = S::zero() - self.cost_tol.clone();
            let entering = if bland {
                (0..col_limit).find(|&j| self.red[j] < neg_tol)
            } else {
                // Most negative reduced cost: fewer pivots, and each
                // one makes real progress instead of shuffling a
                // degenerate corner.
                let mut best: Option<usize> = None;
                for j in 0..col_limit {
                    if self.red[j] < neg_tol
                        && best.is_none_or(|b| self.red[j] < self.red[b])
                    {
                        best = Some(j);
                    }
                }
                best
            };
            let Some(c) = entering else {
                return Ok(true);
            };
            let r = if bland {
                self.leave_bland(c)
            } else {
                self.leave_stable(c)
            };
            let Some(r) = r else {
                return Ok(false);
            };
            // Dividing a row by roundoff dust corrupts the whole
            // tableau; declare the run stuck instead.
            if !S::EXACT && !(self.a[r][c] > floor) {
                return Err(Error::LpStalled);
            }
            let degenerate = !(self.b[r] > self.eps);
            self.pivot(r, c)?;
            stuck = if degenerate { stuck + 1 } else { 0 };
        }
    }

    /// Leaving row: minimum ratio, ties broken by smallest basic index.
    fn leave_bland(&self, c: usize) -> Option<usize> {
        let mut leave: Option<usize> = None;
        for i in 0..self.rows() {
            if self.a[i][c] <= self.eps {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    let lhs = self.b[i].clone() * self.a[l][c].clone();
                    let rhs = self.b[l].clone() * self.a[i][c].clone();
                    lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        leave
    }

    /// Leaving row by a two-pass ratio test: the minimum ratio sets a
    /// narrow feasibility window, and the best-conditioned pivot inside
    /// the window wins. Entries at or below the pivot floor count as
    /// zero — a dust entry on a degenerate row must not block a column,
    /// and dividing by one would corrupt the tableau. Both reliefs
    /// trade a bounded sliver of basic feasibility (well inside the
    /// audit tolerance) for pivot quality.
    fn leave_stable(&self, c: usize) -> Option<usize> {
        let floor = S::from_f64(FLOAT_PIVOT_FLOOR);
        let mut min_ratio: Option<S> = None;
        for i in 0..self.rows() {
            if self.a[i][c] <= floor {
                continue;
            }
            let ratio = self.b[i].clone() / self.a[i][c].clone();
            if min_ratio.clone().is_none_or(|m| ratio < m) {
                min_ratio = Some(ratio);
            }
        }
        let m = min_ratio?;
        let window = m.clone() + S::from_f64(1e-9) * (S::one() + m);
        let mut best: Option<usize> = None;
        for i in 0..self.rows() {
            if self.a[i][c] <= floor {
                continue;
            }
            let ratio = self.b[i].clone() / self.a[i][c].clone();
            if ratio <= window && best.is_none_or(|b| self.a[i][c] > self.a[b][c]) {
                best = Some(i);
            }
        }
        best
    }
}

// ---------------------------------------------------------------------------
// Standard form and the float basis audit
// ---------------------------------------------------------------------------

/// How one input row lands in standard form: relation after rhs-sign
/// normalization plus the slack and artificial column assigned to it.
struct RowPlan {
    flipped: bool,
    rel: Rel,
    slack: Option<usize>,
    art: Option<usize>,
}

/// Pristine standard-form row (coefficients over all columns, rhs >= 0).
fn standard_row<S: Scalar>(
    c: &Constraint<S>,
    col_of: &[(usize, Option<usize>)],
    plan: &RowPlan,
    total_cols: usize,
) -> (Vec<S>, S) {
    let sign = if plan.flipped {
        S::zero() - S::one()
    } else {
        S::one()
    };
    let mut row = vec![S::zero(); total_cols];
    for (v, coef) in c.coeffs.iter().enumerate() {
        let val = sign.clone() * coef.clone();
        let (plus, minus) = col_of[v];
        row[plus] = val.clone();
        if let Some(m) = minus {
            row[m] = S::zero() - val;
        }
    }
    if let Some(sc) = plan.slack {
        row[sc] = match plan.rel {
            Rel::Ge => S::zero() - S::one(),
            _ => S::one(),
        };
    }
    if let Some(ac) = plan.art {
        row[ac] = S::one();
    }
    (row, sign * c.rhs.clone())
}

/// Gaussian elimination with partial pivoting; `None` when a pivot
/// falls below the singularity floor (NaN pivots land here too, since
/// they fail every comparison).
fn gauss_solve<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Option<Vec<S>> {
    let n = b.len();
    let floor = S::from_f64(1e-12);
    for k in 0..n {
        let mut piv = k;
        for i in k + 1..n {
            if a[i][k].abs() > a[piv][k].abs() {
                piv = i;
            }
        }
        if !(a[piv][k].abs() > floor) {
            return None;
        }
        a.swap(k, piv);
        b.swap(k, piv);
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() / a[k][k].clone();
            for j in k..n {
                a[i][j] = a[i][j].clone() - f.clone() * a[k][j].clone();
            }
            b[i] = b[i].clone() - f * b[k].clone();
        }
    }
    for k in (0..n).rev() {
        let mut acc = b[k].clone();
        for j in k + 1..n {
            acc = acc - a[k][j].clone() * b[j].clone();
        }
        b[k] = acc / a[k][k].clone();
    }
    Some(b)
}

/// Recombine split columns into the caller's variables.
fn assemble_x<S: Scalar>(col_of: &[(usize, Option<usize>)], col_val: &[S]) -> Vec<S> {
    col_of
        .iter()
        .map(|&(plus, minus)| match minus {
            None => col_val[plus].clone(),
            Some(m) => col_val[plus].clone() - col_val[m].clone(),
        })
        .collect()
}

/// Certify a float run's final basis against pristine data. The basic
/// point and the duals are re-derived from the original rows (killing
/// any drift the pivoted tableau accumulated), then checked: `x_B >= 0`,
/// every reduced cost `c_j - y . A_j >= 0`, and every input constraint
/// satisfied, all within a fixed tolerance. Success returns the fresh
/// point and its objective value in minimization sense; every failure
/// is [`Error::LpStalled`] — by weak duality a certified point is
/// optimal, so a failed audit is a numerical artifact, never a verdict.
#[allow(clippy::too_many_arguments)]
fn audit_float_basis<S: Scalar>(
    lp: &LinearProgram<S>,
    col_of: &[(usize, Option<usize>)],
    plans: &[RowPlan],
    total_cols: usize,
    art_start: usize,
    basis: &[usize],
    rowids: &[usize],
    costs: &[S],
) -> Result<(Vec<S>, S)> {
    let m = basis.len();
    let tol = S::from_f64(1e-7);
    let neg_tol = S::zero() - tol.clone();
    if basis.iter().any(|&c| c >= art_start) {
        return Err(Error::LpStalled);
    }
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for &i in rowids {
        let (row, r) = standard_row(&lp.constraints[i], col_of, &plans[i], total_cols);
        rows.push(row);
        rhs.push(r);
    }
    let bmat: Vec<Vec<S>> = (0..m)
        .map(|r| (0..m).map(|k| rows[r][basis[k]].clone()).collect())
        .collect();
    let tmat: Vec<Vec<S>> = (0..m)
        .map(|r| (0..m).map(|k| bmat[k][r].clone()).collect())
        .collect();
    let xb = gauss_solve(bmat, rhs).ok_or(Error::LpStalled)?;
    if xb.iter().any(|v| *v < neg_tol) {
        return Err(Error::LpStalled);
    }
    let cb: Vec<S> = basis.iter().map(|&c| costs[c].clone()).collect();
    let y = gauss_solve(tmat, cb).ok_or(Error::LpStalled)?;
    let mut red: Vec<S> = costs[..art_start].to_vec();
    for (k, row) in rows.iter().enumerate() {
        if y[k].is_zero() {
            continue;
        }
        for j in 0..art_start {
            if !row[j].is_zero() {
                red[j] = red[j].clone() - y[k].clone() * row[j].clone();
            }
        }
    }
    if red.iter().any(|v| *v < neg_tol) {
        return Err(Error::LpStalled);
    }
    let mut col_val = vec![S::zero(); art_start];
    for (k, &c) in basis.iter().enumerate() {
        col_val[c] = xb[k].clone();
    }
    let x = assemble_x(col_of, &col_val);
    // Rows dropped as redundant during phase 1 are not covered by the
    // basis solve, so feasibility is checked against every input row.
    for c in &lp.constraints {
        let mut lhs = S::zero();
        for (coef, xv) in c.coeffs.iter().zip(&x) {
            lhs = lhs + coef.clone() * xv.clone();
        }
        let slack = c.rhs.clone() - lhs;
        let lim = tol.clone() * (S::one() + c.rhs.abs());
        let bad = match c.rel {
            Rel::Le => slack < S::zero() - lim,
            Rel::Ge => slack > lim,
            Rel::Eq => slack.abs() > lim,
        };
        if bad {
            return Err(Error::LpStalled);
        }
    }
    let mut value = S::zero();
    for (k, &c) in basis.iter().enumerate() {
        value = value + costs[c].clone() * xb[k].clone();
    }
    Ok((x, value))
}

fn binomial_saturating(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        match acc.checked_mul(n - i) {
            Some(v) => acc = v / (i + 1),
            None => return u64::MAX,
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

/// Solve by the two-phase simplex method. Exact scalars give exact
/// optima. Float optima are recomputed from the final basis on pristine
/// data and certified by duality before being returned, so a float
/// `Optimal` carries a verified point; numerically degenerate inputs
/// surface as [`Error::LpStalled`] instead, in which case callers
/// should retry exactly (see [`solve_f64_robust`]).
pub fn solve<S: Scalar>(lp: &LinearProgram<S>) -> Result<LpSolution<S>> {
    for c in &lp.constraints {
        if c.coeffs.len() != lp.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "constraint has {} coefficients for {} variables",
                c.coeffs.len(),
                lp.vars.len()
            )));
        }
    }

    // Column layout: structural columns first (free variables split
    // into a positive and a negative part), then slack/surplus, then
    // artificials.
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(lp.vars.len());
    let mut ncols = 0usize;
    for kind in &lp.vars {
        match kind {
            VarKind::NonNeg => {
                col_of.push((ncols, None));
                ncols += 1;
            }
            VarKind::Free => {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
    }
    let structural = ncols;

    let rows = lp.constraints.len();
    // Normalize rhs >= 0 (which may flip the relation), then hand each
    // row its slack and artificial column.
    let mut plans: Vec<RowPlan> = lp
        .constraints
        .iter()
        .map(|c| {
            let flipped = c.rhs < S::zero();
            let rel = match (c.rel, flipped) {
                (Rel::Le, true) => Rel::Ge,
                (Rel::Ge, true) => Rel::Le,
                (r, _) => r,
            };
            RowPlan {
                flipped,
                rel,
                slack: None,
                art: None,
            }
        })
        .collect();
    let mut next = structural;
    for p in &mut plans {
        if matches!(p.rel, Rel::Le | Rel::Ge) {
            p.slack = Some(next);
            next += 1;
        }
    }
    let art_start = next;
    for p in &mut plans {
        if matches!(p.rel, Rel::Ge | Rel::Eq) {
            p.art = Some(next);
            next += 1;
        }
    }
    let total_cols = next;

    let mut a = Vec::with_capacity(rows);
    let mut b = Vec::with_capacity(rows);
    let mut basis = Vec::with_capacity(rows);
    for (p, c) in plans.iter().zip(&lp.constraints) {
        let (row, r) = standard_row(c, &col_of, p, total_cols);
        a.push(row);
        b.push(r);
        // Ge rows start on their artificial: the surplus column points
        // the wrong way for a nonnegative basic value.
        basis.push(p.art.or(p.slack).expect("row has a slack or artificial"));
    }

    // Exact runs terminate by Bland's theorem, so their cap (a multiple
    // of the basis count) is only a guard against bugs. Float runs have
    // no such theorem under the conditioning-driven rules; a cycling
    // run must hit the cap in reasonable time and fall back to exact
    // arithmetic, so the cap is a generous multiple of the problem
    // size instead.
    let pivot_cap = if S::EXACT {
        binomial_saturating((total_cols + rows) as u64, rows as u64).saturating_mul(4)
    } else {
        200 * (total_cols + rows + 10) as u64
    };
    let mut t = Tableau {
        a,
        b,
        basis,
        red: vec![S::zero(); total_cols],
        val: S::zero(),
        eps: pivot_eps::<S>(),
        cost_tol: if S::EXACT {
            S::zero()
        } else {
            S::from_f64(FLOAT_COST_TOL)
        },
        pivots: 0,
        pivot_cap,
    };
    // Input row behind each tableau row; trimmed alongside the
    // redundant-row drops so the final basis can be audited against the
    // rows it actually covers.
    let mut rowids: Vec<usize> = (0..rows).collect();

    // Phase 1: minimize the artificial mass.
    if art_start < total_cols {
        let mut costs = vec![S::zero(); total_cols];
        for c in costs.iter_mut().skip(art_start) {
            *c = S::one();
        }
        t.set_objective(costs);
        // The artificial mass is bounded below by zero, so an
        // "unbounded" verdict here can only be float roundoff steering
        // the ratio test; surface it as a stall so callers fall back to
        // exact arithmetic.
        if !t.optimize(total_cols)? {
            return Err(Error::LpStalled);
        }
        let feas_tol = if S::EXACT {
            S::zero()
        } else {
            S::from_f64(1e-7)
        };
        if t.val > feas_tol {
            return Ok(LpSolution {
                outcome: LpOutcome::Infeasible,
                pivots: t.pivots,
            });
        }
        // Drive artificials out of the basis; rows that cannot pivot
        // onto a real column are redundant and get dropped.
        let mut r = 0;
        while r < t.rows() {
            if t.basis[r] < art_start {
                r += 1;
                continue;
            }
            let eps = t.eps.clone();
            let col = (0..art_start).find(|&j| {
                t.a[r][j] > eps || t.a[r][j] < S::zero() - eps.clone()
            });
            match col {
                Some(c) => {
                    t.pivot(r, c)?;
                    r += 1;
                }
                None => {
                    t.a.remove(r);
                    t.b.remove(r);
                    t.basis.remove(r);
                    rowids.remove(r);
                }
            }
        }
        for row in &mut t.a {
            row.truncate(art_start);
        }
        t.red.truncate(art_start);
    }

    // Phase 2: the caller's objective, as a minimization.
    let mut costs = vec![S::zero(); t.cols()];
    for (v, coef) in lp.objective.iter().enumerate() {
        let c = match lp.sense {
            Sense::Min => coef.clone(),
            Sense::Max => S::zero() - coef.clone(),
        };
        let (plus, minus) = col_of[v];
        costs[plus] = c.clone();
        if let Some(m) = minus {
            costs[m] = S::zero() - c;
        }
    }
    t.set_objective(costs.clone());
    let cols = t.cols();
    if !t.optimize(cols)? {
        return Ok(LpSolution {
            outcome: LpOutcome::Unbounded,
            pivots: t.pivots,
        });
    }

    let (x, min_value) = if S::EXACT {
        // Read the solution off the tableau; exact arithmetic cannot
        // drift, so the basic values are the answer.
        let mut col_val = vec![S::zero(); t.cols()];
        for i in 0..t.rows() {
            col_val[t.basis[i]] = t.b[i].clone();
        }
        (assemble_x(&col_of, &col_val), t.val.clone())
    } else {
        audit_float_basis(
            lp, &col_of, &plans, total_cols, art_start, &t.basis, &rowids, &costs,
        )?
    };
    let value = match lp.sense {
        Sense::Min => min_value,
        Sense::Max => S::zero() - min_value,
    };
    Ok(LpSolution {
        outcome: LpOutcome::Optimal { x, value },
        pivots: t.pivots,
    })
}

/// Float solve with an exact safety net: if the f64 run stalls or
/// produces non-finite numbers, the identical program is re-solved in
/// rational arithmetic (every f64 coefficient converts exactly) and the
/// outcome is rounded back.
pub fn solve_f64_robust(lp: &LinearProgram<f64>) -> Result<LpSolution<f64>> {
    let float_run = solve(lp);
    match float_run {
        Ok(LpSolution {
            outcome: LpOutcome::Optimal { ref x, value },
            ..
        }) if !value.is_finite() || x.iter().any(|v| !v.is_finite()) => {}
        Err(Error::LpStalled) => {}
        other => return other,
    }
    let exact = solve(&to_exact(lp))?;
    let outcome = match exact.outcome {
        LpOutcome::Optimal { x, value } => LpOutcome::Optimal {
            x: x.iter().map(Scalar::as_f64).collect(),
            value: value.as_f64(),
        },
        LpOutcome::Infeasible => LpOutcome::Infeasible,
        LpOutcome::Unbounded => LpOutcome::Unbounded,
    };
    Ok(LpSolution {
        outcome,
        pivots: exact.pivots,
    })
}

/// Exact rational copy of a float program (bit-exact conversion, no
/// rounding).
pub fn to_exact(lp: &LinearProgram<f64>) -> LinearProgram<Rat> {
    LinearProgram {
        sense: lp.sense,
        objective: lp.objective.iter().map(|&v| Rat::from_f64(v)).collect(),
        vars: lp.vars.clone(),
        constraints: lp
            .constraints
            .iter()
            .map(|c| Constraint {
                coeffs: c.coeffs.iter().map(|&v| Rat::from_f64(v)).collect(),
                rel: c.rel,
                rhs: Rat::from_f64(c.rhs),
            })
            .collect(),
    }
}
