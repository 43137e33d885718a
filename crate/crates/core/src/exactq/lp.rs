//! Exact two-phase revised simplex over [`Rational`].
//!
//! The basis is kept as a sparse LU factorization with product-form updates,
//! refactored every few dozen pivots. Every constraint row owns one identity
//! column (slack or artificial), so the dual multipliers come straight out of
//! a backward solve. Single-variable rows of the form `-a·v ≤ β` (`a > 0`)
//! are absorbed as lower bounds through the shift `v = l + v'`; all other
//! variables are free and are handled natively (a free nonbasic column is
//! negated instead of split).
//!
//! Pivoting uses the largest-coefficient rule and falls back to Bland's rule
//! for the remainder of a solve after a run of degenerate pivots, so every
//! solve terminates and is fully deterministic.
//!
//! A [`Simplex`] can be re-optimized for any number of objectives from the
//! last optimal basis, and equality right-hand sides can be changed and
//! repaired with the dual simplex method. Every optimal answer is checked
//! exactly against the original data before it is returned.

use serde::{Deserialize, Serialize};

use super::factor::BasisFactor;
use super::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Sparse row `Σ coeffs[k].1 · v[coeffs[k].0]` against a right-hand side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRow {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

impl LinearRow {
    pub fn new(coeffs: Vec<(usize, Rational)>, rhs: Rational) -> Self {
        LinearRow { coeffs, rhs }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (i, a)| &acc + &(a * &point[*i]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub num_vars: usize,
    pub sense: Sense,
    pub objective: Vec<Rational>,
    /// `a · v ≤ rhs`
    pub inequalities: Vec<LinearRow>,
    /// `c · v = rhs`
    pub equalities: Vec<LinearRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of a solve. For `Optimal`, the multipliers certify the optimum of
/// the sense-normalized objective `s·c` (`s = +1` maximizing, `-1` minimizing):
/// `λ ≥ 0`, `λᵀA + μᵀC = s·c` and `s·cᵀv = λᵀb + μᵀd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<Rational>,
    pub ineq_duals: Vec<Rational>,
    pub eq_duals: Vec<Rational>,
    pub objective_value: Option<Rational>,
}

impl LpSolution {
    fn without_point(status: LpStatus) -> Self {
        LpSolution {
            status,
            primal: Vec::new(),
            ineq_duals: Vec::new(),
            eq_duals: Vec::new(),
            objective_value: None,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LpError {
    #[error("row {row} references variable {index} but the problem has {num_vars} variables")]
    IndexOutOfRange {
        row: usize,
        index: usize,
        num_vars: usize,
    },
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

fn check_rows(rows: &[LinearRow], num_vars: usize) -> Result<(), LpError> {
    for (r, row) in rows.iter().enumerate() {
        if let Some((index, _)) = row.coeffs.iter().find(|(i, _)| *i >= num_vars) {
            return Err(LpError::IndexOutOfRange {
                row: r,
                index: *index,
                num_vars,
            });
        }
    }
    Ok(())
}

impl LpProblem {
    pub fn validate(&self) -> Result<(), LpError> {
        if self.objective.len() != self.num_vars {
            return Err(LpError::DimensionMismatch {
                expected: self.num_vars,
                got: self.objective.len(),
            });
        }
        check_rows(&self.inequalities, self.num_vars)?;
        check_rows(&self.equalities, self.num_vars)
    }
}

/// Solve `p` exactly.
pub fn lp_solve(p: &LpProblem) -> Result<LpSolution, LpError> {
    p.validate()?;
    let mut s = Simplex::new(p.num_vars, &p.inequalities, &p.equalities)?;
    Ok(s.solve(p.sense, &p.objective))
}

/// Exact membership of a full point (all variables) in the system.
pub fn lp_feasible(p: &LpProblem, point: &[Rational]) -> Result<bool, LpError> {
    check_rows(&p.inequalities, p.num_vars)?;
    check_rows(&p.equalities, p.num_vars)?;
    if point.len() != p.num_vars {
        return Err(LpError::DimensionMismatch {
            expected: p.num_vars,
            got: point.len(),
        });
    }
    Ok(p.inequalities.iter().all(|r| r.eval(point) <= r.rhs)
        && p.equalities.iter().all(|r| r.eval(point) == r.rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Col {
    Free,
    Bounded,
    Slack,
    Artificial,
}

/// Where a constraint row came from.
#[derive(Clone, Copy, Debug)]
enum Origin {
    Ineq(usize),
    Eq(usize),
}

/// Degenerate pivots in a row before switching to Bland's rule.
const DEGENERATE_LIMIT: usize = 5000;
const DUAL_PIVOT_LIMIT: usize = 200_000;
/// Product-form updates kept before the basis is factored again.
const REFACTOR_INTERVAL: usize = 64;

/// Warm-startable exact simplex state over a fixed constraint matrix.
#[derive(Clone, Debug)]
pub struct Simplex {
    nvars: usize,
    ineqs: Vec<LinearRow>,
    eqs: Vec<LinearRow>,
    /// Lower bound of each structural variable, if any (`Bounded` columns).
    lower: Vec<Option<Rational>>,
    /// For bounded variables: the ineq row realizing the bound and its `-a` coefficient.
    bound_src: Vec<Option<(usize, Rational)>>,
    origin: Vec<Origin>,
    sign: Vec<Rational>,
    id_col: Vec<usize>,
    kind: Vec<Col>,
    negated: Vec<bool>,
    /// Sparse columns of the standard-form matrix, by row.
    cols: Vec<Vec<(usize, Rational)>>,
    /// Basic values by basis position.
    xb: Vec<Rational>,
    basis: Vec<usize>,
    basic_row: Vec<Option<usize>>,
    factor: BasisFactor,
    cost: Vec<Rational>,
    feasible: bool,
    pivots: usize,
}

impl Simplex {
    /// Set up the standard form and run phase one.
    pub fn new(nvars: usize, ineqs: &[LinearRow], eqs: &[LinearRow]) -> Result<Simplex, LpError> {
        check_rows(ineqs, nvars)?;
        check_rows(eqs, nvars)?;

        let mut lower: Vec<Option<Rational>> = vec![None; nvars];
        let mut bound_src: Vec<Option<(usize, Rational)>> = vec![None; nvars];
        let mut is_bound = vec![false; ineqs.len()];
        for (i, row) in ineqs.iter().enumerate() {
            let nz: Vec<&(usize, Rational)> =
                row.coeffs.iter().filter(|(_, a)| !a.is_zero()).collect();
            if nz.len() != 1 || !nz[0].1.is_negative() {
                continue;
            }
            let (v, a) = (nz[0].0, &nz[0].1);
            // a·v ≤ β with a < 0  ⇔  v ≥ β / a
            let l = &row.rhs / a;
            is_bound[i] = true;
            let tighter = match &lower[v] {
                None => true,
                Some(cur) => l > *cur,
            };
            if tighter {
                lower[v] = Some(l);
                bound_src[v] = Some((i, -a));
            }
        }

        let mut kind: Vec<Col> = lower
            .iter()
            .map(|l| if l.is_some() { Col::Bounded } else { Col::Free })
            .collect();

        let mut origin: Vec<Origin> = (0..ineqs.len())
            .filter(|&i| !is_bound[i])
            .map(Origin::Ineq)
            .collect();
        origin.extend((0..eqs.len()).map(Origin::Eq));
        let m = origin.len();

        let mut s = Simplex {
            nvars,
            ineqs: ineqs.to_vec(),
            eqs: eqs.to_vec(),
            lower,
            bound_src,
            origin,
            sign: vec![Rational::one(); m],
            id_col: vec![0; m],
            kind: Vec::new(),
            negated: vec![false; nvars],
            cols: Vec::new(),
            xb: Vec::with_capacity(m),
            basis: vec![0; m],
            basic_row: Vec::new(),
            factor: BasisFactor::new(0, &[]),
            cost: Vec::new(),
            feasible: false,
            pivots: 0,
        };

        let b_adj: Vec<Rational> = (0..m).map(|r| s.shifted_rhs(r)).collect();
        // Column layout: structural | slack per ineq row | artificial where needed.
        let mut slack_of_row = vec![None; m];
        let mut next = nvars;
        for (r, o) in s.origin.iter().enumerate() {
            if let Origin::Ineq(_) = o {
                slack_of_row[r] = Some(next);
                kind.push(Col::Slack);
                next += 1;
            }
        }
        let mut art_of_row = vec![None; m];
        for r in 0..m {
            let needs_art = match s.origin[r] {
                Origin::Eq(_) => true,
                Origin::Ineq(_) => b_adj[r].is_negative(),
            };
            if needs_art {
                art_of_row[r] = Some(next);
                kind.push(Col::Artificial);
                next += 1;
            }
        }
        let ncols = next;
        s.kind = kind;

        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); ncols];
        for r in 0..m {
            let sign = if b_adj[r].is_negative() {
                -Rational::one()
            } else {
                Rational::one()
            };
            let src = match s.origin[r] {
                Origin::Ineq(i) => &s.ineqs[i],
                Origin::Eq(k) => &s.eqs[k],
            };
            let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(src.coeffs.len());
            for (j, a) in &src.coeffs {
                match merged.iter_mut().find(|(c, _)| c == j) {
                    Some(e) => e.1 = &e.1 + a,
                    None => merged.push((*j, a.clone())),
                }
            }
            for (j, a) in merged {
                if !a.is_zero() {
                    cols[j].push((r, &a * &sign));
                }
            }
            if let Some(c) = slack_of_row[r] {
                cols[c].push((r, sign.clone()));
            }
            if let Some(c) = art_of_row[r] {
                cols[c].push((r, Rational::one()));
                s.id_col[r] = c;
            } else {
                s.id_col[r] = slack_of_row[r].expect("row without identity column");
            }
            s.xb.push(&b_adj[r] * &sign);
            s.sign[r] = sign;
            s.basis[r] = s.id_col[r];
        }
        s.cols = cols;
        s.basic_row = vec![None; ncols];
        for r in 0..m {
            s.basic_row[s.basis[r]] = Some(r);
        }
        s.refactor();

        s.phase_one();
        Ok(s)
    }

    fn ncols(&self) -> usize {
        self.kind.len()
    }

    fn refactor(&mut self) {
        let cols: Vec<&[(usize, Rational)]> = self
            .basis
            .iter()
            .map(|&j| self.cols[j].as_slice())
            .collect();
        self.factor = BasisFactor::new(self.basis.len(), &cols);
    }

    /// Right-hand side of row `r` after the lower-bound shift (before sign).
    fn shifted_rhs(&self, r: usize) -> Rational {
        let src = match self.origin[r] {
            Origin::Ineq(i) => &self.ineqs[i],
            Origin::Eq(k) => &self.eqs[k],
        };
        let mut b = src.rhs.clone();
        for (j, a) in &src.coeffs {
            if let Some(l) = &self.lower[*j] {
                b = b.sub_mul(a, l);
            }
        }
        b
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible
    }

    /// Number of pivots performed so far (all phases).
    pub fn pivot_count(&self) -> usize {
        self.pivots
    }

    pub fn num_rows(&self) -> usize {
        self.basis.len()
    }

    fn dot(y: &[Rational], col: &[(usize, Rational)]) -> Rational {
        col.iter().fold(Rational::zero(), |acc, (r, a)| {
            if y[*r].is_zero() {
                acc
            } else {
                &acc + &(a * &y[*r])
            }
        })
    }

    /// Simplex multipliers `c_Bᵀ B⁻¹` for the current costs.
    fn multipliers(&self) -> Vec<Rational> {
        let cb = self.basis.iter().map(|&j| self.cost[j].clone()).collect();
        self.factor.btran(cb)
    }

    fn reduced_cost(&self, y: &[Rational], j: usize) -> Rational {
        &self.cost[j] - &Self::dot(y, &self.cols[j])
    }

    fn objective(&self) -> Rational {
        self.basis
            .iter()
            .zip(&self.xb)
            .filter(|(j, _)| !self.cost[**j].is_zero())
            .fold(Rational::zero(), |acc, (j, v)| &acc + &(&self.cost[*j] * v))
    }

    fn phase_one(&mut self) {
        self.cost = self
            .kind
            .iter()
            .map(|k| {
                if *k == Col::Artificial {
                    -Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let bounded = self.primal_loop();
        debug_assert!(bounded, "phase one cannot be unbounded");
        if self.objective().is_negative() {
            self.feasible = false;
            return;
        }
        self.drive_out_artificials();
        self.feasible = true;
    }

    fn drive_out_artificials(&mut self) {
        for r in 0..self.basis.len() {
            if self.kind[self.basis[r]] != Col::Artificial {
                continue;
            }
            let rho = self.factor.inverse_row(r);
            let j = (0..self.ncols()).find(|&j| {
                self.kind[j] != Col::Artificial
                    && self.basic_row[j].is_none()
                    && !Self::dot(&rho, &self.cols[j]).is_zero()
            });
            if let Some(j) = j {
                let alpha = self.factor.ftran(&self.cols[j]);
                self.pivot(r, j, alpha);
            }
        }
    }

    fn entering(&mut self, bland: bool) -> Option<usize> {
        let y = self.multipliers();
        let mut best: Option<(usize, Rational)> = None;
        for j in 0..self.ncols() {
            if self.basic_row[j].is_some() || self.kind[j] == Col::Artificial {
                continue;
            }
            let d = self.reduced_cost(&y, j);
            let eligible = match self.kind[j] {
                Col::Free => !d.is_zero(),
                _ => d.is_positive(),
            };
            if !eligible {
                continue;
            }
            if bland {
                best = Some((j, d));
                break;
            }
            if best.as_ref().map_or(true, |(_, b)| d.abs() > b.abs()) {
                best = Some((j, d));
            }
        }
        let (j, d) = best?;
        if d.is_negative() {
            self.negate_column(j);
        }
        Some(j)
    }

    fn negate_column(&mut self, j: usize) {
        debug_assert_eq!(self.kind[j], Col::Free);
        debug_assert!(self.basic_row[j].is_none());
        for (_, a) in &mut self.cols[j] {
            *a = -&*a;
        }
        self.cost[j] = -&self.cost[j];
        self.negated[j] = !self.negated[j];
    }

    /// Minimum-ratio position for the entering column `alpha = B⁻¹a_j`;
    /// ties go to the smallest basic column index.
    fn leaving(&self, alpha: &[Rational]) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (r, t) in alpha.iter().enumerate() {
            if !t.is_positive() || self.kind[self.basis[r]] == Col::Free {
                continue;
            }
            let ratio = &self.xb[r] / t;
            let better = match &best {
                None => true,
                Some((b, v)) => ratio < *v || (ratio == *v && self.basis[r] < self.basis[*b]),
            };
            if better {
                best = Some((r, ratio));
            }
        }
        best.map(|(r, _)| r)
    }

    /// Primal simplex on the current costs. Returns false when unbounded.
    fn primal_loop(&mut self) -> bool {
        let mut bland = false;
        let mut streak = 0usize;
        loop {
            let Some(j) = self.entering(bland) else {
                return true;
            };
            let alpha = self.factor.ftran(&self.cols[j]);
            let Some(r) = self.leaving(&alpha) else {
                return false;
            };
            if self.xb[r].is_zero() {
                streak += 1;
                if streak >= DEGENERATE_LIMIT {
                    bland = true;
                }
            } else {
                streak = 0;
            }
            self.pivot(r, j, alpha);
        }
    }

    fn pivot(&mut self, r: usize, j: usize, alpha: Vec<Rational>) {
        self.pivots += 1;
        let theta = &self.xb[r] / &alpha[r];
        if !theta.is_zero() {
            for (i, a) in alpha.iter().enumerate() {
                if i != r && !a.is_zero() {
                    self.xb[i] = self.xb[i].sub_mul(a, &theta);
                }
            }
        }
        self.xb[r] = theta;
        let old = self.basis[r];
        self.basic_row[old] = None;
        self.basis[r] = j;
        self.basic_row[j] = Some(r);
        if self.factor.eta_count() >= REFACTOR_INTERVAL {
            self.refactor();
        } else {
            self.factor.update(r, &alpha);
        }
    }

    /// Optimize `objective` (length `nvars`) from the current basis.
    pub fn solve(&mut self, sense: Sense, objective: &[Rational]) -> LpSolution {
        assert_eq!(objective.len(), self.nvars, "objective length");
        if !self.feasible {
            return LpSolution::without_point(LpStatus::Infeasible);
        }
        let s = match sense {
            Sense::Maximize => Rational::one(),
            Sense::Minimize => -Rational::one(),
        };
        let mut cost = vec![Rational::zero(); self.ncols()];
        for j in 0..self.nvars {
            let c = &objective[j] * &s;
            cost[j] = if self.negated[j] { -c } else { c };
        }
        self.cost = cost;
        if !self.primal_loop() {
            let mut sol = LpSolution::without_point(LpStatus::Unbounded);
            sol.primal = self.primal_point();
            return sol;
        }
        let primal = self.primal_point();
        let (ineq_duals, eq_duals) = self.duals();
        let value: Rational = objective
            .iter()
            .zip(&primal)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum();
        let sol = LpSolution {
            status: LpStatus::Optimal,
            primal,
            ineq_duals,
            eq_duals,
            objective_value: Some(value),
        };
        if let Err(msg) = self.certify(&sol, &s, objective) {
            panic!("simplex certificate check failed: {msg}");
        }
        sol
    }

    fn primal_point(&self) -> Vec<Rational> {
        (0..self.nvars)
            .map(|j| {
                let mut v = match self.basic_row[j] {
                    Some(r) => self.xb[r].clone(),
                    None => Rational::zero(),
                };
                if self.negated[j] {
                    v = -v;
                }
                match &self.lower[j] {
                    Some(l) => &v + l,
                    None => v,
                }
            })
            .collect()
    }

    fn duals(&self) -> (Vec<Rational>, Vec<Rational>) {
        let y = self.multipliers();
        let mut lam = vec![Rational::zero(); self.ineqs.len()];
        let mut mu = vec![Rational::zero(); self.eqs.len()];
        for r in 0..self.basis.len() {
            let v = &y[r] * &self.sign[r];
            match self.origin[r] {
                Origin::Ineq(i) => lam[i] = v,
                Origin::Eq(k) => mu[k] = v,
            }
        }
        for j in 0..self.nvars {
            if let Some((i, neg_a)) = &self.bound_src[j] {
                // bound row a·v ≤ β with a = -neg_a; λ = d_j / a
                lam[*i] = &self.reduced_cost(&y, j) / &(-neg_a);
            }
        }
        (lam, mu)
    }

    fn certify(
        &self,
        sol: &LpSolution,
        s: &Rational,
        objective: &[Rational],
    ) -> Result<(), String> {
        let v = &sol.primal;
        for (i, row) in self.ineqs.iter().enumerate() {
            if row.eval(v) > row.rhs {
                return Err(format!("inequality {i} violated"));
            }
        }
        for (k, row) in self.eqs.iter().enumerate() {
            if row.eval(v) != row.rhs {
                return Err(format!("equality {k} violated"));
            }
        }
        if let Some(i) = sol.ineq_duals.iter().position(|l| l.is_negative()) {
            return Err(format!("negative multiplier on inequality {i}"));
        }
        let mut combo = vec![Rational::zero(); self.nvars];
        let mut dual_value = Rational::zero();
        for (row, y) in self
            .ineqs
            .iter()
            .zip(&sol.ineq_duals)
            .chain(self.eqs.iter().zip(&sol.eq_duals))
        {
            if y.is_zero() {
                continue;
            }
            for (j, a) in &row.coeffs {
                combo[*j] = &combo[*j] + &(a * y);
            }
            dual_value = &dual_value + &(&row.rhs * y);
        }
        for j in 0..self.nvars {
            if combo[j] != &objective[j] * s {
                return Err(format!("dual infeasible at column {j}"));
            }
        }
        let primal_value = sol.objective_value.as_ref().expect("optimal value") * s;
        if primal_value != dual_value {
            return Err(format!(
                "duality gap: primal {primal_value} vs dual {dual_value}"
            ));
        }
        Ok(())
    }

    /// Replace the right-hand side of equality `k`. Call
    /// [`Simplex::restore_feasibility`] afterwards.
    pub fn set_equality_rhs(&mut self, k: usize, value: Rational) {
        self.eqs[k].rhs = value;
    }

    /// Recompute the basic solution for the current right-hand sides and
    /// repair primal feasibility with the dual simplex method on a zero
    /// objective. Falls back to a fresh phase one if the basis was never
    /// feasible or the dual simplex hits its pivot cap.
    pub fn restore_feasibility(&mut self) -> bool {
        if !self.feasible {
            return self.rebuild();
        }
        let m = self.basis.len();
        let b: Vec<(usize, Rational)> = (0..m)
            .map(|r| (r, &self.shifted_rhs(r) * &self.sign[r]))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        self.xb = self.factor.ftran(&b);

        let mut steps = 0usize;
        loop {
            // Artificials that survived phase one sit on redundant rows.
            if (0..m).any(|r| self.kind[self.basis[r]] == Col::Artificial && !self.xb[r].is_zero())
            {
                return false;
            }
            let leave = (0..m)
                .filter(|&r| self.kind[self.basis[r]] != Col::Free && self.xb[r].is_negative())
                .min_by_key(|&r| self.basis[r]);
            let Some(r) = leave else {
                return true;
            };
            let rho = self.factor.inverse_row(r);
            let enter = (0..self.ncols()).find_map(|j| {
                if self.basic_row[j].is_some() || self.kind[j] == Col::Artificial {
                    return None;
                }
                let t = Self::dot(&rho, &self.cols[j]);
                let ok = match self.kind[j] {
                    Col::Free => !t.is_zero(),
                    _ => t.is_negative(),
                };
                ok.then_some((j, t))
            });
            let Some((j, t)) = enter else {
                return false;
            };
            if t.is_positive() {
                self.negate_column(j);
            }
            let alpha = self.factor.ftran(&self.cols[j]);
            self.pivot(r, j, alpha);
            steps += 1;
            if steps > DUAL_PIVOT_LIMIT {
                return self.rebuild();
            }
        }
    }

    fn rebuild(&mut self) -> bool {
        let fresh = Simplex::new(self.nvars, &self.ineqs, &self.eqs)
            .expect("rows were validated at construction");
        let pivots = self.pivots + fresh.pivots;
        *self = fresh;
        self.pivots = pivots;
        self.feasible
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn row(c: &[(usize, i64)], rhs: i64) -> LinearRow {
        LinearRow::new(
            c.iter().map(|&(i, a)| (i, Rational::from(a))).collect(),
            Rational::from(rhs),
        )
    }

    #[test]
    fn single_upper_bound() {
        let p = LpProblem {
            num_vars: 1,
            sense: Sense::Maximize,
            objective: vec![Rational::one()],
            inequalities: vec![LinearRow::new(vec![(0, Rational::one())], q(3, 2))],
            equalities: vec![],
        };
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective_value, Some(q(3, 2)));
        assert_eq!(s.ineq_duals, vec![Rational::one()]);
    }

    #[test]
    fn contradictory_bounds_infeasible() {
        // x ≥ 1, x ≤ 0
        let p = LpProblem {
            num_vars: 1,
            sense: Sense::Maximize,
            objective: vec![Rational::one()],
            inequalities: vec![row(&[(0, -1)], -1), row(&[(0, 1)], 0)],
            equalities: vec![],
        };
        assert_eq!(lp_solve(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn free_variable_unbounded() {
        let p = LpProblem {
            num_vars: 2,
            sense: Sense::Minimize,
            objective: vec![Rational::one(), Rational::zero()],
            inequalities: vec![row(&[(1, 1)], 4)],
            equalities: vec![],
        };
        assert_eq!(lp_solve(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn textbook_two_phase() {
        // min 2x + 3y s.t. x + y = 4, x - y ≤ 1, x,y ≥ 0 → x = 5/2? No: minimize puts weight on x.
        // x + y = 4, x ≤ 1 + y → x ≤ 5/2, optimum x = 5/2, y = 3/2, value 5 + 9/2 = 19/2.
        let p = LpProblem {
            num_vars: 2,
            sense: Sense::Minimize,
            objective: vec![Rational::from(2), Rational::from(3)],
            inequalities: vec![
                row(&[(0, 1), (1, -1)], 1),
                row(&[(0, -1)], 0),
                row(&[(1, -1)], 0),
            ],
            equalities: vec![row(&[(0, 1), (1, 1)], 4)],
        };
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.primal, vec![q(5, 2), q(3, 2)]);
        assert_eq!(s.objective_value, Some(q(19, 2)));
    }

    #[test]
    fn warm_start_and_rhs_change() {
        // 0 ≤ x, y ≤ 1, x + y = t
        let ineqs = vec![
            row(&[(0, -1)], 0),
            row(&[(1, -1)], 0),
            row(&[(0, 1)], 1),
            row(&[(1, 1)], 1),
        ];
        let eqs = vec![row(&[(0, 1), (1, 1)], 1)];
        let mut s = Simplex::new(2, &ineqs, &eqs).unwrap();
        assert!(s.is_feasible());
        let a = s.solve(Sense::Maximize, &[Rational::one(), Rational::zero()]);
        assert_eq!(a.objective_value, Some(Rational::one()));
        let b = s.solve(Sense::Minimize, &[Rational::one(), Rational::zero()]);
        assert_eq!(b.objective_value, Some(Rational::zero()));
        s.set_equality_rhs(0, Rational::from(3));
        assert!(!s.restore_feasibility());
        s.set_equality_rhs(0, q(3, 2));
        assert!(s.restore_feasibility());
        let c = s.solve(Sense::Minimize, &[Rational::one(), Rational::zero()]);
        assert_eq!(c.objective_value, Some(q(1, 2)));
    }

    #[test]
    fn redundant_equalities() {
        let eqs = vec![row(&[(0, 1), (1, 1)], 2), row(&[(0, 2), (1, 2)], 4)];
        let ineqs = vec![row(&[(0, -1)], 0), row(&[(1, -1)], 0)];
        let p = LpProblem {
            num_vars: 2,
            sense: Sense::Maximize,
            objective: vec![Rational::one(), Rational::zero()],
            inequalities: ineqs,
            equalities: eqs,
        };
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.objective_value, Some(Rational::from(2)));
    }

    #[test]
    fn point_membership() {
        let p = LpProblem {
            num_vars: 1,
            sense: Sense::Maximize,
            objective: vec![Rational::zero()],
            inequalities: vec![row(&[(0, 1)], 1)],
            equalities: vec![],
        };
        assert!(lp_feasible(&p, &[Rational::one()]).unwrap());
        assert!(!lp_feasible(&p, &[Rational::from(2)]).unwrap());
        assert!(lp_feasible(&p, &[]).is_err());
    }
}
