//! Exact rational linear programming.
//!
//! Two-phase primal simplex on a dense tableau. Bland's smallest-index rule
//! is the default pivot rule and guarantees termination; a Dantzig rule is
//! available for speed and falls back to Bland after a run of degenerate
//! pivots. Every optimal solution carries a dual vector (one multiplier per
//! constraint, in constraint order) and is checked for primal feasibility,
//! dual feasibility and equal objectives before it is returned.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    Eq,
    Le,
    Ge,
}

/// `minimize cᵀx subject to A x (sense) b, lower <= x <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Matrix,
    pub rhs: Vec<Rational>,
    pub senses: Vec<Sense>,
    /// `None` is −∞.
    pub lower: Vec<Option<Rational>>,
    /// `None` is +∞.
    pub upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    /// All variables free.
    pub fn new(objective: Vec<Rational>, constraints: Matrix, rhs: Vec<Rational>, senses: Vec<Sense>) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraints,
            rhs,
            senses,
            lower: vec![None; n],
            upper: vec![None; n],
        }
    }

    pub fn with_bounds(mut self, lower: Vec<Option<Rational>>, upper: Vec<Option<Rational>>) -> Self {
        self.lower = lower;
        self.upper = upper;
        self
    }

    pub fn nonnegative(mut self) -> Self {
        self.lower = vec![Some(rational::zero()); self.objective.len()];
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rhs.len()
    }

    pub fn check_shape(&self) -> Result<()> {
        let n = self.num_vars();
        let m = self.num_constraints();
        if self.constraints.shape() != (m, n) {
            return Err(Error::MalformedLp(format!(
                "constraint matrix is {:?}, expected ({m}, {n})",
                self.constraints.shape()
            )));
        }
        if self.senses.len() != m {
            return Err(Error::MalformedLp(format!("{} senses for {m} rows", self.senses.len())));
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::MalformedLp("bound vectors do not match variable count".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<Rational>,
    /// One multiplier per constraint. Signs: `≥` rows have `y >= 0`, `≤`
    /// rows `y <= 0` (minimization).
    pub dual: Vec<Rational>,
    /// `c - Aᵀ y`.
    pub reduced_costs: Vec<Rational>,
    pub objective_value: Option<Rational>,
    pub pivots: usize,
}

impl LpSolution {
    fn without_solution(status: LpStatus, pivots: usize) -> Self {
        Self {
            status,
            primal: Vec::new(),
            dual: Vec::new(),
            reduced_costs: Vec::new(),
            objective_value: None,
            pivots,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn value(&self) -> Option<&Rational> {
        self.objective_value.as_ref()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    #[default]
    Bland,
    Dantzig,
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    solve_with(lp, PivotRule::Bland)
}

pub fn solve_with(lp: &LinearProgram, rule: PivotRule) -> Result<LpSolution> {
    lp.check_shape()?;
    for j in 0..lp.num_vars() {
        if let (Some(l), Some(u)) = (&lp.lower[j], &lp.upper[j]) {
            if l > u {
                return Ok(LpSolution::without_solution(LpStatus::Infeasible, 0));
            }
        }
    }
    let std = StandardForm::build(lp);
    let mut tab = Tableau::new(&std);
    let mut pivots = 0;

    // phase 1
    tab.run(rule, &mut pivots);
    if tab.objective_value().is_positive() {
        return Ok(LpSolution::without_solution(LpStatus::Infeasible, pivots));
    }
    tab.drive_out_artificials(&mut pivots);

    // phase 2
    tab.set_cost(&std.cost);
    if tab.run(rule, &mut pivots) == Outcome::Unbounded {
        return Ok(LpSolution::without_solution(LpStatus::Unbounded, pivots));
    }

    let xs = tab.basic_solution();
    let ys = tab.row_duals();
    let primal = std.recover_primal(&xs);
    let dual: Vec<Rational> = (0..lp.num_constraints())
        .map(|i| &ys[i] * &std.row_sign[i])
        .collect();
    let reduced_costs = reduced_costs(lp, &dual);
    let objective_value = rational::dot(&lp.objective, &primal);
    let sol = LpSolution {
        status: LpStatus::Optimal,
        primal,
        dual,
        reduced_costs,
        objective_value: Some(objective_value),
        pivots,
    };
    verify_optimal(lp, &sol)?;
    Ok(sol)
}

fn reduced_costs(lp: &LinearProgram, y: &[Rational]) -> Vec<Rational> {
    let aty = lp.constraints.vec_mul(y);
    lp.objective.iter().zip(aty).map(|(c, a)| c - a).collect()
}

/// Dual objective `bᵀy + Σ_j r_j · (bound picked by the sign of r_j)`, or
/// `None` when a reduced cost points at an infinite bound.
pub fn dual_objective(lp: &LinearProgram, y: &[Rational]) -> Option<Rational> {
    let mut total = rational::dot(&lp.rhs, y);
    for (j, r) in reduced_costs(lp, y).iter().enumerate() {
        if r.is_positive() {
            total += r * lp.lower[j].as_ref()?;
        } else if r.is_negative() {
            total += r * lp.upper[j].as_ref()?;
        }
    }
    Some(total)
}

/// Exact check of both certificates and of strong duality.
pub fn verify_optimal(lp: &LinearProgram, sol: &LpSolution) -> Result<()> {
    let fail = |m: String| Err(Error::Certificate(m));
    let x = &sol.primal;
    let ax = lp.constraints.mul_vec(x);
    for (i, (lhs, b)) in ax.iter().zip(&lp.rhs).enumerate() {
        let ok = match lp.senses[i] {
            Sense::Eq => lhs == b,
            Sense::Le => lhs <= b,
            Sense::Ge => lhs >= b,
        };
        if !ok {
            return fail(format!("row {i} violated: {lhs} vs {b}"));
        }
    }
    for j in 0..lp.num_vars() {
        if lp.lower[j].as_ref().is_some_and(|l| &x[j] < l) || lp.upper[j].as_ref().is_some_and(|u| &x[j] > u) {
            return fail(format!("variable {j} out of bounds"));
        }
    }
    for (i, y) in sol.dual.iter().enumerate() {
        let ok = match lp.senses[i] {
            Sense::Eq => true,
            Sense::Le => !y.is_positive(),
            Sense::Ge => !y.is_negative(),
        };
        if !ok {
            return fail(format!("dual multiplier {i} has the wrong sign: {y}"));
        }
    }
    let Some(dual_value) = dual_objective(lp, &sol.dual) else {
        return fail("reduced cost points at an infinite bound".into());
    };
    let primal_value = rational::dot(&lp.objective, x);
    if dual_value != primal_value {
        return fail(format!("duality gap: primal {primal_value}, dual {dual_value}"));
    }
    Ok(())
}

/// `x_j = offset_j + Σ coef · s_k` over standard-form variables `s >= 0`.
struct VarMap {
    offset: Rational,
    terms: Vec<(usize, Rational)>,
}

struct StandardForm {
    a: Matrix,
    b: Vec<Rational>,
    cost: Vec<Rational>,
    row_sign: Vec<Rational>,
    vars: Vec<VarMap>,
}

impl StandardForm {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.num_constraints();
        let mut vars = Vec::with_capacity(n);
        let mut next = 0usize;
        let mut ub_rows: Vec<(usize, Rational)> = Vec::new();
        for j in 0..n {
            let vm = match (&lp.lower[j], &lp.upper[j]) {
                (Some(l), u) => {
                    if let Some(u) = u {
                        ub_rows.push((next, u - l));
                    }
                    next += 1;
                    VarMap { offset: l.clone(), terms: vec![(next - 1, Rational::one())] }
                }
                (None, Some(u)) => {
                    next += 1;
                    VarMap { offset: u.clone(), terms: vec![(next - 1, -Rational::one())] }
                }
                (None, None) => {
                    next += 2;
                    VarMap {
                        offset: Rational::zero(),
                        terms: vec![(next - 2, Rational::one()), (next - 1, -Rational::one())],
                    }
                }
            };
            vars.push(vm);
        }
        let structural = next;
        let slack_rows: Vec<usize> = (0..m).filter(|&i| lp.senses[i] != Sense::Eq).collect();
        let total_rows = m + ub_rows.len();
        let total_cols = structural + slack_rows.len() + ub_rows.len();
        let mut a = Matrix::zeros(total_rows, total_cols);
        let mut b = vec![Rational::zero(); total_rows];
        for i in 0..m {
            let mut rhs = lp.rhs[i].clone();
            for (j, vm) in vars.iter().enumerate() {
                let aij = lp.constraints.get(i, j);
                if aij.is_zero() {
                    continue;
                }
                rhs -= aij * &vm.offset;
                for (k, coef) in &vm.terms {
                    a.add_at(i, *k, &(aij * coef));
                }
            }
            b[i] = rhs;
        }
        for (s, &i) in slack_rows.iter().enumerate() {
            let v = if lp.senses[i] == Sense::Le { 1 } else { -1 };
            a.set(i, structural + s, rational::int(v));
        }
        for (r, (k, bound)) in ub_rows.iter().enumerate() {
            let row = m + r;
            a.set(row, *k, Rational::one());
            a.set(row, structural + slack_rows.len() + r, Rational::one());
            b[row] = bound.clone();
        }
        let mut row_sign = vec![Rational::one(); total_rows];
        for i in 0..total_rows {
            if b[i].is_negative() {
                row_sign[i] = -Rational::one();
                b[i] = -b[i].clone();
                for j in 0..total_cols {
                    let v = a.get(i, j);
                    if !v.is_zero() {
                        let nv = -v;
                        a.set(i, j, nv);
                    }
                }
            }
        }
        let mut cost = vec![Rational::zero(); total_cols];
        for (j, vm) in vars.iter().enumerate() {
            for (k, coef) in &vm.terms {
                cost[*k] += &lp.objective[j] * coef;
            }
        }
        StandardForm { a, b, cost, row_sign, vars }
    }

    fn recover_primal(&self, xs: &[Rational]) -> Vec<Rational> {
        self.vars
            .iter()
            .map(|vm| {
                let mut v = vm.offset.clone();
                for (k, coef) in &vm.terms {
                    v += &xs[*k] * coef;
                }
                v
            })
            .collect()
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Outcome {
    Optimal,
    Unbounded,
}

/// Rows `0..m` hold `B⁻¹[A | I | b]`; `obj` holds the reduced costs of every
/// column and `-z` in the last slot.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    n_struct: usize,
    /// Columns allowed to enter the basis.
    enterable: usize,
}

impl Tableau {
    fn new(std: &StandardForm) -> Self {
        let m = std.b.len();
        let n = std.a.cols();
        let width = n + m + 1;
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let mut r = vec![Rational::zero(); width];
            r[..n].clone_from_slice(std.a.row(i));
            r[n + i] = Rational::one();
            r[width - 1] = std.b[i].clone();
            rows.push(r);
        }
        let mut t = Tableau {
            rows,
            obj: vec![Rational::zero(); width],
            basis: (n..n + m).collect(),
            n_struct: n,
            enterable: n,
        };
        let mut phase1 = vec![Rational::zero(); n + m];
        for c in phase1.iter_mut().skip(n) {
            *c = Rational::one();
        }
        t.set_cost(&phase1);
        t
    }

    fn width(&self) -> usize {
        self.obj.len()
    }

    fn set_cost(&mut self, cost: &[Rational]) {
        let w = self.width();
        let mut obj = vec![Rational::zero(); w];
        for (j, c) in cost.iter().enumerate() {
            obj[j] = c.clone();
        }
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = cost.get(bv).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    obj[j] -= &cb * v;
                }
            }
        }
        self.obj = obj;
    }

    fn objective_value(&self) -> Rational {
        -self.obj[self.width() - 1].clone()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let prow = self.rows[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &j in &nz {
                self.obj[j] -= &f * &prow[j];
            }
        }
        self.basis[r] = c;
    }

    fn entering(&self, rule: PivotRule) -> Option<usize> {
        let candidates = (0..self.enterable).filter(|&j| self.obj[j].is_negative());
        match rule {
            PivotRule::Bland => candidates.min(),
            // most negative reduced cost, smallest index on ties
            PivotRule::Dantzig => candidates.fold(None, |best: Option<usize>, j| match best {
                Some(b) if self.obj[b] <= self.obj[j] => Some(b),
                _ => Some(j),
            }),
        }
    }

    fn leaving(&self, c: usize) -> Option<usize> {
        let last = self.width() - 1;
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[c].is_positive() {
                continue;
            }
            let ratio = &row[last] / &row[c];
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    fn run(&mut self, rule: PivotRule, pivots: &mut usize) -> Outcome {
        let mut degenerate_run = 0usize;
        let last = self.width() - 1;
        loop {
            let effective = if degenerate_run > 50 { PivotRule::Bland } else { rule };
            let Some(c) = self.entering(effective) else {
                return Outcome::Optimal;
            };
            let Some(r) = self.leaving(c) else {
                return Outcome::Unbounded;
            };
            if self.rows[r][last].is_zero() {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, c);
            *pivots += 1;
        }
    }

    /// After phase 1, replace artificial basics (all at value 0) by
    /// structural columns where possible; rows where that is impossible are
    /// redundant and keep their artificial, which never re-enters.
    fn drive_out_artificials(&mut self, pivots: &mut usize) {
        for r in 0..self.rows.len() {
            if self.basis[r] < self.n_struct {
                continue;
            }
            if let Some(c) = (0..self.n_struct).find(|&j| !self.rows[r][j].is_zero()) {
                self.pivot(r, c);
                *pivots += 1;
            }
        }
    }

    fn basic_solution(&self) -> Vec<Rational> {
        let last = self.width() - 1;
        let mut x = vec![Rational::zero(); self.n_struct];
        for (i, &bv) in self.basis.iter().enumerate() {
            if bv < self.n_struct {
                x[bv] = self.rows[i][last].clone();
            }
        }
        x
    }

    /// `y = c_Bᵀ B⁻¹`, read off the reduced costs of the artificial columns
    /// (whose cost is zero in phase 2 and whose initial columns are `I`).
    fn row_duals(&self) -> Vec<Rational> {
        (0..self.rows.len())
            .map(|i| -self.obj[self.n_struct + i].clone())
            .collect()
    }
}

/// Result of `min_x Σ w_i |(target + span·x)_i|` (or the ℓ∞ analogue).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormFit {
    pub value: Rational,
    pub coefficients: Vec<Rational>,
    /// `target + span · coefficients`.
    pub residual: Vec<Rational>,
    /// Dual certificate `y` with `spanᵀ y = 0`, `targetᵀ y = value` and
    /// dual-norm of `y` at most 1.
    pub certificate: Vec<Rational>,
}

/// Minimum weighted ℓ¹ norm over the affine space `target + span(span)`.
///
/// Split variables: `c⁺ − c⁻ − span·x = target`, `c± >= 0`, minimize
/// `Σ w (c⁺ + c⁻)`.
pub fn min_weighted_l1(target: &[Rational], span: &Matrix, weights: &[Rational]) -> Result<NormFit> {
    let d = target.len();
    let k = span.cols();
    check_fit_shapes(d, span, weights)?;
    let nv = k + 2 * d;
    let mut a = Matrix::zeros(d, nv);
    for i in 0..d {
        for j in 0..k {
            let v = span.get(i, j);
            if !v.is_zero() {
                a.set(i, j, -v);
            }
        }
        a.set(i, k + i, Rational::one());
        a.set(i, k + d + i, -Rational::one());
    }
    let mut c = vec![Rational::zero(); nv];
    for i in 0..d {
        c[k + i] = weights[i].clone();
        c[k + d + i] = weights[i].clone();
    }
    let mut lower = vec![None; nv];
    for l in lower.iter_mut().skip(k) {
        *l = Some(Rational::zero());
    }
    let lp = LinearProgram::new(c, a, target.to_vec(), vec![Sense::Eq; d]).with_bounds(lower, vec![None; nv]);
    let sol = solve(&lp)?;
    if !sol.is_optimal() {
        return Err(Error::Certificate(format!("ℓ¹ fit reported {:?}", sol.status)));
    }
    let coefficients = sol.primal[..k].to_vec();
    let residual = affine(target, span, &coefficients);
    let value = rational::weighted_l1(&residual, weights);
    debug_assert_eq!(Some(&value), sol.value());
    Ok(NormFit {
        value,
        coefficients,
        residual,
        certificate: sol.dual,
    })
}

/// Minimum of `max_i u_i |(target + span·x)_i|` via one bound variable `t`:
/// `-t/u_i <= (target + span x)_i <= t/u_i`.
pub fn min_weighted_linf(target: &[Rational], span: &Matrix, weights: &[Rational]) -> Result<NormFit> {
    let d = target.len();
    let k = span.cols();
    check_fit_shapes(d, span, weights)?;
    let nv = k + 1;
    let t = k;
    let mut a = Matrix::zeros(2 * d, nv);
    let mut b = vec![Rational::zero(); 2 * d];
    for i in 0..d {
        // u_i (span x)_i - t <= -u_i target_i ; -u_i (span x)_i - t <= u_i target_i
        for j in 0..k {
            let v = span.get(i, j);
            if !v.is_zero() {
                a.set(i, j, v * &weights[i]);
                a.set(d + i, j, -(v * &weights[i]));
            }
        }
        a.set(i, t, -Rational::one());
        a.set(d + i, t, -Rational::one());
        b[i] = -(&target[i] * &weights[i]);
        b[d + i] = &target[i] * &weights[i];
    }
    let mut c = vec![Rational::zero(); nv];
    c[t] = Rational::one();
    let mut lower = vec![None; nv];
    lower[t] = Some(Rational::zero());
    let lp = LinearProgram::new(c, a, b, vec![Sense::Le; 2 * d]).with_bounds(lower, vec![None; nv]);
    let sol = solve(&lp)?;
    if !sol.is_optimal() {
        return Err(Error::Certificate(format!("ℓ∞ fit reported {:?}", sol.status)));
    }
    let coefficients = sol.primal[..k].to_vec();
    let residual = affine(target, span, &coefficients);
    let value = rational::weighted_linf(&residual, weights);
    debug_assert_eq!(Some(&value), sol.value());
    // fold the two one-sided multipliers into one signed vector on the
    // original coordinates
    let certificate = (0..d)
        .map(|i| (&sol.dual[d + i] - &sol.dual[i]) * &weights[i])
        .collect();
    Ok(NormFit {
        value,
        coefficients,
        residual,
        certificate,
    })
}

fn check_fit_shapes(d: usize, span: &Matrix, weights: &[Rational]) -> Result<()> {
    if span.rows() != d || weights.len() != d {
        return Err(Error::Shape(format!(
            "target length {d}, span {:?}, {} weights",
            span.shape(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::Shape("weights must be positive".into()));
    }
    Ok(())
}

fn affine(target: &[Rational], span: &Matrix, x: &[Rational]) -> Vec<Rational> {
    let sx = span.mul_vec(x);
    target.iter().zip(sx).map(|(a, b)| a + b).collect()
}
