//! Dense two-phase simplex with Bland's anti-cycling rule.
//!
//! Problems here are tiny (tens of variables, a few hundred rows), so a dense
//! tableau is the simplest deterministic choice. Variables are nonnegative
//! unless marked free; free variables are split into a difference of two
//! nonnegative columns internally.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-9;
/// Reduced cost below which a column without positive entries proves
/// unboundedness.
const UNBOUNDED_EPS: f64 = 1e-7;
/// Relative residual above which a returned vertex is rejected.
const RESIDUAL_TOL: f64 = 1e-7;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<f64>,
    rel: Relation,
    rhs: f64,
}

/// A linear program `opt c^T x  s.t.  A x {<=,>=,=} b`, `x_j >= 0` unless free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    n_vars: usize,
    free: Vec<bool>,
    sense: Sense,
    objective: Vec<f64>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: Vec<f64>,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(Solution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<Solution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram {
            n_vars,
            free: vec![false; n_vars],
            sense: Sense::Minimize,
            objective: vec![0.0; n_vars],
            rows: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn minimize(&mut self, c: &[f64]) -> &mut Self {
        assert_eq!(c.len(), self.n_vars);
        self.sense = Sense::Minimize;
        self.objective = c.to_vec();
        self
    }

    pub fn maximize(&mut self, c: &[f64]) -> &mut Self {
        assert_eq!(c.len(), self.n_vars);
        self.sense = Sense::Maximize;
        self.objective = c.to_vec();
        self
    }

    pub fn add(&mut self, coeffs: &[f64], rel: Relation, rhs: f64) -> &mut Self {
        assert_eq!(coeffs.len(), self.n_vars, "constraint width");
        self.rows.push(Row {
            coeffs: coeffs.to_vec(),
            rel,
            rhs,
        });
        self
    }

    /// Adds a constraint given as sparse `(var, coeff)` pairs.
    pub fn add_sparse(&mut self, terms: &[(usize, f64)], rel: Relation, rhs: f64) -> &mut Self {
        let mut coeffs = vec![0.0; self.n_vars];
        for &(j, c) in terms {
            coeffs[j] += c;
        }
        self.rows.push(Row { coeffs, rel, rhs });
        self
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        Tableau::build(self).run(self)
    }

    /// Rejects a vertex that violates the original rows, which can only
    /// happen through accumulated round-off in the tableau.
    fn check_residual(&self, x: &[f64]) -> Result<()> {
        let xs = x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (j, &v) in x.iter().enumerate() {
            if !self.free[j] && v < -RESIDUAL_TOL * xs {
                return Err(Error::Lp(format!("numerical failure: x[{j}] = {v:e} < 0")));
            }
        }
        for (i, r) in self.rows.iter().enumerate() {
            let lhs: f64 = r.coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
            let scale = r.coeffs.iter().fold(r.rhs.abs(), |m, c| m.max(c.abs())).max(1.0) * xs;
            let gap = match r.rel {
                Relation::Le => lhs - r.rhs,
                Relation::Ge => r.rhs - lhs,
                Relation::Eq => (lhs - r.rhs).abs(),
            };
            if gap > RESIDUAL_TOL * scale {
                return Err(Error::Lp(format!("numerical failure: row {i} violated by {gap:e}")));
            }
        }
        Ok(())
    }
}

struct Tableau {
    /// m rows of width `ncols + 1`; the last entry is the right-hand side.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    ncols: usize,
    /// Maps original variable to (positive column, optional negative column).
    var_cols: Vec<(usize, Option<usize>)>,
    artificial_start: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let mut var_cols = Vec::with_capacity(lp.n_vars);
        let mut ncols = 0;
        for j in 0..lp.n_vars {
            if lp.free[j] {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                var_cols.push((ncols, None));
                ncols += 1;
            }
        }
        let structural = ncols;

        // Normalise to nonnegative right-hand sides.
        let rows: Vec<(Vec<f64>, Relation, f64)> = lp
            .rows
            .iter()
            .map(|r| {
                if r.rhs < 0.0 {
                    let rel = match r.rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (r.coeffs.iter().map(|c| -c).collect(), rel, -r.rhs)
                } else {
                    (r.coeffs.clone(), r.rel, r.rhs)
                }
            })
            .collect();

        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let artificial_start = structural + n_slack;
        let total = artificial_start + n_art;

        let mut t_rows = Vec::with_capacity(rows.len());
        let mut basis = Vec::with_capacity(rows.len());
        let mut slack = structural;
        let mut art = artificial_start;
        for (coeffs, rel, rhs) in rows {
            let mut row = vec![0.0; total + 1];
            for (j, &c) in coeffs.iter().enumerate() {
                let (p, n) = var_cols[j];
                row[p] = c;
                if let Some(n) = n {
                    row[n] = -c;
                }
            }
            match rel {
                Relation::Le => {
                    row[slack] = 1.0;
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -1.0;
                    slack += 1;
                    row[art] = 1.0;
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = 1.0;
                    basis.push(art);
                    art += 1;
                }
            }
            row[total] = rhs;
            t_rows.push(row);
        }

        Tableau {
            rows: t_rows,
            basis,
            ncols: total,
            var_cols,
            artificial_start,
        }
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [f64]) {
        let width = self.ncols + 1;
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for k in 0..width {
                    row[k] -= f * pivot_row[k];
                }
                row[c] = 0.0;
            }
        }
        let f = obj[c];
        if f != 0.0 {
            for k in 0..width {
                obj[k] -= f * pivot_row[k];
            }
            obj[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row for minimising `cost` over the current basis.
    fn objective_row(&self, cost: &[f64]) -> Vec<f64> {
        let mut obj = cost.to_vec();
        obj.push(0.0);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (k, v) in obj.iter_mut().enumerate() {
                    *v -= cb * self.rows[i][k];
                }
            }
        }
        obj
    }

    /// Runs Bland's-rule simplex iterations; `allowed` limits entering columns.
    /// Returns `false` when unbounded.
    ///
    /// A column whose reduced cost is negative but which has no admissible
    /// pivot row is skipped: in a degenerate tableau such reduced costs are
    /// usually round-off. It only signals unboundedness when the reduced cost
    /// is clearly negative and the column has no positive entry at all.
    fn iterate(&mut self, obj: &mut [f64], allowed: usize) -> Result<bool> {
        'pivots: for _ in 0..MAX_PIVOTS {
            let mut unbounded = false;
            for c in (0..allowed).filter(|&j| obj[j] < -PIVOT_EPS) {
                match self.ratio_test(c) {
                    Some(r) => {
                        self.pivot(r, c, obj);
                        continue 'pivots;
                    }
                    None => {
                        unbounded |= obj[c] < -UNBOUNDED_EPS && self.rows.iter().all(|row| row[c] <= 0.0);
                    }
                }
            }
            return Ok(!unbounded);
        }
        Err(Error::Lp("pivot limit exceeded".into()))
    }

    /// Leaving row for entering column `c` (minimum ratio, ties by lowest
    /// basic index). Entries below a column-relative threshold are treated as
    /// zero; pivoting on them destroys the tableau.
    fn ratio_test(&self, c: usize) -> Option<usize> {
        let col_scale = self.rows.iter().map(|row| row[c].abs()).fold(1.0, f64::max);
        let mut best: Option<(f64, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let a = row[c];
            if a > PIVOT_EPS * col_scale {
                let ratio = row[self.ncols] / a;
                let better = match best {
                    None => true,
                    Some((br, _, bb)) => ratio < br - 1e-13 || (ratio <= br + 1e-13 && self.basis[i] < bb),
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
        }
        best.map(|(_, r, _)| r)
    }

    fn run(mut self, lp: &LinearProgram) -> Result<LpOutcome> {
        let rhs_scale = 1.0 + self.rows.iter().map(|r| r[self.ncols].abs()).fold(0.0, f64::max);

        // Phase 1.
        if self.artificial_start < self.ncols {
            let mut cost = vec![0.0; self.ncols];
            for c in cost.iter_mut().skip(self.artificial_start) {
                *c = 1.0;
            }
            let mut obj = self.objective_row(&cost);
            // The phase-1 objective is bounded below by zero.
            self.iterate(&mut obj, self.ncols)?;
            let infeasibility = -obj[self.ncols];
            if infeasibility > 1e-9 * rhs_scale {
                return Ok(LpOutcome::Infeasible);
            }
            // Drive remaining artificials out of the basis or drop redundant rows.
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.artificial_start {
                    let col = (0..self.artificial_start).find(|&j| self.rows[i][j].abs() > 1e-9);
                    match col {
                        Some(j) => {
                            let mut dummy = vec![0.0; self.ncols + 1];
                            self.pivot(i, j, &mut dummy);
                            i += 1;
                        }
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
            for row in self.rows.iter_mut() {
                for v in row.iter_mut().take(self.ncols).skip(self.artificial_start) {
                    *v = 0.0;
                }
            }
        }

        // Phase 2.
        let sign = match lp.sense {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        };
        let mut cost = vec![0.0; self.ncols];
        for (j, &(p, n)) in self.var_cols.iter().enumerate() {
            cost[p] = sign * lp.objective[j];
            if let Some(n) = n {
                cost[n] = -sign * lp.objective[j];
            }
        }
        let mut obj = self.objective_row(&cost);
        if !self.iterate(&mut obj, self.artificial_start)? {
            return Ok(LpOutcome::Unbounded);
        }

        let mut col_values = vec![0.0; self.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            col_values[b] = self.rows[i][self.ncols];
        }
        let x: Vec<f64> = self
            .var_cols
            .iter()
            .map(|&(p, n)| col_values[p] - n.map_or(0.0, |n| col_values[n]))
            .collect();
        lp.check_residual(&x)?;
        let objective = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
        Ok(LpOutcome::Optimal(Solution { x, objective }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn textbook_maximisation() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  => (2, 6), 36
        let mut lp = LinearProgram::new(2);
        lp.maximize(&[3.0, 5.0])
            .add(&[1.0, 0.0], Relation::Le, 4.0)
            .add(&[0.0, 2.0], Relation::Le, 12.0)
            .add(&[3.0, 2.0], Relation::Le, 18.0);
        let s = lp.solve().unwrap().optimal().unwrap();
        assert_abs_diff_eq!(s.objective, 36.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.x[0], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.x[1], 6.0, epsilon = 1e-9);
    }

    #[test]
    fn equality_and_ge_rows() {
        // min x + y s.t. x + y >= 2, x - y = 1 => x = 1.5, y = 0.5
        let mut lp = LinearProgram::new(2);
        lp.minimize(&[1.0, 1.0])
            .add(&[1.0, 1.0], Relation::Ge, 2.0)
            .add(&[1.0, -1.0], Relation::Eq, 1.0);
        let s = lp.solve().unwrap().optimal().unwrap();
        assert_abs_diff_eq!(s.objective, 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.x[0] - s.x[1], 1.0, epsilon = 1e-9);
    }

    #[test]
    fn free_variables() {
        // min x s.t. x >= -3, x free
        let mut lp = LinearProgram::new(1);
        lp.set_free(0).minimize(&[1.0]).add(&[1.0], Relation::Ge, -3.0);
        let s = lp.solve().unwrap().optimal().unwrap();
        assert_abs_diff_eq!(s.x[0], -3.0, epsilon = 1e-9);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(&[1.0], Relation::Ge, 2.0).add(&[1.0], Relation::Le, 1.0);
        assert_eq!(lp.solve().unwrap(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.maximize(&[1.0]).add(&[1.0], Relation::Ge, 0.0);
        assert_eq!(lp.solve().unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.minimize(&[1.0, 2.0])
            .add(&[1.0, 1.0], Relation::Eq, 1.0)
            .add(&[2.0, 2.0], Relation::Eq, 2.0);
        let s = lp.solve().unwrap().optimal().unwrap();
        assert_abs_diff_eq!(s.objective, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic cycling example (Beale) under Dantzig's rule.
        let mut lp = LinearProgram::new(4);
        lp.minimize(&[-0.75, 150.0, -0.02, 6.0])
            .add(&[0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0)
            .add(&[0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0)
            .add(&[0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0);
        let s = lp.solve().unwrap().optimal().unwrap();
        assert_abs_diff_eq!(s.objective, -0.05, epsilon = 1e-9);
    }

    #[test]
    fn degenerate_pair_program_stays_feasible() {
        // Eight nearly parallel rows; tiny pivot entries used to corrupt the
        // tableau and report an infeasible "optimum" of 0.2364.
        let a = [
            [-0.9949361530051241, 0.10050896200520804],
            [0.10050896200547825, -0.9949361530050967],
            [0.11022220729388293, -0.9939069700023561],
            [-0.9939069700023561, 0.11022220729388324],
            [0.1224106751992156, -0.9924795345987101],
            [-0.99247953459871, 0.12241067519921635],
            [0.134580708507126, -0.9909026354277802],
            [-0.99090263542778, 0.13458070850712628],
        ];
        let k = [
            [0.8944271909999159, 0.4472135954999579],
            [0.4472135954999579, 0.8944271909999159],
        ];
        let nrm = |v: &[f64; 2]| v[0].hypot(v[1]);
        let mut lp = LinearProgram::new(5);
        lp.set_free(0).set_free(1).set_free(4);
        lp.maximize(&[0.0, 0.0, 0.0, 0.0, 1.0]);
        for b in &k {
            lp.add(&[b[0], b[1], -nrm(b), 0.0, -1.0], Relation::Ge, 0.0);
        }
        for y in &a {
            lp.add(&[y[0], y[1], nrm(y), 0.0, 0.0], Relation::Ge, 0.0);
        }
        lp.add_sparse(&[(2, 1.0)], Relation::Ge, 0.05);
        for j in 0..2 {
            lp.add_sparse(&[(j, 1.0), (3, -1.0)], Relation::Le, 0.0);
            lp.add_sparse(&[(j, 1.0), (3, 1.0)], Relation::Ge, 0.0);
        }
        lp.add_sparse(&[(3, 1.0), (2, 1.0)], Relation::Le, 1.0);
        lp.add_sparse(&[(4, 1.0)], Relation::Le, 1.0);
        let s = lp.solve().unwrap().optimal().unwrap();
        // Reference optimum from an independent solver (HiGHS via scipy).
        assert_abs_diff_eq!(s.objective, 0.23606797749990188, epsilon = 1e-8);
    }
    #[test]
    fn round_off_reduced_cost_does_not_end_phase_one() {
        // Phase 1 used to stop at a column with reduced cost −1.3e-9 and
        // entries of order 1e-10, and report this feasible program infeasible.
        let rows = [
            [-0.9525165281980272, 0.304486885611806, 1.0],
            [0.1017271882647674, -0.9948123336427552, 1.0],
            [0.11022220729388293, -0.9939069700023561, 1.0],
            [-0.9495281805930369, 0.31368174039889146, 1.0000000000000002],
            [0.1224106751992156, -0.9924795345987101, 1.0],
            [-0.9456073253805214, 0.3253102921622633, 1.0000000000000002],
            [0.134580708507126, -0.9909026354277802, 1.0],
            [-0.9415440651830207, 0.33688985339222033, 1.0],
        ];
        let mut lp = LinearProgram::new(5);
        lp.set_free(0).set_free(1).set_free(4);
        lp.maximize(&[0.0, 0.0, 0.0, 0.0, 1.0]);
        lp.add(&[1.0, 0.0, -1.0, 0.0, -1.0], Relation::Ge, 0.0);
        lp.add(&[0.0, 1.0, -1.0, 0.0, -1.0], Relation::Ge, 0.0);
        for r in &rows {
            lp.add(&[r[0], r[1], r[2], 0.0, 0.0], Relation::Ge, 0.0);
        }
        lp.add_sparse(&[(2, 1.0)], Relation::Ge, 0.05);
        for j in 0..2 {
            lp.add_sparse(&[(j, 1.0), (3, -1.0)], Relation::Le, 0.0);
            lp.add_sparse(&[(j, 1.0), (3, 1.0)], Relation::Ge, 0.0);
        }
        lp.add_sparse(&[(3, 1.0), (2, 1.0)], Relation::Le, 1.0);
        lp.add_sparse(&[(4, 1.0)], Relation::Le, 1.0);
        let s = lp.solve().unwrap().optimal().unwrap();
        // HiGHS via scipy.
        assert_abs_diff_eq!(s.objective, 0.06211612999481736, epsilon = 1e-8);
    }
}
