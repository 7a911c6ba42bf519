//! Exact rational linear programming: two-phase primal simplex with Bland's
//! rule. All variables are non-negative.

use num_traits::{Signed, Zero};

use crate::linalg::{QMatrix, QVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
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
}

/// `min c.x` subject to `A x = b`, `x >= 0`, with `b >= 0`.
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub a: QMatrix,
    pub b: QVector,
    pub c: QVector,
}

/// A minimization problem over non-negative variables.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<(Vec<Rational>, Relation, Rational)>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { num_vars, objective: vec![Rational::zero(); num_vars], constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn set_objective(&mut self, coeffs: Vec<Rational>) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.objective = coeffs;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push((coeffs, rel, rhs));
    }

    /// Adds one slack column per inequality and flips rows so `b >= 0`.
    /// The first `num_vars` columns are the original variables.
    pub fn to_standard_form(&self) -> StandardForm {
        let n_slack = self.constraints.iter().filter(|(_, r, _)| *r != Relation::Eq).count();
        let width = self.num_vars + n_slack;
        let mut rows = Vec::with_capacity(self.constraints.len());
        let mut rhs = Vec::with_capacity(self.constraints.len());
        let mut slack = self.num_vars;
        for (coeffs, rel, b) in &self.constraints {
            let mut row = coeffs.clone();
            row.resize(width, Rational::zero());
            match rel {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut b = b.clone();
            if b.is_negative() {
                row.iter_mut().for_each(|v| *v = -&*v);
                b = -b;
            }
            rows.push(QVector::new(row));
            rhs.push(b);
        }
        let mut c = self.objective.clone();
        c.resize(width, Rational::zero());
        StandardForm {
            a: QMatrix::from_rows(width, rows).expect("rows built to width"),
            b: QVector::new(rhs),
            c: QVector::new(c),
        }
    }

    pub fn solve(&self) -> LpOutcome {
        match self.to_standard_form().solve() {
            LpOutcome::Optimal { value, mut x } => {
                x.truncate(self.num_vars);
                LpOutcome::Optimal { value, x }
            }
            other => other,
        }
    }
}

impl StandardForm {
    pub fn solve(&self) -> LpOutcome {
        let mut tab = LpTableau::phase_one(self);
        let n = self.a.ncols();
        let phase_one_cost: Vec<Rational> = (0..tab.width())
            .map(|j| if j >= n { Rational::from_integer(1.into()) } else { Rational::zero() })
            .collect();
        tab.run(&phase_one_cost, tab.width()).expect("phase one is bounded below by zero");
        if !tab.objective(&phase_one_cost).is_zero() {
            return LpOutcome::Infeasible;
        }
        tab.drive_out_artificials(n);
        tab.drop_columns_from(n);
        let cost = self.c.entries().to_vec();
        if tab.run(&cost, n).is_err() {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); n];
        for (i, &bcol) in tab.basis.iter().enumerate() {
            if bcol < n {
                x[bcol] = tab.rhs(i).clone();
            }
        }
        LpOutcome::Optimal { value: tab.objective(&cost), x }
    }
}

/// `v -= f * p` with a single normalization.
fn sub_mul(v: &mut Rational, f: &Rational, p: &Rational) {
    if v.is_zero() {
        *v = -(f * p);
        return;
    }
    let fp_den = f.denom() * p.denom();
    let numer = v.numer() * &fp_den - f.numer() * p.numer() * v.denom();
    *v = Rational::new(numer, v.denom() * fp_den);
}

/// Dense simplex tableau. Row `i` holds the current `B^-1 A` row with the
/// right-hand side in the last column; `basis[i]` is its basic column.
#[derive(Clone, Debug)]
pub struct LpTableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

#[derive(Debug)]
struct Unbounded;

impl LpTableau {
    /// Tableau with one artificial column per row, all artificials basic.
    fn phase_one(sf: &StandardForm) -> Self {
        let m = sf.a.nrows();
        let n = sf.a.ncols();
        let rows = (0..m)
            .map(|i| {
                let mut row = sf.a.row(i).entries().to_vec();
                row.extend((0..m).map(|k| if k == i { Rational::from_integer(1.into()) } else { Rational::zero() }));
                row.push(sf.b[i].clone());
                row
            })
            .collect();
        LpTableau { rows, basis: (n..n + m).collect(), width: n + m }
    }

    fn width(&self) -> usize {
        self.width
    }

    fn rhs(&self, i: usize) -> &Rational {
        self.rows[i].last().expect("nonempty row")
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .filter(|&(_, &b)| !cost[b].is_zero())
            .fold(Rational::zero(), |acc, (i, &b)| acc + &cost[b] * self.rhs(i))
    }

    /// Removes the columns `n..width`, which no longer matter once every
    /// basic column is below `n`.
    fn drop_columns_from(&mut self, n: usize) {
        debug_assert!(self.basis.iter().all(|&b| b < n));
        let width = self.width;
        for row in &mut self.rows {
            row.drain(n..width);
        }
        self.width = n;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        self.rows[r].iter_mut().for_each(|v| *v *= &inv);
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    sub_mul(v, &f, p);
                }
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule: lowest-index entering column with negative reduced
    /// cost, ratio-test ties broken by lowest basic index. Only columns
    /// `< allowed` may enter.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Result<(), Unbounded> {
        let mut reduced: Vec<Rational> = cost[..self.width].to_vec();
        reduced.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (z, a) in reduced.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *z -= &cost[b] * a;
                }
            }
        }
        loop {
            // basic columns have zero reduced cost
            let Some(j) = (0..allowed).find(|&j| reduced[j].is_negative()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(Unbounded);
            };
            self.pivot(r, j);
            let f = reduced[j].clone();
            for (z, p) in reduced.iter_mut().zip(&self.rows[r]) {
                if !p.is_zero() {
                    sub_mul(z, &f, p);
                }
            }
        }
    }

    /// After a feasible phase one, pivots zero-level artificials out of the
    /// basis, dropping rows that turn out to be redundant.
    fn drive_out_artificials(&mut self, n: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < n {
                i += 1;
                continue;
            }
            match (0..n).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
