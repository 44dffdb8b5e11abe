//! Exact rational linear programming.
//!
//! Problems have the form: maximize `c . x` subject to `A x <= b`, `x >= 0`.
//! A dense two-phase simplex with Bland's rule does every pivot in exact
//! arithmetic, so results are vertices and values are exact.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    matrix: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(
        objective: Vec<Rational>,
        matrix: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
    ) -> Result<Self> {
        if matrix.len() != rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} constraint rows but {} right-hand sides",
                matrix.len(),
                rhs.len()
            )));
        }
        if let Some((i, row)) = matrix
            .iter()
            .enumerate()
            .find(|(_, row)| row.len() != objective.len())
        {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, objective has {}",
                row.len(),
                objective.len()
            )));
        }
        Ok(LinearProgram {
            objective,
            matrix,
            rhs,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rhs.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// Same feasible region, different objective.
    pub fn with_objective(&self, objective: Vec<Rational>) -> Result<Self> {
        LinearProgram::new(objective, self.matrix.clone(), self.rhs.clone())
    }

    /// Appends `row . x = value` as the pair `row . x <= value`, `-row . x <= -value`.
    pub fn with_equality(&self, row: &[Rational], value: &Rational) -> Result<Self> {
        if row.len() != self.num_vars() {
            return Err(Error::DimensionMismatch(format!(
                "equality has {} entries, program has {} variables",
                row.len(),
                self.num_vars()
            )));
        }
        let mut out = self.clone();
        out.matrix.push(row.to_vec());
        out.rhs.push(value.clone());
        out.matrix.push(row.iter().map(|a| -a).collect());
        out.rhs.push(-value);
        Ok(out)
    }

    /// True when `x >= 0` and every row holds.
    pub fn satisfies(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self
                .matrix
                .iter()
                .zip(&self.rhs)
                .all(|(row, b)| &dot(row, x) <= b)
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        witness: Vec<Rational>,
    },
    /// A feasible point, returned by [`feasible`].
    Feasible { witness: Vec<Rational> },
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

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { witness, .. } | LpOutcome::Feasible { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

enum Phase {
    Done,
    Unbounded,
}

struct Tableau {
    // each row holds `width` coefficients followed by the right-hand side
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    num_structural: usize,
    artificial_start: usize,
    width: usize,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.num_constraints();
        let num_artificial = lp.rhs.iter().filter(|b| b.is_negative()).count();
        let width = n + m + num_artificial;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_artificial = n + m;
        for (i, (coeffs, b)) in lp.matrix.iter().zip(&lp.rhs).enumerate() {
            let mut row = vec![Rational::zero(); width + 1];
            let flip = b.is_negative();
            for (j, a) in coeffs.iter().enumerate() {
                row[j] = if flip { -a } else { a.clone() };
            }
            row[n + i] = if flip { -Rational::one() } else { Rational::one() };
            row[width] = b.abs();
            if flip {
                row[next_artificial] = Rational::one();
                basis.push(next_artificial);
                next_artificial += 1;
            } else {
                basis.push(n + i);
            }
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            num_structural: n,
            artificial_start: n + m,
            width,
        }
    }

    fn pivot(&mut self, objective: &mut [Rational], r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        if !objective[c].is_zero() {
            let factor = objective[c].clone();
            for (v, pv) in objective.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row for maximizing `costs . x`, with basic columns eliminated.
    fn objective_row(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); self.width + 1];
        for (j, c) in costs.iter().enumerate() {
            row[j] = -c;
        }
        for (i, &b) in self.basis.iter().enumerate() {
            if row[b].is_zero() {
                continue;
            }
            let factor = row[b].clone();
            for (v, tv) in row.iter_mut().zip(&self.rows[i]) {
                if !tv.is_zero() {
                    *v -= &factor * tv;
                }
            }
        }
        row
    }

    /// Bland's rule: lowest-index improving column, ties in the ratio test
    /// broken by lowest basic variable index.
    fn run(&mut self, objective: &mut [Rational], allowed: usize) -> Phase {
        loop {
            let Some(c) = (0..allowed).find(|&j| objective[j].is_negative()) else {
                return Phase::Done;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(objective, r, c),
                None => return Phase::Unbounded,
            }
        }
    }

    /// Phase one; returns false when the region is empty.
    fn find_feasible_basis(&mut self) -> bool {
        if self.artificial_start == self.width {
            return true;
        }
        let mut costs = vec![Rational::zero(); self.width];
        for c in costs.iter_mut().skip(self.artificial_start) {
            *c = -Rational::one();
        }
        let mut objective = self.objective_row(&costs);
        // the auxiliary problem is bounded above by zero
        let _ = self.run(&mut objective, self.width);
        if objective[self.width].is_negative() {
            return false;
        }
        self.drive_out_artificials(&mut objective);
        true
    }

    fn drive_out_artificials(&mut self, objective: &mut [Rational]) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.artificial_start {
                i += 1;
                continue;
            }
            match (0..self.artificial_start).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(objective, i, j);
                    i += 1;
                }
                None => {
                    // redundant constraint
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.num_structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.num_structural {
                x[b] = self.rows[i][self.width].clone();
            }
        }
        x
    }
}

/// Exact maximum of the objective over `{x >= 0, A x <= b}`.
pub fn maximize(lp: &LinearProgram) -> LpOutcome {
    let mut tableau = Tableau::new(lp);
    if !tableau.find_feasible_basis() {
        return LpOutcome::Infeasible;
    }
    let mut costs = lp.objective.clone();
    costs.resize(tableau.width, Rational::zero());
    let mut objective = tableau.objective_row(&costs);
    match tableau.run(&mut objective, tableau.artificial_start) {
        Phase::Unbounded => LpOutcome::Unbounded,
        Phase::Done => LpOutcome::Optimal {
            value: objective[tableau.width].clone(),
            witness: tableau.solution(),
        },
    }
}

/// Phase-one feasibility of `lp` together with extra equality rows.
pub fn feasible(lp: &LinearProgram, extra_equalities: &[(Vec<Rational>, Rational)]) -> Result<LpOutcome> {
    let mut lp = lp.clone();
    for (row, value) in extra_equalities {
        lp = lp.with_equality(row, value)?;
    }
    let mut tableau = Tableau::new(&lp);
    if tableau.find_feasible_basis() {
        Ok(LpOutcome::Feasible {
            witness: tableau.solution(),
        })
    } else {
        Ok(LpOutcome::Infeasible)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uniqueness {
    pub value: Rational,
    pub unique: bool,
    /// Present exactly when `unique` holds.
    pub maximizer: Option<Vec<Rational>>,
}

/// Decides whether the optimal face is a single point by bounding every
/// coordinate over it.
pub fn optimum_is_unique(lp: &LinearProgram) -> Result<Uniqueness> {
    let value = match maximize(lp) {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Infeasible => {
            return Err(Error::NotApplicable("linear program is infeasible".into()))
        }
        _ => return Err(Error::NotApplicable("linear program is unbounded".into())),
    };
    let face = lp.with_equality(&lp.objective, &value)?;
    let n = lp.num_vars();
    let mut point = Vec::with_capacity(n);
    for j in 0..n {
        let mut unit = vec![Rational::zero(); n];
        unit[j] = Rational::one();
        let hi = coordinate_extreme(&face, unit.clone())?;
        unit[j] = -Rational::one();
        let lo = -coordinate_extreme(&face, unit)?;
        if hi != lo {
            return Ok(Uniqueness {
                value,
                unique: false,
                maximizer: None,
            });
        }
        point.push(hi);
    }
    Ok(Uniqueness {
        value,
        unique: true,
        maximizer: Some(point),
    })
}

fn coordinate_extreme(face: &LinearProgram, objective: Vec<Rational>) -> Result<Rational> {
    match maximize(&face.with_objective(objective)?) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        _ => Err(Error::NotApplicable(
            "optimal face is unbounded in some coordinate".into(),
        )),
    }
}
