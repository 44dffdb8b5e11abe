//! Splitting polytopes, Newton polyhedra, and the faces that govern thresholds.
//!
//! For a monomial set with exponent matrix `E` (m x n):
//!
//! * the splitting polytope is `P = {s >= 0 : E s <= 1}` and `alpha` is the
//!   largest coordinate sum on it;
//! * the Newton polyhedron `N` is the convex hull of the exponent vectors
//!   plus the nonnegative orthant, and `(1/alpha) * 1` lies on its boundary;
//! * the minimal face of `N` through that point decides which monomials
//!   contribute to the leading term, and whether it is bounded.
//!
//! Face questions are answered with small ray LPs from `(1/alpha) * 1`, which
//! sits in the relative interior of the minimal face, instead of
//! materialising supporting hyperplanes.

mod monomial;

pub use monomial::MonomialSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::ratlp::{self, LinearProgram, LpOutcome};

fn int(v: u64) -> Rational {
    Rational::from_integer(v.into())
}

/// H-representation of `{s >= 0 : E s <= 1}` with objective `|s|`.
pub fn splitting_polytope(ms: &MonomialSet) -> LinearProgram {
    let matrix = ms
        .exponent_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(int).collect())
        .collect();
    LinearProgram::new(
        vec![Rational::one(); ms.len()],
        matrix,
        vec![Rational::one(); ms.num_vars()],
    )
    .expect("exponent matrix is m x n")
}

/// Maximum of `|s|` over the splitting polytope.
pub fn alpha(ms: &MonomialSet) -> Rational {
    match ratlp::maximize(&splitting_polytope(ms)) {
        LpOutcome::Optimal { value, .. } => value,
        other => unreachable!("splitting polytope is a nonempty subset of the unit cube: {other:?}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalPointResult {
    pub alpha: Rational,
    pub unique: bool,
    /// The maximal point when it is unique.
    pub eta: Option<Vec<Rational>>,
}

pub fn maximal_points(ms: &MonomialSet) -> MaximalPointResult {
    let u = ratlp::optimum_is_unique(&splitting_polytope(ms))
        .expect("splitting polytope LP is bounded and feasible");
    MaximalPointResult {
        alpha: u.value,
        unique: u.unique,
        eta: u.maximizer,
    }
}

/// Whether `s` is a maximal point: in the polytope with `|s| = alpha`.
pub fn is_maximal_point(ms: &MonomialSet, alpha: &Rational, s: &[Rational]) -> bool {
    let lp = splitting_polytope(ms);
    lp.satisfies(s) && &lp.evaluate(s) == alpha
}

/// Rows `E s - v <= 0` in variables `s` followed by `extra` zero columns,
/// plus `|s| = 1`.
fn hull_rows(ms: &MonomialSet, extra: usize) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = ms.len();
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for row in ms.exponent_matrix() {
        let mut r: Vec<Rational> = row.into_iter().map(int).collect();
        r.resize(n + extra, Rational::zero());
        matrix.push(r);
        rhs.push(Rational::zero());
    }
    let mut sum = vec![Rational::one(); n];
    sum.resize(n + extra, Rational::zero());
    matrix.push(sum.clone());
    rhs.push(Rational::one());
    matrix.push(sum.iter().map(|a| -a).collect());
    rhs.push(-Rational::one());
    (matrix, rhs)
}

/// Membership of `v` in the Newton polyhedron: some convex combination of
/// the exponent vectors lies below `v` coordinatewise.
pub fn newton_contains(ms: &MonomialSet, v: &[Rational]) -> Result<bool> {
    if v.len() != ms.num_vars() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, monomials live in {} variables",
            v.len(),
            ms.num_vars()
        )));
    }
    let (matrix, mut rhs) = hull_rows(ms, 0);
    for (b, vi) in rhs.iter_mut().zip(v) {
        *b = vi.clone();
    }
    let lp = LinearProgram::new(vec![Rational::zero(); ms.len()], matrix, rhs)?;
    Ok(ratlp::feasible(&lp, &[])?.is_feasible())
}

/// Largest `lambda` with `(1/lambda) * 1` in the Newton polyhedron.
///
/// Solved as: minimize `mu` subject to `E s <= mu * 1`, `|s| = 1`, `s >= 0`,
/// then `lambda = 1/mu`. This is a different program from the one behind
/// [`alpha`]; the two agreeing is a check on both.
pub fn lct_monomial(ms: &MonomialSet) -> Rational {
    let n = ms.len();
    let (mut matrix, rhs) = hull_rows(ms, 1);
    for row in matrix.iter_mut().take(ms.num_vars()) {
        row[n] = -Rational::one();
    }
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = -Rational::one();
    let lp = LinearProgram::new(objective, matrix, rhs).expect("rows sized n + 1");
    match ratlp::maximize(&lp) {
        LpOutcome::Optimal { value, .. } => {
            let mu = -value;
            debug_assert!(mu.is_positive());
            mu.recip()
        }
        other => unreachable!("diagonal scaling LP always has an optimum: {other:?}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonAnalysis {
    pub alpha: Rational,
    /// Indices of the monomials lying on the minimal face through `(1/alpha) * 1`.
    pub lambda_members: Vec<usize>,
    pub diagonal_position: bool,
}

impl NewtonAnalysis {
    pub fn r(&self) -> usize {
        self.lambda_members.len()
    }
}

/// Largest `eps` in `[0, 1]` with `v + eps * direction` in the Newton polyhedron.
fn ray_extent(ms: &MonomialSet, v: &[Rational], direction: &[Rational]) -> Rational {
    let n = ms.len();
    let (mut matrix, mut rhs) = hull_rows(ms, 1);
    // E s - eps * direction <= v
    for (r, (row, d)) in matrix.iter_mut().zip(direction).enumerate() {
        row[n] = -d;
        rhs[r] = v[r].clone();
    }
    let mut cap = vec![Rational::zero(); n + 1];
    cap[n] = Rational::one();
    matrix.push(cap.clone());
    rhs.push(Rational::one());
    let lp = LinearProgram::new(cap, matrix, rhs).expect("rows sized n + 1");
    match ratlp::maximize(&lp) {
        LpOutcome::Optimal { value, .. } => value,
        // v itself is outside N
        _ => Rational::zero(),
    }
}

pub fn newton_analysis(ms: &MonomialSet) -> NewtonAnalysis {
    let alpha = alpha(ms);
    let v = vec![alpha.recip(); ms.num_vars()];
    let lambda_members: Vec<usize> = (0..ms.len())
        .filter(|&i| {
            let away: Vec<Rational> = v
                .iter()
                .zip(ms.monomial(i))
                .map(|(vi, &a)| vi - int(a as u64))
                .collect();
            ray_extent(ms, &v, &away).is_positive()
        })
        .collect();
    let diagonal_position = (0..ms.num_vars()).all(|i| {
        let mut down = vec![Rational::zero(); ms.num_vars()];
        down[i] = -Rational::one();
        ray_extent(ms, &v, &down).is_zero()
    });
    debug_assert!(!lambda_members.is_empty());
    NewtonAnalysis {
        alpha,
        lambda_members,
        diagonal_position,
    }
}
