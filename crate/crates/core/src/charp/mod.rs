//! Polynomials over `F_p` and the Frobenius-power invariants built on them.
//!
//! `nu(f, e)` is the largest `a` with `f^a` outside the Frobenius power
//! `m^[p^e] = (x_1^{p^e}, ..., x_m^{p^e})`. A monomial lies in that ideal
//! iff some exponent is at least `p^e`, so reduction is a coordinatewise
//! filter on the support.

mod parse;
mod poly;

pub use poly::{reduce_mod_p, FpPoly, QPoly, TermBudget, DEFAULT_TERM_BUDGET};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{big_pow, checked_pow, format_rational, to_u64, Rational};
use crate::polygeo::{self, MonomialSet};

/// Canonical representative of `g` modulo `m^[p^e]`.
pub fn frobenius_reduce(g: &FpPoly, e: u32) -> Result<FpPoly> {
    let q = checked_pow(g.characteristic(), e)?;
    Ok(g.drop_at_or_above(q))
}

fn check_in_maximal_ideal(f: &FpPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial has no F-pure threshold".into()));
    }
    if f.has_constant_term() {
        return Err(Error::InvalidInput(
            "polynomial has a constant term, so it does not vanish at the origin".into(),
        ));
    }
    Ok(())
}

/// `nu_f(p^e)`, found by multiplying by `f` one step at a time and reducing
/// after every product.
pub fn nu(f: &FpPoly, e: u32, budget: &TermBudget) -> Result<u64> {
    check_in_maximal_ideal(f)?;
    let q = checked_pow(f.characteristic(), e)?;
    let mut power = FpPoly::one(f.characteristic(), f.num_vars())?;
    let mut a = 0u64;
    loop {
        let next = power.mul_truncated(f, Some(q), budget)?;
        if next.is_zero() {
            return Ok(a);
        }
        power = next;
        a += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NuTable {
    pub p: u64,
    /// `values[e - 1] = nu(e)`.
    pub values: Vec<u64>,
}

impl NuTable {
    pub fn e_max(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn get(&self, e: u32) -> Option<u64> {
        self.values.get(e.checked_sub(1)? as usize).copied()
    }

    /// `(nu(e) / p^e, (nu(e) + 1) / p^e]`, the interval that must contain the threshold.
    pub fn interval(&self, e: u32) -> Option<(Rational, Rational)> {
        let v = self.get(e)?;
        let q = big_pow(self.p, e);
        Some((
            Rational::new(v.into(), q.clone()),
            Rational::new((v + 1).into(), q),
        ))
    }
}

/// `nu(1), ..., nu(e_max)`.
///
/// Level `e + 1` starts from `f^{p nu(e)} = Frobenius(f^{nu(e)})`, which is
/// already reduced and nonzero, so each level costs at most `p` products.
/// Returns the levels completed before the budget ran out, with the error.
pub fn nu_table(f: &FpPoly, e_max: u32, budget: &TermBudget) -> (NuTable, Option<Error>) {
    let p = f.characteristic();
    let mut table = NuTable { p, values: Vec::new() };
    if let Err(err) = check_in_maximal_ideal(f) {
        return (table, Some(err));
    }
    let mut power = match FpPoly::one(p, f.num_vars()) {
        Ok(one) => one,
        Err(err) => return (table, Some(err)),
    };
    let mut a = 0u64;
    for e in 1..=e_max {
        let q = match checked_pow(p, e) {
            Ok(q) => q,
            Err(err) => return (table, Some(err)),
        };
        if e > 1 {
            power = power.frobenius();
            a *= p;
        }
        loop {
            match power.mul_truncated(f, Some(q), budget) {
                Ok(next) if next.is_zero() => break,
                Ok(next) => {
                    power = next;
                    a += 1;
                }
                Err(err) => return (table, Some(err)),
            }
        }
        table.values.push(a);
    }
    (table, None)
}

/// `max |k|` over `k in N^n` with `E k <= (p^e - 1) * 1`: the `nu` of the
/// monomial ideal generated by `ms`.
///
/// Depth-first search over the columns, pruned by per-row capacity bounds,
/// stopping as soon as the LP bound `floor((p^e - 1) alpha)` is reached.
pub fn nu_ideal(ms: &MonomialSet, p: u64, e: u32) -> Result<u64> {
    if !crate::exactnum::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let cap = checked_pow(p, e)? - 1;
    let alpha = polygeo::alpha(ms);
    let target = (alpha * Rational::from_integer(cap.into()))
        .floor()
        .to_integer()
        .to_u64()
        .unwrap_or(u64::MAX);
    let columns: Vec<Vec<u64>> = ms
        .monomials()
        .iter()
        .map(|a| a.iter().map(|&x| x as u64).collect())
        .collect();
    let mut search = LatticeSearch {
        columns: &columns,
        best: 0,
        target,
    };
    let mut capacity = vec![cap; ms.num_vars()];
    search.descend(0, 0, &mut capacity);
    Ok(search.best)
}

struct LatticeSearch<'a> {
    columns: &'a [Vec<u64>],
    best: u64,
    target: u64,
}

impl LatticeSearch<'_> {
    fn max_copies(column: &[u64], capacity: &[u64]) -> u64 {
        column
            .iter()
            .zip(capacity)
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &c)| c / a)
            .min()
            .unwrap_or(0)
    }

    /// Upper bound on what columns `from..` can still add: each row alone
    /// caps the columns that use it.
    fn optimistic(&self, from: usize, capacity: &[u64]) -> u64 {
        self.columns[from..]
            .iter()
            .map(|c| Self::max_copies(c, capacity))
            .fold(0u64, |acc, k| acc.saturating_add(k))
            .min(
                (0..capacity.len())
                    .filter_map(|r| {
                        let smallest = self.columns[from..].iter().map(|c| c[r]).min()?;
                        (smallest > 0).then(|| capacity[r] / smallest)
                    })
                    .min()
                    .unwrap_or(u64::MAX),
            )
    }

    fn descend(&mut self, col: usize, sum: u64, capacity: &mut Vec<u64>) {
        if self.best >= self.target {
            return;
        }
        if col == self.columns.len() {
            self.best = self.best.max(sum);
            return;
        }
        if sum + self.optimistic(col, capacity) <= self.best {
            return;
        }
        let column = &self.columns[col];
        let most = Self::max_copies(column, capacity);
        for k in (0..=most).rev() {
            for (c, &a) in capacity.iter_mut().zip(column) {
                *c -= k * a;
            }
            self.descend(col + 1, sum + k, capacity);
            for (c, &a) in capacity.iter_mut().zip(column) {
                *c += k * a;
            }
            if self.best >= self.target {
                return;
            }
        }
    }
}

fn lambda_exponent(lambda: &Rational, p: u64, e: u32) -> Result<u64> {
    if lambda.is_negative() || lambda > &Rational::one() {
        return Err(Error::OutOfUnitInterval(format_rational(lambda)));
    }
    let q = checked_pow(p, e)?;
    let scaled = lambda * Rational::from_integer((q - 1).into());
    to_u64(&scaled).ok_or_else(|| {
        Error::Integrality(format!(
            "({p}^{e} - 1) * {} = {} is not an integer",
            format_rational(lambda),
            format_rational(&scaled)
        ))
    })
}

/// Decides `fpt(f) >= lambda` exactly, given `(p^e - 1) lambda` is an integer:
/// `true` iff `f^{(p^e - 1) lambda}` survives reduction modulo `m^[p^e]`.
pub fn certify_lower(f: &FpPoly, lambda: &Rational, e: u32, budget: &TermBudget) -> Result<bool> {
    check_in_maximal_ideal(f)?;
    let n = lambda_exponent(lambda, f.characteristic(), e)?;
    let q = checked_pow(f.characteristic(), e)?;
    Ok(!f.pow_truncated(n, Some(q), budget)?.is_zero())
}

/// `fpt(f) = 1`, decided by whether `f^{p-1}` survives modulo `m^[p]`.
pub fn fpt_is_one(f: &FpPoly, budget: &TermBudget) -> Result<bool> {
    certify_lower(f, &Rational::one(), 1, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReportKind {
    Exact,
    LowerBound,
    Bracket,
}

/// A successful `certify_lower(f, lambda, e)` call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub e: u32,
    pub lambda: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    pub kind: ReportKind,
    /// The exact value or the proved lower bound; absent for plain brackets.
    pub value: Option<Rational>,
    /// `fpt` lies in `(low, high]` (or equals `value` when exact).
    pub low: Rational,
    pub high: Rational,
    pub certificates: Vec<Certificate>,
    pub nu_table: Option<NuTable>,
    /// False when the term budget ran out before `e_max`.
    pub complete: bool,
}

impl ThresholdReport {
    pub fn width(&self) -> Rational {
        &self.high - &self.low
    }

    pub fn contains(&self, value: &Rational) -> bool {
        value > &self.low && value <= &self.high
    }
}

/// Brackets `fpt(f)` between `max nu(e)/p^e` and `min (nu(e)+1)/p^e` for `e <= e_max`.
///
/// If the budget runs out after at least one level, the partial table is
/// returned with `complete = false`.
pub fn bracket(f: &FpPoly, e_max: u32, budget: &TermBudget) -> Result<ThresholdReport> {
    if e_max == 0 {
        return Err(Error::InvalidInput("e_max must be at least 1".into()));
    }
    let (table, err) = nu_table(f, e_max, budget);
    if table.values.is_empty() {
        return Err(err.expect("an empty table comes with an error"));
    }
    if let Some(err) = &err {
        if !matches!(err, Error::BudgetExhausted { .. }) {
            return Err(err.clone());
        }
    }
    let mut low = Rational::zero();
    let mut high = Rational::one();
    for e in 1..=table.e_max() {
        let (lo, hi) = table.interval(e).expect("level computed");
        low = low.max(lo);
        high = high.min(hi);
    }
    Ok(ThresholdReport {
        kind: ReportKind::Bracket,
        value: None,
        low,
        high,
        certificates: Vec::new(),
        nu_table: Some(table),
        complete: err.is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    fn cusp(p: u64) -> FpPoly {
        FpPoly::from_terms(p, 2, [(vec![2, 0], 1), (vec![0, 3], 1)]).unwrap()
    }

    fn x(p: u64) -> FpPoly {
        FpPoly::from_terms(p, 1, [(vec![1], 1)]).unwrap()
    }

    fn budget() -> TermBudget {
        TermBudget::default()
    }

    #[test]
    fn frobenius_reduce_examples() {
        let g = FpPoly::from_terms(7, 2, [(vec![6, 6], 1)]).unwrap();
        assert_eq!(frobenius_reduce(&g, 1).unwrap(), g);
        let g = FpPoly::from_terms(7, 1, [(vec![7], 1)]).unwrap();
        assert!(frobenius_reduce(&g, 1).unwrap().is_zero());
        let f6 = cusp(7).pow_truncated(6, None, &budget()).unwrap();
        assert!(frobenius_reduce(&f6, 1).unwrap().is_zero());
        let f5 = cusp(7).pow_truncated(5, None, &budget()).unwrap();
        assert_eq!(frobenius_reduce(&f5, 1).unwrap().coefficient(&[6, 6]), 3);
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(&cusp(5), 1, &budget()).unwrap(), 3);
        assert_eq!(nu(&cusp(7), 1, &budget()).unwrap(), 5);
        for p in [2, 3, 5] {
            for e in 1..=3 {
                assert_eq!(nu(&x(p), e, &budget()).unwrap(), p.pow(e) - 1);
            }
        }
    }

    #[test]
    fn nu_rejects_bad_input() {
        let constant = FpPoly::from_terms(5, 1, [(vec![0], 1), (vec![1], 1)]).unwrap();
        assert!(nu(&constant, 1, &budget()).is_err());
        let zero = FpPoly::zero(5, 1).unwrap();
        assert!(nu(&zero, 1, &budget()).is_err());
    }

    #[test]
    fn table_matches_single_levels() {
        for p in [2, 3, 5, 7] {
            let (table, err) = nu_table(&cusp(p), 3, &budget());
            assert!(err.is_none());
            for e in 1..=3 {
                assert_eq!(table.get(e), Some(nu(&cusp(p), e, &budget()).unwrap()));
            }
        }
    }

    #[test]
    fn nu_ideal_examples() {
        for p in [2u64, 3, 5] {
            let ms = MonomialSet::parse(&format!("x^{p}, y^{p}"), None).unwrap();
            assert_eq!(nu_ideal(&ms, p, 1).unwrap(), 0);
            assert_eq!(nu_ideal(&ms, p, 2).unwrap(), 2 * (p - 1));
        }
        let ms = MonomialSet::parse("x^2, y^3", None).unwrap();
        assert_eq!(nu_ideal(&ms, 5, 1).unwrap(), 3);
    }

    #[test]
    fn certify_examples() {
        assert!(certify_lower(&cusp(7), &rat(5, 6), 1, &budget()).unwrap());
        assert!(!certify_lower(&cusp(7), &rat_int(1), 1, &budget()).unwrap());
        assert!(certify_lower(&x(3), &rat_int(1), 1, &budget()).unwrap());
        assert!(matches!(
            certify_lower(&cusp(5), &rat(5, 6), 1, &budget()),
            Err(Error::Integrality(_))
        ));
        assert!(matches!(
            certify_lower(&cusp(5), &rat(3, 2), 1, &budget()),
            Err(Error::OutOfUnitInterval(_))
        ));
    }

    #[test]
    fn fpt_is_one_examples() {
        for p in [2, 3, 5, 7] {
            let f = FpPoly::from_terms(p, 2, [(vec![1, 0], 1), (vec![0, 4], 1)]).unwrap();
            assert!(fpt_is_one(&f, &budget()).unwrap());
        }
        assert!(!fpt_is_one(&cusp(7), &budget()).unwrap());
        let cubic = |p| FpPoly::from_terms(p, 3, [(vec![3, 0, 0], 1), (vec![0, 3, 0], 1), (vec![0, 0, 3], 1)]).unwrap();
        assert!(fpt_is_one(&cubic(7), &budget()).unwrap());
        assert!(!fpt_is_one(&cubic(5), &budget()).unwrap());
    }

    #[test]
    fn bracket_examples() {
        let r = bracket(&cusp(5), 3, &budget()).unwrap();
        assert!(r.contains(&rat(4, 5)));
        assert_eq!(r.width(), rat(1, 125));
        assert_eq!(r.nu_table.as_ref().unwrap().values, vec![3, 19, 99]);

        let r = bracket(&x(3), 2, &budget()).unwrap();
        assert_eq!((r.low.clone(), r.high.clone()), (rat(8, 9), rat_int(1)));

        let r = bracket(&cusp(2), 4, &budget()).unwrap();
        assert!(r.contains(&rat(1, 2)));
    }

    #[test]
    fn bracket_reports_partial_tables() {
        let tiny = TermBudget::new(40);
        let r = bracket(&cusp(5), 3, &tiny).unwrap();
        assert!(!r.complete);
        assert!(r.nu_table.unwrap().e_max() < 3);
        assert!(matches!(
            bracket(&cusp(5), 3, &TermBudget::new(1)),
            Err(Error::BudgetExhausted { .. })
        ));
    }
}
