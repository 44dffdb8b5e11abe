//! Threshold theorems turned into procedures.
//!
//! Given a monomial set whose splitting polytope has a unique maximal point
//! `eta`, the base-`p` digits of `eta` decide the F-pure threshold of every
//! polynomial with that support: if the digits never carry the threshold is
//! `alpha = |eta|`, otherwise the carry-free prefix gives an explicit lower
//! bound. The rest of the module supplies the leading-coefficient
//! polynomials that certify equality for general coefficients, and the
//! per-prime scan that ties everything to brute-force brackets.

mod scan;
mod theta;

pub use scan::{
    dense_fpurity_scan, report_json, write_csv, ClaimStrength, PrimeSpec, ScanAttempt, ScanOptions, ScanRow,
};
pub use theta::{
    generic_gap_test, restrict_to_lambda, theta_eta, theta_polynomial, unique_point_coefficient,
    ThetaPoly,
};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    big_pow, carry_free_prefix, checked_pow, format_rational, is_prime, truncate, CarryBound,
    Rational,
};
use crate::polygeo::{self, MonomialSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainTheoremVerdict {
    pub carry: CarryBound,
    pub kind: VerdictKind,
    /// `alpha` when exact, otherwise the proved lower bound.
    pub value: Rational,
    pub alpha: Rational,
    pub eta: Vec<Rational>,
}

/// Threshold verdict for every polynomial supported exactly on `ms` with
/// nonzero coefficients over a field of characteristic `p`.
///
/// With `L` the carry-free prefix of the entries of `eta`: `L = infinity`
/// gives `fpt = alpha`; otherwise `fpt >= sum <eta_i>_L + p^-L`.
pub fn main_theorem(ms: &MonomialSet, p: u64) -> Result<MainTheoremVerdict> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let points = polygeo::maximal_points(ms);
    let eta = points.eta.ok_or_else(|| {
        Error::NotApplicable("the splitting polytope has no unique maximal point".into())
    })?;
    let carry = carry_free_prefix(&eta, p)?.bound;
    let (kind, value) = match carry {
        CarryBound::Infinite => (VerdictKind::Exact, points.alpha.clone()),
        CarryBound::Finite(l) => {
            let l = u32::try_from(l).map_err(|_| Error::InvalidInput("carry-free prefix too long".into()))?;
            let mut bound = Rational::new(1.into(), big_pow(p, l));
            for x in &eta {
                bound += truncate(x, p, l)?;
            }
            (VerdictKind::LowerBound, bound)
        }
    };
    Ok(MainTheoremVerdict {
        carry,
        kind,
        value,
        alpha: points.alpha,
        eta,
    })
}

/// `N * alpha / (alpha - 1)`: when `p^e > N` and `p^e >= ` this bound, a
/// polynomial whose face part has an isolated singularity witnessed by `N`
/// has F-pure threshold 1.
pub fn fedder_prime_bound(alpha: &Rational, n: u64, e: u32) -> Result<Rational> {
    if alpha <= &Rational::one() {
        return Err(Error::InvalidInput(format!(
            "the bound needs alpha > 1, got {}",
            format_rational(alpha)
        )));
    }
    if n == 0 || e == 0 {
        return Err(Error::InvalidInput("N and e must be positive".into()));
    }
    Ok(Rational::from_integer(n.into()) * alpha / (alpha - Rational::one()))
}

/// Whether `p^e` clears both conditions of [`fedder_prime_bound`].
pub fn fedder_forces_fpt_one(alpha: &Rational, n: u64, p: u64, e: u32) -> Result<bool> {
    let bound = fedder_prime_bound(alpha, n, e)?;
    let q = checked_pow(p, e)?;
    let q_rat = Rational::from_integer(q.into());
    Ok(q > n && q_rat >= bound && !bound.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    fn cusp() -> MonomialSet {
        MonomialSet::parse("x^2, y^3", None).unwrap()
    }

    #[test]
    fn cusp_verdicts() {
        for p in [7, 13, 19] {
            let v = main_theorem(&cusp(), p).unwrap();
            assert_eq!(v.kind, VerdictKind::Exact);
            assert_eq!(v.value, rat(5, 6));
        }
        let v = main_theorem(&cusp(), 5).unwrap();
        assert_eq!((v.kind, v.carry, v.value), (VerdictKind::LowerBound, CarryBound::Finite(1), rat(4, 5)));
        let v = main_theorem(&cusp(), 2).unwrap();
        assert_eq!((v.kind, v.carry, v.value), (VerdictKind::LowerBound, CarryBound::Finite(1), rat(1, 2)));
        let v = main_theorem(&cusp(), 3).unwrap();
        assert_eq!((v.kind, v.value), (VerdictKind::LowerBound, rat(2, 3)));
        let v = main_theorem(&cusp(), 11).unwrap();
        assert_eq!(v.value, rat(5, 6) - rat(1, 66));
    }

    #[test]
    fn main_theorem_needs_unique_point() {
        let edge = MonomialSet::parse("x^3, y^6, x^2*y^2", None).unwrap();
        assert!(matches!(main_theorem(&edge, 5), Err(Error::NotApplicable(_))));
        assert_eq!(main_theorem(&cusp(), 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn large_alpha_gives_one() {
        // eta = (1, 1): digits p-1 + p-1 carry immediately, so L = 0 and the bound is 1
        let v = main_theorem(&MonomialSet::parse("x, y", None).unwrap(), 3).unwrap();
        assert_eq!((v.carry, v.value), (CarryBound::Finite(0), rat_int(1)));
    }

    #[test]
    fn fedder_examples() {
        assert_eq!(fedder_prime_bound(&rat(4, 3), 2, 1).unwrap(), rat_int(8));
        assert_eq!(fedder_prime_bound(&rat_int(2), 1, 1).unwrap(), rat_int(2));
        assert_eq!(fedder_prime_bound(&rat(3, 2), 3, 1).unwrap(), rat_int(9));
        assert!(fedder_prime_bound(&rat_int(1), 3, 1).is_err());
        assert!(fedder_prime_bound(&rat(1, 2), 3, 1).is_err());

        assert!(fedder_forces_fpt_one(&rat_int(2), 1, 2, 1).unwrap());
        assert!(!fedder_forces_fpt_one(&rat(4, 3), 2, 7, 1).unwrap());
        assert!(fedder_forces_fpt_one(&rat(4, 3), 2, 11, 1).unwrap());
        assert!(fedder_forces_fpt_one(&rat(4, 3), 2, 3, 2).unwrap());
    }
}
