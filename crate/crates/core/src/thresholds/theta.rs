use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::charp::FpPoly;
use crate::error::{Error, Result};
use crate::exactnum::{checked_pow, format_rational, mul_mod, multinomial_exact, pow_mod, to_u64, Rational};
use crate::polygeo::{self, MonomialSet};

/// Integer polynomial in the coefficients `t_i` of selected monomials.
///
/// `variables[j]` is the index, within the monomial set, of the monomial
/// whose coefficient `t_j` stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPoly {
    pub variables: Vec<usize>,
    pub terms: BTreeMap<Vec<u64>, BigUint>,
}

impl ThetaPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates at `values` (one per variable) modulo `p`.
    pub fn evaluate_mod(&self, values: &[u64], p: u64) -> u64 {
        let modulus = BigUint::from(p);
        let total = self.terms.iter().fold(BigUint::zero(), |acc, (kappa, c)| {
            let term = kappa
                .iter()
                .zip(values)
                .fold(c % &modulus, |t, (&k, &u)| {
                    t * BigUint::from(u).modpow(&BigUint::from(k), &modulus) % &modulus
                });
            (acc + term) % &modulus
        });
        total.to_u64().expect("residue fits")
    }

    /// Evaluates at the coefficients of `f`, which must contain every monomial used.
    pub fn evaluate_at(&self, f: &FpPoly, ms: &MonomialSet) -> u64 {
        let values: Vec<u64> = self
            .variables
            .iter()
            .map(|&i| f.coefficient(ms.monomial(i)))
            .collect();
        self.evaluate_mod(&values, f.characteristic())
    }
}

impl fmt::Display for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest degree in t_1 first
        for (kappa, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let factors: Vec<String> = kappa
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { format!("t{}", j + 1) } else { format!("t{}^{}", j + 1, k) })
                .collect();
            match (c.is_one(), factors.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (true, false) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// All `k in N^columns` with `E k = target` and `|k| = total`.
pub(crate) fn exact_compositions(columns: &[Vec<u64>], target: &[u64], total: u64) -> Vec<Vec<u64>> {
    fn walk(
        columns: &[Vec<u64>],
        col: usize,
        remaining: &mut Vec<u64>,
        left: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if col == columns.len() {
            if left == 0 && remaining.iter().all(|&r| r == 0) {
                out.push(current.clone());
            }
            return;
        }
        let column = &columns[col];
        let most = column
            .iter()
            .zip(remaining.iter())
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &r)| r / a)
            .min()
            .unwrap_or(0)
            .min(left);
        for k in 0..=most {
            for (r, &a) in remaining.iter_mut().zip(column) {
                *r -= k * a;
            }
            current.push(k);
            walk(columns, col + 1, remaining, left - k, current, out);
            current.pop();
            for (r, &a) in remaining.iter_mut().zip(column) {
                *r += k * a;
            }
        }
    }
    let mut out = Vec::new();
    walk(columns, 0, &mut target.to_vec(), total, &mut Vec::new(), &mut out);
    out
}

/// All `k in N^columns` with `E k <= cap * 1` and `|k| = total`.
pub(crate) fn bounded_compositions(columns: &[Vec<u64>], rows: usize, cap: u64, total: u64) -> Vec<Vec<u64>> {
    fn walk(
        columns: &[Vec<u64>],
        col: usize,
        room: &mut Vec<u64>,
        left: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if col == columns.len() {
            if left == 0 {
                out.push(current.clone());
            }
            return;
        }
        let column = &columns[col];
        let most = column
            .iter()
            .zip(room.iter())
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &r)| r / a)
            .min()
            .unwrap_or(u64::MAX)
            .min(left);
        for k in 0..=most {
            for (r, &a) in room.iter_mut().zip(column) {
                *r -= k * a;
            }
            current.push(k);
            walk(columns, col + 1, room, left - k, current, out);
            current.pop();
            for (r, &a) in room.iter_mut().zip(column) {
                *r += k * a;
            }
        }
    }
    let mut out = Vec::new();
    walk(columns, 0, &mut vec![cap; rows], total, &mut Vec::new(), &mut out);
    out
}

fn columns_of(ms: &MonomialSet, indices: &[usize]) -> Vec<Vec<u64>> {
    indices
        .iter()
        .map(|&i| ms.monomial(i).iter().map(|&a| a as u64).collect())
        .collect()
}

fn build(variables: Vec<usize>, solutions: Vec<Vec<u64>>) -> ThetaPoly {
    let terms = solutions
        .into_iter()
        .map(|k| {
            let c = multinomial_exact(&k);
            (k, c)
        })
        .collect();
    ThetaPoly { variables, terms }
}

fn not_applicable(reason: impl Into<String>) -> Error {
    Error::NotApplicable(reason.into())
}

/// The leading-coefficient polynomial at level `e`: the sum over `kappa` on
/// the minimal face with `E kappa = (p^e - 1) * 1` and `|kappa| = (p^e - 1) alpha`
/// of `multinomial(kappa) * t^kappa`.
pub fn theta_polynomial(ms: &MonomialSet, p: u64, e: u32) -> Result<ThetaPoly> {
    if !crate::exactnum::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let analysis = polygeo::newton_analysis(ms);
    if !analysis.diagonal_position {
        return Err(not_applicable("Newton polyhedron is not in diagonal position"));
    }
    let cap = checked_pow(p, e)? - 1;
    let degree = &analysis.alpha * Rational::from_integer(cap.into());
    let degree = to_u64(&degree).ok_or_else(|| {
        not_applicable(format!(
            "({p}^{e} - 1) * alpha = {} is not an integer",
            format_rational(&degree)
        ))
    })?;
    let columns = columns_of(ms, &analysis.lambda_members);
    let solutions = exact_compositions(&columns, &vec![cap; ms.num_vars()], degree);
    if solutions.is_empty() {
        return Err(not_applicable(format!(
            "no maximal point eta with ({p}^{e} - 1) * eta integral"
        )));
    }
    Ok(build(analysis.lambda_members, solutions))
}

/// The coefficient polynomial of `x^{(p-1) E eta}` in `f^{(p-1) alpha}`, for a
/// maximal point `eta` with `(p - 1) eta` integral and `alpha <= 1`.
pub fn theta_eta(ms: &MonomialSet, eta: &[Rational], p: u64) -> Result<ThetaPoly> {
    if !crate::exactnum::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if eta.len() != ms.len() {
        return Err(Error::DimensionMismatch(format!(
            "eta has {} entries for {} monomials",
            eta.len(),
            ms.len()
        )));
    }
    let alpha = polygeo::alpha(ms);
    if alpha > Rational::one() {
        return Err(not_applicable(format!("alpha = {} exceeds 1", format_rational(&alpha))));
    }
    if !polygeo::is_maximal_point(ms, &alpha, eta) {
        return Err(not_applicable("eta is not a maximal point of the splitting polytope"));
    }
    let scale = Rational::from_integer((p - 1).into());
    let k_eta: Vec<u64> = eta
        .iter()
        .map(|x| to_u64(&(x * &scale)))
        .collect::<Option<_>>()
        .ok_or_else(|| not_applicable(format!("({p} - 1) * eta is not integral")))?;
    let degree = to_u64(&(&alpha * &scale)).expect("sum of integral entries");
    let all: Vec<usize> = (0..ms.len()).collect();
    let target = ms.combine(&k_eta);
    Ok(build(all.clone(), exact_compositions(&columns_of(ms, &all), &target, degree)))
}

/// Maximal points `eta` with `(p - 1) eta` integral, returned as `(p - 1) eta`.
fn integral_maximal_points(ms: &MonomialSet, alpha: &Rational, p: u64) -> Vec<Vec<u64>> {
    let scale = Rational::from_integer((p - 1).into());
    let Some(degree) = to_u64(&(alpha * scale)) else {
        return Vec::new();
    };
    let all: Vec<usize> = (0..ms.len()).collect();
    bounded_compositions(&columns_of(ms, &all), ms.num_vars(), p - 1, degree)
}

/// Evaluates `Theta_eta` at the coefficients of `f`.
///
/// `Ok(true)` proves `fpt(f) = alpha`; `Ok(false)` is inconclusive (the
/// coefficients lie on the exceptional set). Every maximal `eta` with
/// `(p - 1) eta` integral is tried.
pub fn generic_gap_test(f: &FpPoly, ms: &MonomialSet) -> Result<bool> {
    let u = f.coefficients_on(ms)?;
    let p = f.characteristic();
    let alpha = polygeo::alpha(ms);
    if alpha > Rational::one() {
        return Err(not_applicable(format!("alpha = {} exceeds 1", format_rational(&alpha))));
    }
    let mut targets: Vec<Vec<u64>> = integral_maximal_points(ms, &alpha, p)
        .into_iter()
        .map(|k| ms.combine(&k))
        .collect();
    targets.sort();
    targets.dedup();
    if targets.is_empty() {
        return Err(not_applicable(format!(
            "no maximal point eta with ({p} - 1) * eta integral"
        )));
    }
    let degree = to_u64(&(&alpha * Rational::from_integer((p - 1).into()))).expect("integral");
    let all: Vec<usize> = (0..ms.len()).collect();
    let columns = columns_of(ms, &all);
    Ok(targets.iter().any(|target| {
        build(all.clone(), exact_compositions(&columns, target, degree)).evaluate_mod(&u, p) != 0
    }))
}

/// The terms of `f` whose monomials lie on the minimal face.
pub fn restrict_to_lambda(f: &FpPoly, ms: &MonomialSet) -> Result<FpPoly> {
    if !f.has_support(ms) {
        return Err(Error::SupportMismatch);
    }
    let analysis = polygeo::newton_analysis(ms);
    let keep: Vec<&[u32]> = analysis
        .lambda_members
        .iter()
        .map(|&i| ms.monomial(i))
        .collect();
    Ok(f.filter_terms(|k| keep.contains(&k)))
}

/// Coefficient of `x^{p^e E <eta>_e}` in `f^{p^e |<eta>_e|}`, from the digits
/// of the unique maximal point alone.
pub fn unique_point_coefficient(f: &FpPoly, ms: &MonomialSet, e: u32) -> Result<u64> {
    let u = f.coefficients_on(ms)?;
    let p = f.characteristic();
    let points = polygeo::maximal_points(ms);
    let eta = points
        .eta
        .ok_or_else(|| not_applicable("the splitting polytope has no unique maximal point"))?;
    let q = Rational::from_integer(checked_pow(p, e)?.into());
    let parts: Vec<u64> = eta
        .iter()
        .map(|x| {
            let t = crate::exactnum::truncate(x, p, e)?;
            Ok(to_u64(&(t * &q)).expect("p^e times a truncation is a natural number"))
        })
        .collect::<Result<_>>()?;
    let multinomial = crate::exactnum::multinomial_mod_p(&parts, p)?;
    Ok(parts
        .iter()
        .zip(&u)
        .fold(multinomial, |acc, (&k, &c)| {
            mul_mod(acc, pow_mod(c, k, p), p)
        }))
}
