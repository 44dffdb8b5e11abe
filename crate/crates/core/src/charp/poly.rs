use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, is_prime, mul_mod, pow_mod, Rational};
use crate::polygeo::MonomialSet;
use crate::text::format_monomial;

pub const DEFAULT_TERM_BUDGET: u64 = 5_000_000;

/// Caps the number of term products spent on polynomial expansion.
///
/// The counter only decreases, so it can be shared between threads; the
/// first charge that would overdraw it fails and leaves it untouched.
#[derive(Debug)]
pub struct TermBudget {
    limit: u64,
    remaining: AtomicU64,
}

impl TermBudget {
    pub fn new(limit: u64) -> Self {
        TermBudget {
            limit,
            remaining: AtomicU64::new(limit),
        }
    }

    pub fn unlimited() -> Self {
        TermBudget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.remaining.load(Ordering::Relaxed)
    }

    pub fn charge(&self, terms: u64) -> Result<()> {
        self.remaining
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |r| r.checked_sub(terms))
            .map(|_| ())
            .map_err(|_| Error::BudgetExhausted { limit: self.limit })
    }
}

impl Default for TermBudget {
    fn default() -> Self {
        TermBudget::new(DEFAULT_TERM_BUDGET)
    }
}

/// Sparse polynomial over the prime field `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl FpPoly {
    pub fn zero(p: u64, num_vars: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FpPoly {
            p,
            num_vars,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(p: u64, num_vars: usize) -> Result<Self> {
        let mut f = FpPoly::zero(p, num_vars)?;
        f.terms.insert(vec![0; num_vars], 1);
        Ok(f)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; coefficients
    /// are reduced mod `p`, like terms are combined, and zeros are dropped.
    pub fn from_terms<I>(p: u64, num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, i64)>,
    {
        let mut f = FpPoly::zero(p, num_vars)?;
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "term {} has {} exponents, expected {num_vars}",
                    format_monomial(&exps),
                    exps.len()
                )));
            }
            let c = c.rem_euclid(p as i64) as u64;
            let slot = f.terms.entry(exps).or_insert(0);
            *slot = (*slot + c) % p;
        }
        f.terms.retain(|_, c| *c != 0);
        Ok(f)
    }

    /// `sum u_i x^{a_i}` over a monomial set, with coefficients in the set's order.
    pub fn from_monomials(p: u64, ms: &MonomialSet, coefficients: &[i64]) -> Result<Self> {
        if coefficients.len() != ms.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} monomials",
                coefficients.len(),
                ms.len()
            )));
        }
        FpPoly::from_terms(
            p,
            ms.num_vars(),
            ms.monomials().iter().cloned().zip(coefficients.iter().copied()),
        )
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> u64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&vec![0; self.num_vars])
    }

    /// The exponent vectors carrying nonzero coefficients, in sorted order.
    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    /// The support as a monomial set; fails when `f` has a constant term or is zero.
    pub fn support_set(&self) -> Result<MonomialSet> {
        MonomialSet::new(self.num_vars, self.support())
    }

    /// Whether the support is exactly the monomials of `ms`.
    pub fn has_support(&self, ms: &MonomialSet) -> bool {
        ms.num_vars() == self.num_vars
            && ms.len() == self.terms.len()
            && ms.monomials().iter().all(|a| self.terms.contains_key(a))
    }

    /// Coefficients listed in the order of `ms`; fails unless the supports agree.
    pub fn coefficients_on(&self, ms: &MonomialSet) -> Result<Vec<u64>> {
        if !self.has_support(ms) {
            return Err(Error::SupportMismatch);
        }
        Ok(ms.monomials().iter().map(|a| self.terms[a]).collect())
    }

    /// Keeps the terms whose exponents satisfy `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&[u32]) -> bool) -> FpPoly {
        FpPoly {
            p: self.p,
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, &c)| (k.clone(), c))
                .collect(),
        }
    }

    fn check_compatible(&self, other: &FpPoly) -> Result<()> {
        if self.p != other.p || self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch(format!(
                "cannot combine a polynomial over F_{} in {} variables with one over F_{} in {}",
                self.p, self.num_vars, other.p, other.num_vars
            )));
        }
        Ok(())
    }

    /// Product, dropping every term with an exponent `>= bound` when given.
    pub fn mul_truncated(&self, other: &FpPoly, bound: Option<u64>, budget: &TermBudget) -> Result<FpPoly> {
        self.check_compatible(other)?;
        budget.charge(self.terms.len() as u64 * other.terms.len() as u64)?;
        let p = self.p;
        let mut acc: HashMap<Vec<u32>, u64> = HashMap::with_capacity(self.terms.len());
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let exps: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(q) = bound {
                    if exps.iter().any(|&x| x as u64 >= q) {
                        continue;
                    }
                }
                let slot = acc.entry(exps).or_insert(0);
                *slot = (*slot + mul_mod(ca, cb, p)) % p;
            }
        }
        Ok(FpPoly {
            p,
            num_vars: self.num_vars,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        })
    }

    pub fn mul(&self, other: &FpPoly, budget: &TermBudget) -> Result<FpPoly> {
        self.mul_truncated(other, None, budget)
    }

    /// `self^n`, reduced modulo the monomial ideal `(x_i^bound)` along the way.
    pub fn pow_truncated(&self, n: u64, bound: Option<u64>, budget: &TermBudget) -> Result<FpPoly> {
        let mut acc = FpPoly::one(self.p, self.num_vars)?;
        if let Some(q) = bound {
            acc = acc.drop_at_or_above(q);
        }
        let mut base = match bound {
            Some(q) => self.drop_at_or_above(q),
            None => self.clone(),
        };
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_truncated(&base, bound, budget)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_truncated(&base, bound, budget)?;
            }
        }
        Ok(acc)
    }

    pub(crate) fn drop_at_or_above(&self, q: u64) -> FpPoly {
        self.filter_terms(|k| k.iter().all(|&x| (x as u64) < q))
    }

    /// `g(x_1^p, ..., x_m^p)`; equals `g^p` over `F_p`.
    pub fn frobenius(&self) -> FpPoly {
        let p = self.p as u32;
        FpPoly {
            p: self.p,
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(k, &c)| (k.iter().map(|x| x * p).collect(), c))
                .collect(),
        }
    }

    /// Evaluates at a point of `F_p^m`.
    pub fn evaluate(&self, point: &[u64]) -> u64 {
        self.terms.iter().fold(0, |acc, (k, &c)| {
            let term = k
                .iter()
                .zip(point)
                .fold(c, |t, (&e, &x)| mul_mod(t, pow_mod(x, e as u64, self.p), self.p));
            (acc + term) % self.p
        })
    }
}

fn write_terms<C>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (Vec<u32>, C)>, render: impl Fn(&C) -> (bool, String)) -> fmt::Result {
    let mut first = true;
    for (exps, c) in terms {
        let (negative, magnitude) = render(&c);
        let sign = match (first, negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        first = false;
        let mono = format_monomial(&exps);
        let body = match (magnitude.as_str(), mono.as_str()) {
            (m, "1") => m.to_string(),
            ("1", mono) => mono.to_string(),
            (m, mono) => format!("{m}*{mono}"),
        };
        write!(f, "{sign}{body}")?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(k, c)| (k.clone(), *c)), |c| (false, c.to_string()))
    }
}

/// Sparse polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl QPoly {
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "term {} has {} exponents, expected {num_vars}",
                    format_monomial(&exps),
                    exps.len()
                )));
            }
            *out.entry(exps).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(QPoly {
            num_vars,
            terms: out,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    pub fn support_set(&self) -> Result<MonomialSet> {
        MonomialSet::new(self.num_vars, self.support())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(k, c)| (k.clone(), c.clone())), |c| {
            let mag = c.abs();
            let text = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format_rational(&mag)
            };
            (c.is_negative(), text)
        })
    }
}

/// Reduces every coefficient `a/b` to `a * b^-1 mod p`.
///
/// With `preserve_support`, a coefficient vanishing mod `p` is an error
/// rather than a silently dropped term.
pub fn reduce_mod_p(f: &QPoly, p: u64, preserve_support: bool) -> Result<FpPoly> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let modulus = BigInt::from(p);
    let mut terms = BTreeMap::new();
    for (exps, c) in &f.terms {
        let den = c.denom().mod_floor(&modulus);
        if den.is_zero() {
            return Err(Error::DenominatorDivisible {
                p,
                coefficient: format_rational(c),
            });
        }
        let num = c.numer().mod_floor(&modulus).to_u64().expect("residue fits");
        let den = den.to_u64().expect("residue fits");
        let value = mul_mod(num, pow_mod(den, p - 2, p), p);
        if value == 0 {
            if preserve_support {
                return Err(Error::SupportCollapse {
                    p,
                    coefficient: format_rational(c),
                });
            }
            continue;
        }
        terms.insert(exps.clone(), value);
    }
    Ok(FpPoly {
        p,
        num_vars: f.num_vars,
        terms,
    })
}
