use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{big_pow, check_unit_interval, is_prime, Rational};
use crate::error::{Error, Result};

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `ceil(p^e * alpha) - 1`, the integer numerator of the `e`-th truncation.
fn truncation_numerator(alpha: &Rational, p: u64, e: u32) -> BigInt {
    let scaled = alpha * Rational::from_integer(big_pow(p, e));
    scaled.ceil().to_integer() - BigInt::one()
}

/// The `e`-th digit of the non-terminating base-`p` expansion of `alpha`.
///
/// `digit(alpha, p, 0) = 0` and `digit(0, p, e) = 0` by convention.
pub fn digit(alpha: &Rational, p: u64, e: u32) -> Result<u64> {
    check_unit_interval(alpha)?;
    check_prime(p)?;
    if e == 0 || alpha.is_zero() {
        return Ok(0);
    }
    let here = truncation_numerator(alpha, p, e);
    let before = truncation_numerator(alpha, p, e - 1);
    let d = here - before * BigInt::from(p);
    Ok(d.to_u64().expect("digit lies in [0, p-1]"))
}

/// Sum of the first `e` digits, `sum_{d <= e} digit(alpha, p, d) / p^d`.
///
/// Strictly below `alpha` and within `p^-e` of it whenever `alpha > 0`.
pub fn truncate(alpha: &Rational, p: u64, e: u32) -> Result<Rational> {
    check_unit_interval(alpha)?;
    check_prime(p)?;
    if e == 0 || alpha.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(truncation_numerator(alpha, p, e), big_pow(p, e)))
}

/// Finite presentation of an eventually periodic, non-terminating digit sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitStream {
    base: u64,
    value: Rational,
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl DigitStream {
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// Digit at 1-based position `e`; position 0 is the conventional zero.
    pub fn digit(&self, e: usize) -> u64 {
        if e == 0 {
            return 0;
        }
        let i = e - 1;
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Sums the infinite series described by the preperiod and repeated period.
    pub fn evaluate(&self) -> Rational {
        let p = BigInt::from(self.base);
        let horner = |digits: &[u64]| {
            digits
                .iter()
                .fold(BigInt::zero(), |acc, &d| acc * &p + BigInt::from(d))
        };
        let k = self.preperiod.len();
        let l = self.period.len();
        let pk = num_traits::pow(p.clone(), k);
        let pl = num_traits::pow(p.clone(), l);
        let head = Rational::new(horner(&self.preperiod), pk.clone());
        let tail = Rational::new(horner(&self.period), pk * (pl - BigInt::one()));
        head + tail
    }
}

impl fmt::Display for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[u64]| {
            ds.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "0.[{}]([{}]) base {}",
            join(&self.preperiod),
            join(&self.period),
            self.base
        )
    }
}

/// Computes the preperiod and period of `alpha` in base `p`.
///
/// The remainder `r` with current tail value `r / den` always lies in
/// `(0, den]`, so the orbit has at most `den` states.
pub fn digit_stream(alpha: &Rational, p: u64) -> Result<DigitStream> {
    check_unit_interval(alpha)?;
    check_prime(p)?;
    if alpha.is_zero() {
        return Ok(DigitStream {
            base: p,
            value: alpha.clone(),
            preperiod: Vec::new(),
            period: vec![0],
        });
    }
    let den = alpha.denom().clone();
    let base = BigInt::from(p);
    let mut remainder = alpha.numer().clone();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&remainder) {
            let period = digits.split_off(start);
            return Ok(DigitStream {
                base: p,
                value: alpha.clone(),
                preperiod: digits,
                period,
            });
        }
        seen.insert(remainder.clone(), digits.len());
        let shifted = &remainder * &base;
        let d = (&shifted - BigInt::one()).div_floor(&den);
        remainder = shifted - &d * &den;
        digits.push(d.to_u64().expect("digit lies in [0, p-1]"));
    }
}

/// Length of the longest carry-free prefix of a tuple of digit expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CarryBound {
    Finite(u64),
    Infinite,
}

impl CarryBound {
    pub fn is_infinite(self) -> bool {
        matches!(self, CarryBound::Infinite)
    }
}

impl fmt::Display for CarryBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarryBound::Finite(l) => write!(f, "{l}"),
            CarryBound::Infinite => write!(f, "infinity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarryProfile {
    pub base: u64,
    pub inputs: Vec<Rational>,
    pub bound: CarryBound,
}

/// Largest `L` such that the digits of `alphas` add without carrying in
/// every position `1..=L`.
///
/// The joint digit sum is periodic after the longest preperiod with period
/// the lcm of the individual periods, so one window decides `L = infinity`.
pub fn carry_free_prefix(alphas: &[Rational], p: u64) -> Result<CarryProfile> {
    let streams = alphas
        .iter()
        .map(|a| digit_stream(a, p))
        .collect::<Result<Vec<_>>>()?;
    let preperiod = streams.iter().map(|s| s.preperiod.len()).max().unwrap_or(0);
    let period = streams
        .iter()
        .fold(1usize, |acc, s| acc.lcm(&s.period.len()));
    let window = preperiod + period;
    let mut bound = CarryBound::Infinite;
    for e in 1..=window {
        let sum: u64 = streams.iter().map(|s| s.digit(e)).sum();
        if sum > p - 1 {
            bound = CarryBound::Finite((e - 1) as u64);
            break;
        }
    }
    Ok(CarryProfile {
        base: p,
        inputs: alphas.to_vec(),
        bound,
    })
}
