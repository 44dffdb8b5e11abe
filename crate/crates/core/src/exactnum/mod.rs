//! Exact scalars and base-p digit machinery.
//!
//! Every threshold in this crate is a rational number, and every decision
//! about digits, truncations, and carrying is made without rounding.

mod digits;
mod lucas;
mod primes;

pub use digits::{carry_free_prefix, digit, digit_stream, truncate, CarryBound, CarryProfile, DigitStream};
pub use lucas::{mul_mod, multinomial_exact, multinomial_mod_p, pow_mod};
pub use primes::{is_prime, primes_in_progression, PrimeSearch, DEFAULT_PRIME_CEILING};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p^e` as an arbitrary-precision integer.
pub fn big_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `p^e` as a `u64`, failing when it does not fit.
pub fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{e} overflows 64 bits")))
}

/// Canonical `num/den` text form; integers keep the `/1` so the format is uniform.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `a/b`, `a`, or `-a/b`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::parse(1, 1, format!("`{text}` is not a rational number"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::parse(1, 1, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Returns the value as a `u64` when it is a non-negative integer that fits.
pub fn to_u64(q: &Rational) -> Option<u64> {
    if is_integral(q) && !q.is_negative() {
        q.numer().to_u64()
    } else {
        None
    }
}

pub(crate) fn check_unit_interval(alpha: &Rational) -> Result<()> {
    if alpha.is_negative() || alpha > &Rational::one() {
        return Err(Error::OutOfUnitInterval(format_rational(alpha)));
    }
    Ok(())
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm(values: &[Rational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Multiplicative order of `p` modulo `d`, if `gcd(p, d) = 1`.
pub fn multiplicative_order(p: u64, d: &BigInt, cap: u32) -> Option<u32> {
    let d = d.to_biguint()?;
    if d.is_one() {
        return Some(1);
    }
    let p = BigUint::from(p);
    if !p.gcd(&d).is_one() {
        return None;
    }
    let base = &p % &d;
    let mut acc = base.clone();
    for e in 1..=cap {
        if acc.is_one() {
            return Some(e);
        }
        acc = (&acc * &base) % &d;
    }
    None
}
