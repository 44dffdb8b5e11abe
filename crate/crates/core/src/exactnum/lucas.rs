use num_bigint::BigUint;
use num_traits::One;

use super::is_prime;
use crate::error::{Error, Result};

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `(sum parts)! / prod(parts!) mod p` via Lucas' theorem.
///
/// The value factors over base-`p` digit positions; it is zero exactly when
/// the parts carry in some position.
pub fn multinomial_mod_p(parts: &[u64], p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut factorial = vec![1u64; p as usize];
    for i in 1..p as usize {
        factorial[i] = mul_mod(factorial[i - 1], i as u64, p);
    }
    let mut rest = parts.to_vec();
    let mut acc = 1u64 % p;
    while rest.iter().any(|&k| k > 0) {
        let mut digit_sum = 0u64;
        let mut denominator = 1u64;
        for k in rest.iter_mut() {
            let d = *k % p;
            *k /= p;
            digit_sum += d;
            denominator = mul_mod(denominator, factorial[d as usize], p);
        }
        if digit_sum >= p {
            return Ok(0);
        }
        let inverse = pow_mod(denominator, p - 2, p);
        acc = mul_mod(acc, mul_mod(factorial[digit_sum as usize], inverse, p), p);
    }
    Ok(acc)
}

/// Exact multinomial coefficient `(sum parts)! / prod(parts!)`.
pub fn multinomial_exact(parts: &[u64]) -> BigUint {
    // product of binomials C(k_1 + ... + k_i, k_i), each computed incrementally
    let mut acc = BigUint::one();
    let mut total = 0u64;
    for &k in parts {
        for j in 1..=k {
            total += 1;
            acc = acc * BigUint::from(total) / BigUint::from(j);
        }
    }
    acc
}
