use crate::error::{Error, Result};

pub const DEFAULT_PRIME_CEILING: u64 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Search limits for [`primes_in_progression`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeSearch {
    pub ceiling: u64,
}

impl Default for PrimeSearch {
    fn default() -> Self {
        PrimeSearch {
            ceiling: DEFAULT_PRIME_CEILING,
        }
    }
}

/// The `count` smallest primes `p` with `p = 1 (mod modulus)`, searching
/// candidates `1 + j * modulus` up to the ceiling.
pub fn primes_in_progression(modulus: u64, count: usize, search: PrimeSearch) -> Result<Vec<u64>> {
    if modulus == 0 || count == 0 {
        return Err(Error::InvalidInput(
            "modulus and count must both be positive".into(),
        ));
    }
    let mut found = Vec::with_capacity(count);
    let mut candidate = 1u64;
    while found.len() < count {
        candidate = match candidate.checked_add(modulus) {
            Some(c) if c <= search.ceiling => c,
            _ => {
                return Err(Error::PrimeSearchExhausted {
                    modulus,
                    wanted: count,
                    ceiling: search.ceiling,
                })
            }
        };
        if is_prime(candidate) {
            found.push(candidate);
        }
    }
    Ok(found)
}
