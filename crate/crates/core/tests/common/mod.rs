//! Independent oracles shared by the integration and acceptance tests.
//!
//! Nothing here calls the simplex solver, the truncated power routines or
//! Lucas' theorem; each oracle recomputes its answer from scratch.

#![allow(dead_code)]

use std::collections::HashMap;

use fpt_core::exactnum::Rational;
use fpt_core::polygeo::MonomialSet;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Solves the square system `m x = rhs`, or `None` if it is singular.
fn solve(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[col][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * y;
                }
                let delta = &factor * &rhs[col];
                rhs[r] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

fn combinations(k: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, total: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..total {
            cur.push(i);
            go(i + 1, k, total, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, total, &mut Vec::new(), &mut out);
    out
}

/// Maximum of `c . x` over `{x >= 0, A x <= b}` by enumerating every basic
/// solution. Assumes the region is bounded; `None` when it is empty.
pub fn vertex_lp_max(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Option<Rational> {
    let n = c.len();
    let mut rows: Vec<(Vec<Rational>, Rational)> = a.iter().cloned().zip(b.iter().cloned()).collect();
    for i in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[i] = -Rational::one();
        rows.push((row, Rational::zero()));
    }
    let mut best: Option<Rational> = None;
    for pick in combinations(n, rows.len()) {
        let m = pick.iter().map(|&i| rows[i].0.clone()).collect();
        let rhs = pick.iter().map(|&i| rows[i].1.clone()).collect();
        let Some(x) = solve(m, rhs) else { continue };
        let feasible = rows.iter().all(|(row, bound)| {
            let lhs: Rational = row.iter().zip(&x).map(|(r, xi)| r * xi).sum();
            &lhs <= bound
        });
        if feasible {
            let value: Rational = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
            if best.as_ref().is_none_or(|b| &value > b) {
                best = Some(value);
            }
        }
    }
    best
}

/// `max |s|` over the splitting polytope, by vertex enumeration.
pub fn alpha_oracle(ms: &MonomialSet) -> Rational {
    let n = ms.len();
    let a: Vec<Vec<Rational>> = (0..ms.num_vars())
        .map(|r| (0..n).map(|i| q(ms.monomial(i)[r] as i64)).collect())
        .collect();
    vertex_lp_max(&vec![q(1); n], &a, &vec![q(1); ms.num_vars()]).expect("0 is feasible")
}

/// A random valid monomial set with at most `max_vars` variables and
/// `max_terms` monomials, exponents at most `max_exp`.
pub fn random_monomial_set(rng: &mut ChaCha8Rng, max_vars: usize, max_terms: usize, max_exp: u32) -> MonomialSet {
    loop {
        let vars = rng.gen_range(1..=max_vars);
        let terms = rng.gen_range(1..=max_terms);
        let monomials: Vec<Vec<u32>> = (0..terms)
            .map(|_| (0..vars).map(|_| rng.gen_range(0..=max_exp)).collect())
            .collect();
        if let Ok(ms) = MonomialSet::new(vars, monomials) {
            return ms;
        }
    }
}

/// Pascal's triangle modulo `p` up to row `n`.
pub struct BinomialTable {
    p: u64,
    rows: Vec<Vec<u64>>,
}

impl BinomialTable {
    pub fn new(p: u64, n: usize) -> Self {
        let mut rows: Vec<Vec<u64>> = vec![vec![1 % p]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![1 % p; i + 1];
            for k in 1..i {
                row[k] = (prev[k - 1] + prev[k]) % p;
            }
            rows.push(row);
        }
        BinomialTable { p, rows }
    }

    pub fn binom(&self, n: usize, k: usize) -> u64 {
        self.rows[n][k]
    }

    /// Multinomial coefficient as a product of binomials.
    pub fn multinomial(&self, parts: &[u64]) -> u64 {
        let mut total = 0usize;
        let mut acc = 1 % self.p;
        for &k in parts {
            total += k as usize;
            acc = acc * self.binom(total, k as usize) % self.p;
        }
        acc
    }
}

/// Every composition of `total` into `parts` non-negative entries.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let (mut acc, mut b) = (1 % p, b % p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Terms of `f^n` with every exponent below `q`, by the multinomial theorem.
/// `f = sum coeffs[i] x^monomials[i]` over `F_p`.
pub fn power_below(
    monomials: &[Vec<u32>],
    coeffs: &[u64],
    n: u64,
    p: u64,
    q: u64,
    table: &BinomialTable,
) -> HashMap<Vec<u64>, u64> {
    let vars = monomials[0].len();
    let mut out: HashMap<Vec<u64>, u64> = HashMap::new();
    for k in compositions(n, monomials.len()) {
        let mut exps = vec![0u64; vars];
        for (ki, a) in k.iter().zip(monomials) {
            for (x, &ai) in exps.iter_mut().zip(a) {
                *x += ki * ai as u64;
            }
        }
        if exps.iter().any(|&x| x >= q) {
            continue;
        }
        let mut c = table.multinomial(&k);
        for (ki, &u) in k.iter().zip(coeffs) {
            c = c * pow_mod(u, *ki, p) % p;
        }
        let slot = out.entry(exps).or_insert(0);
        *slot = (*slot + c) % p;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `nu_f(e)` by binary search on `n`, expanding `f^n` from scratch each time.
pub fn nu_oracle(monomials: &[Vec<u32>], coeffs: &[u64], p: u64, e: u32) -> u64 {
    let q = p.pow(e);
    let table = BinomialTable::new(p, q as usize);
    let survives = |n: u64| !power_below(monomials, coeffs, n, p, q, &table).is_empty();
    // f^0 = 1 survives and f^q is a q-th power of something in m
    let (mut lo, mut hi) = (0u64, q);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if survives(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `(sum parts)! / prod(parts!) mod p` from exact factorials.
pub struct FactorialTable(Vec<BigUint>);

impl FactorialTable {
    pub fn new(n: usize) -> Self {
        let mut f = vec![BigUint::one()];
        for i in 1..=n {
            let next = &f[i - 1] * BigUint::from(i);
            f.push(next);
        }
        FactorialTable(f)
    }

    pub fn multinomial(&self, parts: &[u64]) -> BigUint {
        let total: u64 = parts.iter().sum();
        let den = parts.iter().fold(BigUint::one(), |acc, &k| acc * &self.0[k as usize]);
        &self.0[total as usize] / den
    }

    pub fn multinomial_mod(&self, parts: &[u64], p: u64) -> u64 {
        (self.multinomial(parts) % BigUint::from(p)).to_u64().unwrap()
    }
}
