use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::text::{densify, format_monomial, Scanner};

/// `n` distinct nonconstant monomials in `m` variables.
///
/// Column `i` of the exponent matrix is the exponent vector of monomial `i`;
/// the column order is the order given at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialSet {
    num_vars: usize,
    monomials: Vec<Vec<u32>>,
}

impl MonomialSet {
    pub fn new(num_vars: usize, monomials: Vec<Vec<u32>>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidMonomialSet("need at least one variable".into()));
        }
        if monomials.is_empty() {
            return Err(Error::InvalidMonomialSet("need at least one monomial".into()));
        }
        let mut seen = BTreeSet::new();
        for (i, a) in monomials.iter().enumerate() {
            if a.len() != num_vars {
                return Err(Error::InvalidMonomialSet(format!(
                    "monomial {} has {} exponents, expected {num_vars}",
                    i + 1,
                    a.len()
                )));
            }
            if a.iter().all(|&e| e == 0) {
                return Err(Error::InvalidMonomialSet(format!(
                    "monomial {} is constant",
                    i + 1
                )));
            }
            if !seen.insert(a.clone()) {
                return Err(Error::InvalidMonomialSet(format!(
                    "monomial {} repeats {}",
                    i + 1,
                    format_monomial(a)
                )));
            }
        }
        Ok(MonomialSet {
            num_vars,
            monomials,
        })
    }

    /// Parses `x^2, y^3` or `x1^2*x2 + x2^5`.
    ///
    /// The variable count is the largest index used unless `num_vars` asks
    /// for more.
    pub fn parse(text: &str, num_vars: Option<usize>) -> Result<Self> {
        let mut scanner = Scanner::new(text);
        let mut sparse = Vec::new();
        loop {
            sparse.push(scanner.monomial()?);
            if scanner.at_end() {
                break;
            }
            if !(scanner.eat(',') || scanner.eat('+')) {
                return Err(scanner.unexpected("`,` or `+`"));
            }
        }
        let used = sparse
            .iter()
            .flatten()
            .map(|&(i, _)| i + 1)
            .max()
            .unwrap_or(1);
        let m = match num_vars {
            Some(m) if m < used => {
                return Err(Error::InvalidMonomialSet(format!(
                    "input uses {used} variables but only {m} were declared"
                )))
            }
            Some(m) => m,
            None => used,
        };
        MonomialSet::new(m, sparse.iter().map(|f| densify(f, m)).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &[u32] {
        &self.monomials[i]
    }

    /// Position of `exponents` among the columns.
    pub fn index_of(&self, exponents: &[u32]) -> Option<usize> {
        self.monomials.iter().position(|a| a == exponents)
    }

    /// The `m x n` exponent matrix, row-major.
    pub fn exponent_matrix(&self) -> Vec<Vec<u64>> {
        (0..self.num_vars)
            .map(|r| self.monomials.iter().map(|a| a[r] as u64).collect())
            .collect()
    }

    /// The sub-collection at `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        MonomialSet::new(
            self.num_vars,
            indices.iter().map(|&i| self.monomials[i].clone()).collect(),
        )
    }

    /// `E k`, the exponent of the monomial `prod x^(k_i a_i)`.
    pub fn combine(&self, k: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.num_vars];
        for (a, &ki) in self.monomials.iter().zip(k) {
            for (o, &e) in out.iter_mut().zip(a) {
                *o += ki * e as u64;
            }
        }
        out
    }
}

impl fmt::Display for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.monomials.iter().map(|a| format_monomial(a)).collect();
        write!(f, "{}", parts.join(", "))
    }
}
