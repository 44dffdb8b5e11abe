//! Shared lexical helpers for the monomial-list and polynomial grammars.

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub const MAX_VARIABLES: u32 = 64;

pub(crate) struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Scanner {
    pub(crate) fn new(text: &str) -> Self {
        Scanner {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    /// Consumes `c` (after whitespace) if it is next.
    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, message)
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(c) => self.error(format!("expected {wanted}, found `{c}`")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub(crate) fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            return Err(self.unexpected("a number"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_uint(&mut self, what: &str) -> Result<u32> {
        let (line, column) = (self.line, self.column);
        let n = self.uint()?;
        u32::try_from(n).map_err(|_| Error::parse(line, column, format!("{what} is too large")))
    }

    /// A variable: `x`, `y`, `z`, `w` or `x<k>` with `k >= 1`; returns a 0-based index.
    pub(crate) fn variable(&mut self) -> Result<usize> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let name = match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
                c
            }
            _ => return Err(self.unexpected("a variable")),
        };
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            if name != 'x' {
                return Err(Error::parse(line, column, format!("unknown variable `{name}`; indexed variables are x1, x2, ...")));
            }
            let k = self.small_uint("variable index")?;
            if k == 0 || k > MAX_VARIABLES {
                return Err(Error::parse(line, column, format!("variables are numbered x1 through x{MAX_VARIABLES}")));
            }
            return Ok(k as usize - 1);
        }
        match name {
            'x' => Ok(0),
            'y' => Ok(1),
            'z' => Ok(2),
            'w' => Ok(3),
            other => Err(Error::parse(line, column, format!("unknown variable `{other}`"))),
        }
    }

    /// `var ('^' n)? ('*' var ('^' n)?)*`, as sparse `(index, exponent)` factors.
    pub(crate) fn monomial(&mut self) -> Result<Vec<(usize, u32)>> {
        let mut factors = Vec::new();
        loop {
            let var = self.variable()?;
            let exp = if self.eat('^') {
                self.small_uint("exponent")?
            } else {
                1
            };
            factors.push((var, exp));
            if !self.eat('*') {
                return Ok(factors);
            }
        }
    }
}

/// Builds a dense exponent vector of length `num_vars` from sparse factors.
pub(crate) fn densify(factors: &[(usize, u32)], num_vars: usize) -> Vec<u32> {
    let mut v = vec![0u32; num_vars];
    for &(i, e) in factors {
        v[i] += e;
    }
    v
}

/// Canonical `x1^2*x2^3` rendering; the constant monomial renders as `1`.
pub fn format_monomial(exponents: &[u32]) -> String {
    let parts: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
