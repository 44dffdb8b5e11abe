use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::QPoly;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::text::{densify, Scanner};

impl QPoly {
    /// Parses `x^2 + y^3`, `3/4*x1*x2^2 - 2y`, `1 + x` and the like.
    ///
    /// Coefficients are integers or `a/b`, optionally followed by `*`;
    /// terms are joined by `+` or `-`. Errors carry line and column.
    pub fn parse(text: &str, num_vars: Option<usize>) -> Result<QPoly> {
        let mut scanner = Scanner::new(text);
        let mut sparse = Vec::new();
        let mut negative = scanner.eat('-');
        if !negative {
            scanner.eat('+');
        }
        loop {
            let (coefficient, factors) = term(&mut scanner)?;
            sparse.push((if negative { -coefficient } else { coefficient }, factors));
            if scanner.at_end() {
                break;
            }
            negative = if scanner.eat('+') {
                false
            } else if scanner.eat('-') {
                true
            } else {
                return Err(scanner.unexpected("`+` or `-`"));
            };
        }
        let used = sparse
            .iter()
            .flat_map(|(_, f)| f.iter())
            .map(|&(i, _)| i + 1)
            .max()
            .unwrap_or(1);
        let m = match num_vars {
            Some(m) if m < used => {
                return Err(Error::InvalidInput(format!(
                    "polynomial uses {used} variables but only {m} were declared"
                )))
            }
            Some(m) => m,
            None => used,
        };
        QPoly::from_terms(m, sparse.into_iter().map(|(c, f)| (densify(&f, m), c)))
    }
}

fn term(scanner: &mut Scanner) -> Result<(Rational, Vec<(usize, u32)>)> {
    scanner.skip_ws();
    match scanner.peek() {
        Some(c) if c.is_ascii_digit() => {
            let num = scanner.uint()?;
            let den = if scanner.eat('/') {
                let d = scanner.uint()?;
                if d.is_zero() {
                    return Err(scanner.error("zero denominator"));
                }
                d
            } else {
                BigInt::from(1)
            };
            let coefficient = Rational::new(num, den);
            let explicit = scanner.eat('*');
            scanner.skip_ws();
            let starts_monomial = scanner.peek().is_some_and(|c| c.is_ascii_alphabetic());
            if explicit || starts_monomial {
                Ok((coefficient, scanner.monomial()?))
            } else {
                Ok((coefficient, Vec::new()))
            }
        }
        Some(c) if c.is_ascii_alphabetic() => Ok((Rational::from_integer(1.into()), scanner.monomial()?)),
        _ => Err(scanner.unexpected("a term")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    #[test]
    fn parses_common_forms() {
        let f = QPoly::parse("x^2 + y^3", None).unwrap();
        assert_eq!(f.support(), vec![vec![0, 3], vec![2, 0]]);

        let f = QPoly::parse("-3/4*x1*x2^2 + 2y - 5", None).unwrap();
        let terms: Vec<_> = f.terms().map(|(k, c)| (k.to_vec(), c.clone())).collect();
        assert_eq!(
            terms,
            vec![
                (vec![0, 0], rat_int(-5)),
                (vec![0, 1], rat_int(2)),
                (vec![1, 2], rat(-3, 4)),
            ]
        );

        let f = QPoly::parse("2x + 3 x - 5*x", None).unwrap();
        assert!(f.is_zero());

        let f = QPoly::parse("x", Some(3)).unwrap();
        assert_eq!(f.num_vars(), 3);
    }

    #[test]
    fn errors_report_position() {
        match QPoly::parse("x^2 +\n y^3 ^ 2", None) {
            Err(Error::Parse { location, .. }) => assert_eq!((location.line, location.column), (2, 6)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(QPoly::parse("", None), Err(Error::Parse { .. })));
        assert!(matches!(QPoly::parse("x +", None), Err(Error::Parse { .. })));
        assert!(matches!(QPoly::parse("1/0 x", None), Err(Error::Parse { .. })));
        assert!(matches!(QPoly::parse("x, y", None), Err(Error::Parse { .. })));
    }
}
