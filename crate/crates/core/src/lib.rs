//! Exact F-pure thresholds of polynomials in positive characteristic and
//! log canonical thresholds of monomial ideals.
//!
//! Everything is computed in exact rational arithmetic: the splitting
//! polytope of a monomial set is solved by a rational simplex method, base-`p`
//! digit streams decide when the main threshold theorem applies, and
//! brute-force Frobenius-power computations over `F_p` bracket or certify
//! the answer for concrete polynomials.

pub mod charp;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod polygeo;
pub mod ratlp;
pub mod text;
pub mod thresholds;

pub use error::{Error, Result};
pub use exactnum::Rational;
