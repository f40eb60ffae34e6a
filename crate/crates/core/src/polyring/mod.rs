//! Exact sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] lives in a [`Context`] that fixes the number of
//! coordinates `x1..xn` and whether a formal deformation parameter `eps` is
//! adjoined. Terms are kept in canonical form (no zero coefficients), so
//! structural equality is semantic equality.
//!
//! [`UPoly`] provides univariate polynomials in an auxiliary variable with
//! coefficients in this ring.

mod parse;
mod poly;
mod upoly;

pub use parse::{parse_with, ParseError};
pub use poly::{Context, Monomial, PolyError, Polynomial};
pub use upoly::{BivariateTerm, UPoly};

pub use num_rational::BigRational as Rational;

/// Builds a rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Builds the rational `num/den`.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
