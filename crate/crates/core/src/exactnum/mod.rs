//! Exact arithmetic kernel.
//!
//! Everything downstream (eigenpolynomials, recurrence tables, shift
//! operators, the symbolic cascade) is built on three value types:
//!
//! * [`Rational`]: arbitrary-precision rationals,
//! * [`MPoly`]: sparse multivariate polynomials over `Rational`,
//! * [`RatFn`]: reduced quotients of `MPoly` values.
//!
//! All values are immutable once built and can be shared across threads.

mod gcd;
mod mpoly;
mod ratfn;
mod rational;

pub use gcd::{gcd, univariate_gcd};
pub use mpoly::{Context, MPoly, Monomial, VAR_N};
pub use ratfn::{ratfn_reduce, RatFn};
pub use rational::{falling_factorial, falling_factorial_poly, format_rational, parse_rational, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not a polynomial")]
    NotPolynomial,
    #[error("variable `{0}` is still free after evaluation")]
    Unbound(String),
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("malformed rational literal `{0}`")]
    BadLiteral(String),
}
