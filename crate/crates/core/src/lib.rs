//! Exact computer algebra for the generalized Bochner-Krall problem:
//! exactly solvable differential operators, their eigenpolynomial
//! sequences, the finite recurrences those sequences satisfy, and the
//! shift-operator side of the bispectral correspondence.
//!
//! Numerical kernels are generic over [`field::Field`]; the aliases below
//! pick the usual scalars.

pub mod catalog;
pub mod darboux;
pub mod diffop;
pub mod exactnum;
pub mod field;
pub mod linalg;
pub mod opspec;
pub mod parser;
pub mod recurrence;
pub mod shiftop;
pub mod symbolic;

pub use diffop::{DiffOp, DiffOpError, PolyDiffOp, XPoly};
pub use exactnum::{MPoly, RatFn, Rational};
pub use field::{ExactField, Field};
pub use recurrence::{EigenSeq, RecTable};

/// Polynomial in `x` with rational coefficients.
pub type QPoly = XPoly<Rational>;
/// Polynomial in `x` whose coefficients are rational functions of the parameters.
pub type SymPoly = XPoly<RatFn>;
/// Polynomial in `x` with `f64` coefficients.
pub type FPoly = XPoly<f64>;
pub type QDiffOp = DiffOp<Rational>;
pub type SymDiffOp = DiffOp<RatFn>;
pub type FDiffOp = DiffOp<f64>;
