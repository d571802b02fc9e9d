//! Scalar abstraction shared by the generic parts of the crate.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{RatFn, Rational};

/// A field of coefficients.
///
/// Exact fields ([`Rational`], [`RatFn`]) compare with `==`; floating point
/// fields override [`Field::is_negligible`] so the generic solvers can still
/// decide whether a pivot or a residual vanishes.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(v: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// True when results over this field are exact.
    fn is_exact() -> bool {
        true
    }
}

/// Fields that embed into rational functions of `n` and the parameters.
pub trait ExactField: Field {
    fn to_ratfn(&self) -> RatFn;
}

impl Field for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl ExactField for Rational {
    fn to_ratfn(&self) -> RatFn {
        RatFn::constant(self.clone())
    }
}

impl Field for RatFn {
    fn from_i64(v: i64) -> Self {
        RatFn::from_i64(v)
    }

    fn from_rational(q: &Rational) -> Self {
        RatFn::constant(q.clone())
    }
}

impl ExactField for RatFn {
    fn to_ratfn(&self) -> RatFn {
        self.clone()
    }
}

macro_rules! float_field {
    ($t:ty, $tol:expr) => {
        impl Field for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn from_rational(q: &Rational) -> Self {
                let v = q.to_f64().unwrap_or_else(|| {
                    if q.is_negative() {
                        f64::NEG_INFINITY
                    } else {
                        f64::INFINITY
                    }
                });
                v as $t
            }

            fn is_negligible(&self) -> bool {
                self.abs() <= $tol
            }

            fn is_exact() -> bool {
                false
            }
        }
    };
}

float_field!(f64, 1e-9);
float_field!(f32, 1e-4);

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_of_halves<F: Field>(k: i64) -> F {
        let half = F::from_rational(&Rational::new(1.into(), 2.into()));
        (0..k).fold(F::zero(), |acc, _| acc + half.clone())
    }

    #[test]
    fn same_code_runs_on_every_field() {
        assert_eq!(sum_of_halves::<Rational>(6), Rational::from_i64(3));
        assert!((sum_of_halves::<f64>(6) - 3.0).is_negligible());
        assert!((sum_of_halves::<f32>(6) - 3.0).is_negligible());
        assert_eq!(sum_of_halves::<RatFn>(4), RatFn::from_i64(2));
    }

    #[test]
    fn float_tolerance_is_only_used_by_floats() {
        assert!(1e-12f64.is_negligible());
        assert!(!Rational::new(1.into(), 1_000_000_000_000i64.into()).is_negligible());
        assert!(!f64::is_exact() && Rational::is_exact());
    }
}
