use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactError, MPoly};

/// Arbitrary-precision rational; always kept reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Formats as `p` or `p/q`, the literal form accepted by the parser.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, `p/q` or `-p/q` (decimal integers).
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadLiteral(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    if den.is_negative() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `(m)_i = m (m-1) ... (m-i+1)` at an integer point.
pub fn falling_factorial(m: i64, i: usize) -> Rational {
    let mut acc = BigInt::one();
    for t in 0..i as i64 {
        acc *= BigInt::from(m - t);
    }
    Rational::from_integer(acc)
}

/// `(n + offset)_i` as a polynomial in `n`.
pub fn falling_factorial_poly(offset: i64, i: usize) -> MPoly {
    let n = MPoly::var_n();
    let mut acc = MPoly::one();
    for t in 0..i as i64 {
        acc = &acc * &(&n + &MPoly::from_i64(offset - t));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_round_trip() {
        for s in ["0", "7", "-7", "3/2", "-3/2"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(5, 3), Rational::from_integer(60.into()));
        assert_eq!(falling_factorial(2, 3), Rational::zero());
        assert_eq!(falling_factorial(9, 0), Rational::one());
        let p = falling_factorial_poly(0, 3);
        assert_eq!(p.eval_n(5).unwrap(), falling_factorial(5, 3));
    }
}
