use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::{content_in, gcd};
use super::{Context, ExactError, MPoly, Rational, VAR_N};

#[derive(Clone, Debug)]
struct Factor {
    poly: MPoly,
    exp: u32,
    /// Known irreducible over Q, so cancellation is a plain trial division.
    irreducible: bool,
}

/// Reduced quotient of two polynomials.
///
/// The denominator is held as a product of primitive integral factors with
/// positive leading coefficient; every rational constant lives in the
/// numerator. After each operation the numerator shares no nonconstant
/// factor with the denominator.
#[derive(Clone)]
pub struct RatFn {
    num: MPoly,
    den: Vec<Factor>,
}

/// Builds `num / den` in reduced, normalized form.
pub fn ratfn_reduce(num: &MPoly, den: &MPoly) -> Result<RatFn, ExactError> {
    if den.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    let (c, factors) = split_poly(den);
    let mut r = RatFn {
        num: num.scale(&c.recip()),
        den: merge_factors(Vec::new(), factors, false),
    };
    r.cancel();
    Ok(r)
}

fn split_poly(p: &MPoly) -> (Rational, Vec<Factor>) {
    let (c, prim) = p.primitive();
    let mut out = Vec::new();
    split_primitive(&prim, &mut out);
    (c, out)
}

fn split_primitive(p: &MPoly, out: &mut Vec<Factor>) {
    if p.is_constant() {
        return;
    }
    let used = p.vars_used();
    // A primitive polynomial of degree one in some variable whose two
    // coefficients are coprime is irreducible.
    for v in &used {
        if p.degree_in(v) == Some(1) {
            let cont = content_in(p, v);
            if cont.is_one() {
                out.push(Factor {
                    poly: p.clone(),
                    exp: 1,
                    irreducible: true,
                });
                return;
            }
        }
    }
    for v in &used {
        let cont = content_in(p, v);
        if !cont.is_constant() {
            let rest = p.exact_div(&cont).expect("content divides");
            split_primitive(&cont.primitive().1, out);
            split_primitive(&rest.primitive().1, out);
            return;
        }
    }
    out.push(Factor {
        poly: p.clone(),
        exp: 1,
        irreducible: false,
    });
}

fn merge_factors(mut into: Vec<Factor>, from: Vec<Factor>, take_max: bool) -> Vec<Factor> {
    for f in from {
        match into.iter_mut().find(|g| g.poly == f.poly) {
            Some(g) => {
                g.exp = if take_max { g.exp.max(f.exp) } else { g.exp + f.exp };
                g.irreducible |= f.irreducible;
            }
            None => into.push(f),
        }
    }
    into
}

fn product(factors: &[Factor]) -> MPoly {
    let mut acc = MPoly::one();
    for f in factors {
        acc = &acc * &f.poly.pow(f.exp);
    }
    acc
}

fn exponent_of(factors: &[Factor], poly: &MPoly) -> u32 {
    factors.iter().find(|f| &f.poly == poly).map_or(0, |f| f.exp)
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn {
            num: MPoly::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFn { num: p, den: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_poly(MPoly::from_i64(v))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MPoly::var(name))
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> MPoly {
        product(&self.den)
    }

    /// Denominator factors with multiplicities.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (&MPoly, u32)> {
        self.den.iter().map(|f| (&f.poly, f.exp))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains_var(&self, var: &str) -> bool {
        self.num.contains_var(var) || self.den.iter().any(|f| f.poly.contains_var(var))
    }

    pub fn vars_used(&self) -> Vec<String> {
        let mut vars = self.num.vars_used();
        for f in &self.den {
            vars.extend(f.poly.vars_used());
        }
        Context::new(vars).vars().to_vec()
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut i = 0;
        while i < self.den.len() {
            if self.den[i].irreducible {
                while self.den[i].exp > 0 {
                    match self.num.exact_div(&self.den[i].poly) {
                        Some(q) => {
                            self.num = q;
                            self.den[i].exp -= 1;
                        }
                        None => break,
                    }
                }
                i += 1;
                continue;
            }
            let g = gcd(&self.num, &self.den[i].poly);
            if g.is_constant() {
                i += 1;
                continue;
            }
            self.num = self.num.exact_div(&g).expect("gcd divides numerator");
            let rest = self.den[i].poly.exact_div(&g).expect("gcd divides factor");
            self.den[i].exp -= 1;
            let mut pieces = Vec::new();
            split_primitive(&rest.primitive().1, &mut pieces);
            let den = std::mem::take(&mut self.den);
            self.den = merge_factors(den, pieces, false);
            // restart: the new pieces may cancel further
            self.den.retain(|f| f.exp > 0);
            i = 0;
        }
        self.den.retain(|f| f.exp > 0);
    }

    fn add_impl(&self, other: &RatFn, negate: bool) -> RatFn {
        let rhs_num = if negate { -&other.num } else { other.num.clone() };
        if self.den.is_empty() && other.den.is_empty() {
            return RatFn::from_poly(&self.num + &rhs_num);
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RatFn {
                num: rhs_num,
                den: other.den.clone(),
            };
        }
        let lcm = merge_factors(self.den.clone(), other.den.clone(), true);
        let cofactor = |own: &[Factor]| {
            let mut acc = MPoly::one();
            for f in &lcm {
                let e = f.exp - exponent_of(own, &f.poly);
                if e > 0 {
                    acc = &acc * &f.poly.pow(e);
                }
            }
            acc
        };
        let num = &(&self.num * &cofactor(&self.den)) + &(&rhs_num * &cofactor(&other.den));
        let mut r = RatFn { num, den: lcm };
        r.cancel();
        r
    }

    fn mul_impl(&self, other: &RatFn) -> RatFn {
        if self.is_zero() || other.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_empty() && other.den.is_empty() {
            return RatFn::from_poly(&self.num * &other.num);
        }
        // cross-cancel before multiplying out
        let mut a = RatFn {
            num: self.num.clone(),
            den: other.den.clone(),
        };
        a.cancel();
        let mut b = RatFn {
            num: other.num.clone(),
            den: self.den.clone(),
        };
        b.cancel();
        RatFn {
            num: &a.num * &b.num,
            den: merge_factors(a.den, b.den, false),
        }
    }

    pub fn recip(&self) -> Result<RatFn, ExactError> {
        if self.num.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let (c, factors) = split_poly(&self.num);
        Ok(RatFn {
            num: product(&self.den).scale(&c.recip()),
            den: merge_factors(Vec::new(), factors, false),
        })
    }

    pub fn checked_div(&self, other: &RatFn) -> Result<RatFn, ExactError> {
        Ok(self.mul_impl(&other.recip()?))
    }

    pub fn scale(&self, c: &Rational) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFn {
        self.mul_impl(&RatFn::from_poly(p.clone()))
    }

    pub fn pow(&self, e: u32) -> RatFn {
        let mut acc = RatFn::one();
        for _ in 0..e {
            acc = acc.mul_impl(self);
        }
        acc
    }

    /// Substitutes `var -> var + k`.
    pub fn shift(&self, var: &str, k: i64) -> RatFn {
        if k == 0 {
            return self.clone();
        }
        RatFn {
            num: self.num.shift(var, k),
            den: self
                .den
                .iter()
                .map(|f| Factor {
                    poly: f.poly.shift(var, k),
                    exp: f.exp,
                    irreducible: f.irreducible,
                })
                .collect(),
        }
    }

    /// Substitutes `n -> n + k`.
    pub fn shift_n(&self, k: i64) -> RatFn {
        self.shift(VAR_N, k)
    }

    /// Substitutes a polynomial for a variable.
    pub fn substitute(&self, var: &str, value: &MPoly) -> Result<RatFn, ExactError> {
        if !self.contains_var(var) {
            return Ok(self.clone());
        }
        let num = self.num.substitute(var, value);
        let mut den = MPoly::one();
        for f in &self.den {
            den = &den * &f.poly.substitute(var, value).pow(f.exp);
        }
        if den.is_zero() {
            return Err(ExactError::Pole);
        }
        ratfn_reduce(&num, &den)
    }

    pub fn specialize(&self, var: &str, value: &Rational) -> Result<RatFn, ExactError> {
        self.substitute(var, &MPoly::constant(value.clone()))
    }

    pub fn evaluate(&self, bindings: &BTreeMap<String, Rational>) -> Result<RatFn, ExactError> {
        let mut r = self.clone();
        for (k, v) in bindings {
            r = r.specialize(k, v)?;
        }
        Ok(r)
    }

    /// Value at an integer `n`; other free variables are an error.
    pub fn eval_n(&self, n: i64) -> Result<Rational, ExactError> {
        let r = self.specialize(VAR_N, &Rational::from_integer(n.into()))?;
        match r.constant_value() {
            Some(c) => Ok(c),
            None => Err(ExactError::Unbound(r.vars_used().join(","))),
        }
    }

    fn same_denominator(&self, other: &RatFn) -> bool {
        self.den.len() == other.den.len()
            && self
                .den
                .iter()
                .all(|f| exponent_of(&other.den, &f.poly) == f.exp)
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        if self.same_denominator(other) {
            return self.num == other.num;
        }
        &self.num * &product(&other.den) == &other.num * &product(&self.den)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let mut parts: Vec<String> = self
            .den
            .iter()
            .map(|fac| {
                if fac.exp == 1 {
                    format!("({})", fac.poly)
                } else {
                    format!("({})^{}", fac.poly, fac.exp)
                }
            })
            .collect();
        parts.sort();
        write!(f, "({})/({})", self.num, parts.join("*"))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, rhs: &'a RatFn) -> RatFn {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &'a RatFn) -> RatFn {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &'a RatFn) -> RatFn {
        self.mul_impl(rhs)
    }
}

impl<'a> Div<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    /// Panics on division by the zero function; use [`RatFn::checked_div`] otherwise.
    fn div(self, rhs: &'a RatFn) -> RatFn {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFn> for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl Zero for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFn {
    fn one() -> Self {
        RatFn::one()
    }
}

impl From<MPoly> for RatFn {
    fn from(p: MPoly) -> Self {
        RatFn::from_poly(p)
    }
}

impl From<Rational> for RatFn {
    fn from(c: Rational) -> Self {
        RatFn::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::falling_factorial_poly;

    fn n() -> MPoly {
        MPoly::var_n()
    }
    fn c(v: i64) -> MPoly {
        MPoly::from_i64(v)
    }
    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn common_factor_cancels() {
        let r = ratfn_reduce(&(&n().pow(2) - &c(1)), &(&n() - &c(1))).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numerator(), &(&n() + &c(1)));
    }

    #[test]
    fn content_moves_to_numerator() {
        let r = ratfn_reduce(&(&c(2) * &n()), &c(4)).unwrap();
        assert_eq!(r.to_string(), "1/2*n");
        assert!(matches!(ratfn_reduce(&n(), &MPoly::zero()), Err(ExactError::ZeroDenominator)));
    }

    #[test]
    fn specialized_reduction_matches_univariate_gcd() {
        // (n)_3 / (6n + 3 a11 - 12) at a11 = 4 is (n-1)(n-2)/6
        let a11 = MPoly::var("a11");
        let den = &(&(&c(6) * &n()) + &(&c(3) * &a11)) - &c(12);
        let r = ratfn_reduce(&falling_factorial_poly(0, 3), &den).unwrap();
        assert!(!r.is_polynomial());
        let s = r.specialize("a11", &q(4, 1)).unwrap();
        let expect = (&(&n() - &c(1)) * &(&n() - &c(2))).scale(&q(1, 6));
        assert_eq!(s.as_poly(), Some(&expect));
    }

    #[test]
    fn sums_cancel_through_common_denominators() {
        let den = &n() - &c(1);
        let a = ratfn_reduce(&n(), &den).unwrap();
        let b = ratfn_reduce(&c(1), &den).unwrap();
        assert_eq!(&a - &b, RatFn::one());
        let x = ratfn_reduce(&c(1), &n()).unwrap();
        let y = ratfn_reduce(&c(1), &(&n() + &c(1))).unwrap();
        let s = &x - &y;
        assert_eq!(s, ratfn_reduce(&c(1), &(&n() * &(&n() + &c(1)))).unwrap());
    }

    #[test]
    fn composite_denominator_factor_cancels_by_gcd() {
        let a = MPoly::var("a");
        // n^2 - a^2 is neither split nor linear in any variable
        let den = &n().pow(2) - &a.pow(2);
        let r = ratfn_reduce(&(&n() - &a), &den).unwrap();
        assert_eq!(r, ratfn_reduce(&c(1), &(&n() + &a)).unwrap());
        assert!(r.numerator().is_constant());
    }

    #[test]
    fn shift_and_eval() {
        let r = ratfn_reduce(&n(), &(&c(2) * &n() + c(1))).unwrap();
        let s = r.shift_n(3).shift_n(-3);
        assert_eq!(s, r);
        assert_eq!(r.eval_n(2).unwrap(), q(2, 5));
        let pole = ratfn_reduce(&c(1), &n()).unwrap();
        assert_eq!(pole.eval_n(0), Err(ExactError::Pole));
    }

    #[test]
    fn reciprocal_and_division() {
        let r = ratfn_reduce(&(&n() + &c(2)), &(&n() - &c(3))).unwrap();
        let inv = r.recip().unwrap();
        assert_eq!(&r * &inv, RatFn::one());
        assert!(RatFn::zero().recip().is_err());
    }
}
