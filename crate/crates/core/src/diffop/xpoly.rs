use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;

/// Dense univariate polynomial in `x`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> XPoly<F> {
    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(1, F::one())
    }

    /// `c * x^k`
    pub fn monomial(k: usize, c: F) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Every coefficient is negligible (exactly zero over exact fields).
    pub fn is_negligible(&self) -> bool {
        self.coeffs.iter().all(Field::is_negligible)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(F::zero());
        v.extend(self.coeffs.iter().cloned());
        XPoly { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn eval(&self, at: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    /// `q(x) -> q(x + t)`
    pub fn translate(&self, t: &F) -> Self {
        let shift = XPoly::from_coeffs(vec![t.clone(), F::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(XPoly::zero(), |acc, c| &(&acc * &shift) + &XPoly::constant(c.clone()))
    }

    /// `q(x) -> q(s x)`
    pub fn rescale(&self, s: &F) -> Self {
        let mut pw = F::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * pw.clone());
            pw = pw * s.clone();
        }
        Self::from_coeffs(out)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> XPoly<G> {
        XPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field> Add for &XPoly<F> {
    type Output = XPoly<F>;
    fn add(self, rhs: &XPoly<F>) -> XPoly<F> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<F: Field> Sub for &XPoly<F> {
    type Output = XPoly<F>;
    fn sub(self, rhs: &XPoly<F>) -> XPoly<F> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<F: Field> Mul for &XPoly<F> {
    type Output = XPoly<F>;
    fn mul(self, rhs: &XPoly<F>) -> XPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        XPoly::from_coeffs(v)
    }
}

impl<F: Field> Neg for &XPoly<F> {
    type Output = XPoly<F>;
    fn neg(self) -> XPoly<F> {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for XPoly<F> {
            type Output = XPoly<F>;
            fn $m(self, rhs: XPoly<F>) -> XPoly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<F: Field> Neg for XPoly<F> {
    type Output = XPoly<F>;
    fn neg(self) -> XPoly<F> {
        -&self
    }
}

/// Prints highest power first, e.g. `x^2 - 6*x + 6`. Compound coefficients
/// are parenthesized, so output over `Rational` or polynomial `RatFn` parses
/// back with the expression grammar.
impl<F: Field> fmt::Display for XPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.to_string();
            let negative = text.starts_with('-') && !text[1..].contains([' ', '+', '-']);
            if negative {
                text.remove(0);
            }
            let compound = text.contains([' ', '+', '-']);
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (i, text.as_str()) {
                (0, _) if compound => format!("({text})"),
                (0, _) => text,
                (_, "1") => power(i),
                (_, _) if compound => format!("({text})*{}", power(i)),
                _ => format!("{text}*{}", power(i)),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

fn power(i: usize) -> String {
    if i == 1 {
        "x".to_string()
    } else {
        format!("x^{i}")
    }
}
