//! Differential operators in `x` with polynomial coefficients.
//!
//! [`DiffOp`] is the exactly solvable shape `sum_{i=1..k} a_i(x) d^i` with no
//! zeroth-order term; it knows its eigenvalue polynomial and solves for
//! monic eigenpolynomials by back-substitution on the triangular monomial
//! action. [`PolyDiffOp`] is the unrestricted shape (with `a_0`), used for
//! composition and commutators.

mod general;
mod xpoly;

pub use general::PolyDiffOp;
pub use xpoly::XPoly;

use thiserror::Error;

use crate::exactnum::{falling_factorial, falling_factorial_poly, MPoly, RatFn};
use crate::field::{ExactField, Field};
use crate::recurrence::EigenSeq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffOpError {
    #[error("operator has no coefficients")]
    Empty,
    #[error("top coefficient a_{0} is zero")]
    ZeroTopCoefficient(usize),
    #[error("not exactly solvable: {0}")]
    NotExactlySolvable(String),
    #[error("resonance: lambda({m}) = lambda({n})")]
    Resonance { m: usize, n: usize },
    #[error("eigen-equation self-check failed at n = {0}")]
    SelfCheck(usize),
}

/// `L = sum_{i=1..k} a_i(x) d^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp<F> {
    coeffs: Vec<XPoly<F>>,
    diagnostic: Option<String>,
}

impl<F: Field> DiffOp<F> {
    /// `coeffs[i - 1]` is `a_i`. Operators outside the exactly solvable
    /// class are still built; see [`DiffOp::is_exactly_solvable`].
    pub fn new(coeffs: Vec<XPoly<F>>) -> Result<Self, DiffOpError> {
        match coeffs.last() {
            None => return Err(DiffOpError::Empty),
            Some(top) if top.is_zero() => return Err(DiffOpError::ZeroTopCoefficient(coeffs.len())),
            _ => {}
        }
        let mut diagnostic = None;
        for (idx, a) in coeffs.iter().enumerate() {
            let i = idx + 1;
            if let Some(d) = a.degree().filter(|&d| d > i) {
                diagnostic = Some(format!("deg a_{i} = {d} > {i}"));
                break;
            }
        }
        if diagnostic.is_none() && !coeffs.iter().enumerate().any(|(idx, a)| a.degree() == Some(idx + 1)) {
            diagnostic = Some("no coefficient has deg a_i = i".to_string());
        }
        Ok(DiffOp { coeffs, diagnostic })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_i` for `1 <= i <= order`.
    pub fn coeff(&self, i: usize) -> &XPoly<F> {
        &self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[XPoly<F>] {
        &self.coeffs
    }

    /// Coefficient of `x^j` in `a_i`.
    pub fn a(&self, i: usize, j: usize) -> F {
        if i == 0 || i > self.coeffs.len() {
            return F::zero();
        }
        self.coeffs[i - 1].coeff(j)
    }

    pub fn is_exactly_solvable(&self) -> bool {
        self.diagnostic.is_none()
    }

    pub fn solvability(&self) -> Result<(), DiffOpError> {
        match &self.diagnostic {
            None => Ok(()),
            Some(d) => Err(DiffOpError::NotExactlySolvable(d.clone())),
        }
    }

    /// The monomial action is triangular (deg a_i <= i), which is all that
    /// eigen-solving needs.
    fn check_triangular(&self) -> Result<(), DiffOpError> {
        for (idx, a) in self.coeffs.iter().enumerate() {
            if let Some(d) = a.degree().filter(|&d| d > idx + 1) {
                return Err(DiffOpError::NotExactlySolvable(format!("deg a_{} = {d} > {}", idx + 1, idx + 1)));
            }
        }
        Ok(())
    }

    /// `a_{ii}` for `i = 1..=order`, index 0 unused (always zero).
    pub fn lambda_coeffs(&self) -> Vec<F> {
        (0..=self.order()).map(|i| self.a(i, i)).collect()
    }

    /// `lambda(n) = sum a_ii (n)_i`.
    pub fn lambda_at(&self, n: i64) -> F {
        (1..=self.order()).fold(F::zero(), |acc, i| {
            acc + self.a(i, i) * F::from_rational(&falling_factorial(n, i))
        })
    }

    pub fn apply(&self, q: &XPoly<F>) -> XPoly<F> {
        let mut acc = XPoly::zero();
        let mut d = q.clone();
        for a in &self.coeffs {
            d = d.derivative();
            if d.is_zero() {
                break;
            }
            acc = &acc + &(a * &d);
        }
        acc
    }

    /// Coefficient of `x^m` in `L x^j`.
    pub fn monomial_action(&self, j: usize, m: usize) -> F {
        let mut acc = F::zero();
        for i in 1..=self.order().min(j) {
            let l = m as i64 - j as i64 + i as i64;
            if l < 0 {
                continue;
            }
            let c = self.a(i, l as usize);
            if !c.is_zero() {
                acc = acc + c * F::from_rational(&falling_factorial(j as i64, i));
            }
        }
        acc
    }

    /// Monic degree-`n` solution of `L P = lambda(n) P`.
    pub fn eigenpolynomial(&self, n: usize) -> Result<XPoly<F>, DiffOpError> {
        self.check_triangular()?;
        let lams: Vec<F> = (0..=n as i64).map(|m| self.lambda_at(m)).collect();
        self.eigenpolynomial_with(n, &lams)
    }

    fn eigenpolynomial_with(&self, n: usize, lams: &[F]) -> Result<XPoly<F>, DiffOpError> {
        let lam_n = &lams[n];
        if let Some(m) = (0..n).find(|&m| (lam_n.clone() - lams[m].clone()).is_negligible()) {
            return Err(DiffOpError::Resonance { m, n });
        }
        let mut c = vec![F::zero(); n + 1];
        c[n] = F::one();
        for m in (0..n).rev() {
            let mut s = F::zero();
            // a_i lowers the degree by at most i, so only j <= m + order matter
            for (j, cj) in c.iter().enumerate().take((m + self.order()).min(n) + 1).skip(m + 1) {
                if cj.is_zero() {
                    continue;
                }
                let t = self.monomial_action(j, m);
                if !t.is_zero() {
                    s = s + cj.clone() * t;
                }
            }
            c[m] = s / (lam_n.clone() - lams[m].clone());
        }
        Ok(XPoly::from_coeffs(c))
    }

    /// `P_0..=P_N`, each re-checked against the eigen-equation.
    pub fn eigen_sequence(&self, big_n: usize) -> Result<EigenSeq<F>, DiffOpError> {
        self.check_triangular()?;
        let lams: Vec<F> = (0..=big_n as i64).map(|m| self.lambda_at(m)).collect();
        let mut polys = Vec::with_capacity(big_n + 1);
        for n in 0..=big_n {
            let p = self.eigenpolynomial_with(n, &lams[..=n])?;
            let residual = &self.apply(&p) - &p.scale(&lams[n]);
            if !residual.is_negligible() {
                return Err(DiffOpError::SelfCheck(n));
            }
            polys.push(p);
        }
        Ok(EigenSeq::new(Some(self.clone()), polys))
    }

    /// The same operator in the variable `y = x - t`.
    pub fn translate(&self, t: &F) -> Self {
        DiffOp {
            coeffs: self.coeffs.iter().map(|a| a.translate(t)).collect(),
            diagnostic: self.diagnostic.clone(),
        }
    }

    /// The same operator in the variable `y = s x` (`s` nonzero).
    pub fn rescale(&self, s: &F) -> Self {
        let inv = F::one() / s.clone();
        let mut pw = F::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                pw = pw.clone() * s.clone();
                a.rescale(&inv).scale(&pw)
            })
            .collect();
        DiffOp {
            coeffs,
            diagnostic: self.diagnostic.clone(),
        }
    }

    pub fn to_general(&self) -> PolyDiffOp<F> {
        let mut v = vec![XPoly::zero()];
        v.extend(self.coeffs.iter().cloned());
        PolyDiffOp::new(v)
    }
}

impl<F: ExactField> DiffOp<F> {
    /// `lambda(n)` as a rational function of `n` and the parameters.
    pub fn lambda(&self) -> RatFn {
        let mut acc = RatFn::zero();
        for i in 1..=self.order() {
            let a = self.a(i, i);
            if !a.is_zero() {
                acc = &acc + &a.to_ratfn().mul_poly(&falling_factorial_poly(0, i));
            }
        }
        acc
    }

    /// `lambda(n)` when its coefficients are polynomial in the parameters.
    pub fn lambda_poly(&self) -> Option<MPoly> {
        self.lambda().as_poly().cloned()
    }
}

impl<F: Field> std::fmt::Display for DiffOp<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.to_general().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }
    fn xp(c: &[i64]) -> XPoly<Q> {
        XPoly::from_coeffs(c.iter().map(|&v| q(v)).collect())
    }

    fn appell3() -> DiffOp<Q> {
        DiffOp::new(vec![xp(&[0, 1]), xp(&[]), xp(&[1])]).unwrap()
    }

    fn laguerre1() -> DiffOp<Q> {
        // x d^2 + (2 - x) d
        DiffOp::new(vec![xp(&[2, -1]), xp(&[0, 1])]).unwrap()
    }

    #[test]
    fn lambda_of_simple_operators() {
        let l = appell3();
        assert_eq!(l.order(), 3);
        assert!(l.is_exactly_solvable());
        assert_eq!(l.lambda_poly().unwrap(), MPoly::var_n());
        let bad = DiffOp::new(vec![xp(&[0, 0, 1]), xp(&[0, 1])]).unwrap();
        assert!(matches!(bad.solvability(), Err(DiffOpError::NotExactlySolvable(_))));
        assert!(matches!(DiffOp::<Q>::new(vec![]), Err(DiffOpError::Empty)));
    }

    #[test]
    fn symbolic_lambda_of_quadratic_shape() {
        let a11 = RatFn::var("a11");
        let one = RatFn::one();
        let l = DiffOp::new(vec![
            XPoly::from_coeffs(vec![RatFn::zero(), a11]),
            XPoly::from_coeffs(vec![RatFn::zero(), RatFn::zero(), one.clone()]),
            XPoly::constant(one),
        ])
        .unwrap();
        let n = MPoly::var_n();
        let expect = &(&n * &(&n - &MPoly::one())) + &(&MPoly::var("a11") * &n);
        assert_eq!(l.lambda_poly().unwrap(), expect);
    }

    #[test]
    fn application() {
        let euler = DiffOp::new(vec![xp(&[0, 1])]).unwrap();
        assert_eq!(euler.apply(&xp(&[0, 0, 0, 0, 0, 1])), xp(&[0, 0, 0, 0, 0, 5]));
        assert_eq!(appell3().apply(&xp(&[0, 0, 0, 1])), xp(&[6, 0, 0, 3]));
        // x d^2 + 2 d - x d on x
        let l = DiffOp::new(vec![xp(&[2, -1]), xp(&[0, 1])]).unwrap();
        assert_eq!(l.apply(&xp(&[0, 1])), xp(&[2, -1]));
    }

    #[test]
    fn eigenpolynomials() {
        assert_eq!(appell3().eigenpolynomial(3).unwrap(), xp(&[2, 0, 0, 1]));
        let euler = DiffOp::new(vec![xp(&[0, 1])]).unwrap();
        assert_eq!(euler.eigenpolynomial(4).unwrap(), XPoly::monomial(4, q(1)));
        assert_eq!(laguerre1().eigenpolynomial(2).unwrap(), xp(&[6, -6, 1]));
    }

    #[test]
    fn resonance_and_sequences() {
        let d2 = DiffOp::new(vec![xp(&[]), xp(&[1])]).unwrap();
        assert_eq!(d2.eigen_sequence(3).unwrap_err(), DiffOpError::Resonance { m: 0, n: 1 });
        let hermite = DiffOp::new(vec![xp(&[0, 1]), xp(&[-1])]).unwrap();
        let seq = hermite.eigen_sequence(2).unwrap();
        assert_eq!(seq.polys(), [xp(&[1]), xp(&[0, 1]), xp(&[-1, 0, 1])]);
        // 6(x-1)^3 d^3 + (x-1)^2 d^2 + (x-1) d
        let cubic = DiffOp::new(vec![xp(&[-1, 1]), xp(&[1, -2, 1]), xp(&[-6, 18, -18, 6])]).unwrap();
        let seq = cubic.eigen_sequence(3).unwrap();
        let mut pw = xp(&[1]);
        for p in seq.polys() {
            assert_eq!(p, &pw);
            pw = &pw * &xp(&[-1, 1]);
        }
    }

    #[test]
    fn triangular_monomial_action() {
        let l = laguerre1();
        for j in 0..8usize {
            let image = l.apply(&XPoly::monomial(j, q(1)));
            assert!(image.degree().is_none_or(|d| d <= j));
            assert_eq!(image.coeff(j), l.lambda_at(j as i64));
            for m in 0..=j {
                assert_eq!(image.coeff(m), l.monomial_action(j, m));
            }
        }
    }

    #[test]
    fn float_eigenpolynomial_tracks_exact_one() {
        let exact = laguerre1().eigenpolynomial(5).unwrap();
        let lf = DiffOp::new(vec![
            XPoly::from_coeffs(vec![2.0f64, -1.0]),
            XPoly::from_coeffs(vec![0.0, 1.0]),
        ])
        .unwrap();
        let approx = lf.eigenpolynomial(5).unwrap();
        for i in 0..=5 {
            let e = <f64 as Field>::from_rational(&exact.coeff(i));
            assert!((approx.coeff(i) - e).abs() < 1e-9);
        }
    }

    #[test]
    fn affine_changes() {
        let l = laguerre1();
        let t = l.translate(&q(3));
        // eigenvalues are unchanged by affine changes of variable
        assert_eq!(t.lambda_at(5), l.lambda_at(5));
        let s = l.rescale(&q(2));
        assert_eq!(s.lambda_at(5), l.lambda_at(5));
        let p = s.eigenpolynomial(3).unwrap();
        assert_eq!(&s.apply(&p) - &p.scale(&s.lambda_at(3)), XPoly::zero());
    }
}
