//! Eigenpolynomial and recurrence coefficients as rational functions of `n`
//! with free operator parameters.
//!
//! Writing `P_n = sum_k p_k(n) x^(n-k)` and comparing the coefficient of
//! `x^(n-k)` in `L P_n = lambda(n) P_n` gives the single-pass recursion
//!
//! ```text
//! p_k(n) (lambda(n) - lambda(n-k)) = sum_{r<k} p_r(n) w_{k-r}(n-r),
//! w_s(m) = sum_i a_{i,i-s} (m)_i,
//! ```
//!
//! and comparing `x^(n-j)` in `x P_n = P_{n+1} + sum b_i(n) P_{n-i}` gives
//! the cascade for `b_j`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diffop::{DiffOp, DiffOpError, XPoly};
use crate::exactnum::{falling_factorial_poly, ExactError, MPoly, RatFn, Rational, VAR_N};
use crate::parser::{parse_xpoly, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("lambda(n) - lambda(n-{0}) vanishes identically")]
    IdenticallyResonant(usize),
    #[error("value is not a polynomial after clearing the denominator")]
    NotPolynomial,
    #[error("parameters left unbound: {0}")]
    Unbound(String),
    #[error("lambda is not polynomial in n of degree <= order")]
    BadLambda,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    DiffOp(#[from] DiffOpError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// How `b_j` is assembled from the `p_k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Cascade {
    /// `b_j(n) = p_{j+1}(n) - p_{j+1}(n+1) - sum_{i<j} b_i(n) p_{j-i}(n-i)`,
    /// which is what `x P_n = P_{n+1} + sum b_i(n) P_{n-i}` implies.
    #[default]
    ShiftAware,
    /// The same sum with every `p_{j-i}` taken at `n` instead of `n - i`.
    /// Kept because published tables were produced this way.
    AsPrinted,
}

/// Operator with parameter-valued coefficients plus the names of its
/// free parameters.
#[derive(Clone, Debug)]
pub struct SymbolicAnsatz {
    op: DiffOp<RatFn>,
    params: Vec<String>,
}

/// Appendix-style denominator `24 (a11+2n-5)(a11+2n-4)(a11+2n-3)^2 (a11+2n-2)^4 (a11+2n-1)`.
pub fn quadratic_case_denominator() -> MPoly {
    let lin = |c: i64| &(&MPoly::var("a11") + &MPoly::var_n().scale(&Rational::from_integer(2.into()))) - &MPoly::from_i64(c);
    [(5, 1), (4, 1), (3, 2), (2, 4), (1, 1)]
        .iter()
        .fold(MPoly::from_i64(24), |acc, &(c, e)| &acc * &lin(c).pow(e))
}

impl SymbolicAnsatz {
    pub fn new(op: DiffOp<RatFn>, params: Vec<String>) -> Result<Self, SymbolicError> {
        let lam = op.lambda_poly().ok_or(SymbolicError::BadLambda)?;
        if lam.degree_in(VAR_N).unwrap_or(0) as usize > op.order() {
            return Err(SymbolicError::BadLambda);
        }
        Ok(SymbolicAnsatz { op, params })
    }

    /// Coefficients `a_1, a_2, ...` as expressions in `x` and `params`.
    pub fn from_texts(coeffs: &[&str], params: &[&str]) -> Result<Self, SymbolicError> {
        let mut vars = vec!["x"];
        vars.extend_from_slice(params);
        let cs = coeffs
            .iter()
            .map(|t| parse_xpoly(t, &vars))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(DiffOp::new(cs)?, params.iter().map(|s| s.to_string()).collect())
    }

    /// `(x^2 + a31 x + a30) d^3 + (a21 x + a20) d^2 + x d`, `lambda(n) = n`.
    pub fn leading_quadratic() -> Self {
        Self::from_texts(&["x", "a21*x + a20", "x^2 + a31*x + a30"], &["a31", "a30", "a21", "a20"])
            .expect("well-formed preset")
    }

    /// `(a31 x + a30) d^3 + (a21 x + a20) d^2 + x d`.
    pub fn leading_linear() -> Self {
        Self::from_texts(&["x", "a21*x + a20", "a31*x + a30"], &["a31", "a30", "a21", "a20"])
            .expect("well-formed preset")
    }

    /// `(a32 x^2 + a31 x + a30) d^3 + (x^2 + a20) d^2 + (a11 x + a10) d`
    /// (quadratic `lambda`, `a21 = 0`), with the given parameters fixed.
    pub fn quadratic_lambda(fixed: &[(&str, Rational)]) -> Self {
        let all = ["a32", "a31", "a30", "a20", "a11", "a10"];
        let base = Self::from_texts(&["a11*x + a10", "x^2 + a20", "a32*x^2 + a31*x + a30"], &all)
            .expect("well-formed preset");
        let bindings: BTreeMap<String, Rational> = fixed.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        base.bind(&bindings).expect("polynomial coefficients")
    }

    /// `d^3 + x^2 d^2 + a11 x d`.
    pub fn quadratic_pure() -> Self {
        let z = Rational::from_integer(0.into());
        Self::quadratic_lambda(&[
            ("a32", z.clone()),
            ("a31", z.clone()),
            ("a30", Rational::from_integer(1.into())),
            ("a20", z.clone()),
            ("a10", z),
        ])
    }

    /// `sum_{j=1..k} a_j x^(j-1) d^j + x d` with symbolic `a_j`.
    pub fn type1(k: usize) -> Self {
        let names: Vec<String> = (1..=k).map(|j| format!("a{j}")).collect();
        let texts: Vec<String> = (1..=k)
            .map(|j| match j {
                1 => "a1 + x".to_string(),
                2 => "a2*x".to_string(),
                _ => format!("a{j}*x^{}", j - 1),
            })
            .collect();
        let t: Vec<&str> = texts.iter().map(String::as_str).collect();
        let p: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::from_texts(&t, &p).expect("well-formed preset")
    }

    /// `sum_{j=1..k} a_j d^j + x d` with symbolic `a_j`.
    pub fn appell(k: usize) -> Self {
        let names: Vec<String> = (1..=k).map(|j| format!("a{j}")).collect();
        let texts: Vec<String> = (1..=k)
            .map(|j| if j == 1 { "a1 + x".to_string() } else { format!("a{j}") })
            .collect();
        let t: Vec<&str> = texts.iter().map(String::as_str).collect();
        let p: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::from_texts(&t, &p).expect("well-formed preset")
    }

    pub fn operator(&self) -> &DiffOp<RatFn> {
        &self.op
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn lambda(&self) -> RatFn {
        self.op.lambda()
    }

    /// Fixes some parameters; the rest stay symbolic.
    pub fn bind(&self, bindings: &BTreeMap<String, Rational>) -> Result<Self, SymbolicError> {
        let coeffs = self
            .op
            .coeffs()
            .iter()
            .map(|a| {
                a.coeffs()
                    .iter()
                    .map(|c| c.evaluate(bindings))
                    .collect::<Result<Vec<_>, _>>()
                    .map(XPoly::from_coeffs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(XPoly::is_zero) {
            coeffs.pop();
        }
        let params = self.params.iter().filter(|p| !bindings.contains_key(*p)).cloned().collect();
        Self::new(DiffOp::new(coeffs)?, params)
    }

    /// Concrete operator; every parameter must be bound.
    pub fn specialize(&self, bindings: &BTreeMap<String, Rational>) -> Result<DiffOp<Rational>, SymbolicError> {
        let bound = self.bind(bindings)?;
        let coeffs = bound
            .op
            .coeffs()
            .iter()
            .map(|a| {
                a.coeffs()
                    .iter()
                    .map(|c| c.constant_value().ok_or_else(|| SymbolicError::Unbound(c.vars_used().join(","))))
                    .collect::<Result<Vec<_>, _>>()
                    .map(XPoly::from_coeffs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DiffOp::new(coeffs)?)
    }

    /// `w_s(n + offset)`.
    fn w(&self, s: usize, offset: i64) -> RatFn {
        let mut acc = RatFn::zero();
        for i in s.max(1)..=self.op.order() {
            let a = self.op.a(i, i - s);
            if !a.is_zero() {
                acc = &acc + &a.mul_poly(&falling_factorial_poly(offset, i));
            }
        }
        acc
    }
}

/// `p_0..=p_kmax`.
pub fn symbolic_p_series(ansatz: &SymbolicAnsatz, kmax: usize) -> Result<Vec<RatFn>, SymbolicError> {
    let lam = ansatz.lambda();
    let order = ansatz.op.order();
    let mut p = vec![RatFn::one()];
    for k in 1..=kmax {
        let den = &lam - &lam.shift_n(-(k as i64));
        if den.is_zero() {
            return Err(SymbolicError::IdenticallyResonant(k));
        }
        let mut acc = RatFn::zero();
        for (r, pr) in p.iter().enumerate().take(k).skip(k.saturating_sub(order)) {
            if pr.is_zero() {
                continue;
            }
            let w = ansatz.w(k - r, -(r as i64));
            if !w.is_zero() {
                acc = &acc + &(pr * &w);
            }
        }
        p.push(acc.checked_div(&den)?);
    }
    Ok(p)
}

/// `p_k(n)`: the coefficient of `x^(n-k)` in the monic `P_n`.
pub fn symbolic_p(ansatz: &SymbolicAnsatz, k: usize) -> Result<RatFn, SymbolicError> {
    Ok(symbolic_p_series(ansatz, k)?.pop().expect("nonempty"))
}

/// The `p_k` and `b_j` of one ansatz.
#[derive(Clone, Debug)]
pub struct BSeries {
    pub p: Vec<RatFn>,
    pub b: Vec<RatFn>,
    pub cascade: Cascade,
}

impl BSeries {
    /// Re-checks the defining relation of each `b_j` against the `p_k`.
    pub fn is_consistent(&self) -> bool {
        (0..self.b.len()).all(|j| cascade_step(&self.p, &self.b[..j], j, self.cascade) == self.b[j])
    }
}

fn cascade_step(p: &[RatFn], b: &[RatFn], j: usize, cascade: Cascade) -> RatFn {
    let mut v = &p[j + 1] - &p[j + 1].shift_n(1);
    for (i, bi) in b.iter().enumerate().take(j) {
        if bi.is_zero() || p[j - i].is_zero() {
            continue;
        }
        let q = match cascade {
            Cascade::ShiftAware => p[j - i].shift_n(-(i as i64)),
            Cascade::AsPrinted => p[j - i].clone(),
        };
        v = &v - &(bi * &q);
    }
    v
}

/// `b_0..=b_jmax`.
pub fn symbolic_b(ansatz: &SymbolicAnsatz, jmax: usize, cascade: Cascade) -> Result<BSeries, SymbolicError> {
    let p = symbolic_p_series(ansatz, jmax + 1)?;
    let mut b: Vec<RatFn> = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        let v = cascade_step(&p, &b, j, cascade);
        b.push(v);
    }
    Ok(BSeries { p, b, cascade })
}

/// One coefficient of a numerator in powers of `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub power: u32,
    pub coeff: MPoly,
    /// Part of `coeff` of total degree <= 1 in the parameters.
    pub linear: Option<MPoly>,
}

/// Coefficients of powers of `n` (descending, zeros skipped) of the
/// numerator of `b`, or of `b * clear` when a denominator to clear is given.
pub fn parameter_constraints(
    b: &RatFn,
    clear: Option<&MPoly>,
    linearize: bool,
    params: &[String],
) -> Result<Vec<Constraint>, SymbolicError> {
    let num = match clear {
        Some(d) => b.mul_poly(d).as_poly().cloned().ok_or(SymbolicError::NotPolynomial)?,
        None => b.numerator().clone(),
    };
    let mut out = Vec::new();
    for (power, coeff) in num.coeffs_in(VAR_N).into_iter().enumerate().rev() {
        if coeff.is_zero() {
            continue;
        }
        let linear = linearize.then(|| coeff.truncate_degree_in(params, 1));
        out.push(Constraint {
            power: power as u32,
            coeff,
            linear,
        });
    }
    Ok(out)
}

/// For a polynomial `b`, the coefficient of each parameter in its part that
/// is linear in `params`, as a polynomial in `n` and the remaining symbols.
pub fn linear_coefficients(b: &MPoly, params: &[String]) -> BTreeMap<String, MPoly> {
    let lin = b.truncate_degree_in(params, 1);
    params
        .iter()
        .map(|p| {
            let cs = lin.coeffs_in(p);
            (p.clone(), cs.get(1).cloned().unwrap_or_else(MPoly::zero))
        })
        .collect()
}

/// Leading `(power of n, coefficient)` of a polynomial in `n`.
pub fn leading_in_n(p: &MPoly) -> Option<(u32, MPoly)> {
    let cs = p.coeffs_in(VAR_N);
    cs.iter()
        .enumerate()
        .rev()
        .find(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u32, c.clone()))
}

/// Forward difference `f(n+1) - f(n)`.
pub fn delta(f: &RatFn) -> RatFn {
    &f.shift_n(1) - f
}

/// Coefficients `A_k` with `p = sum_k A_k (n)_k`.
pub fn falling_factorial_coeffs(p: &MPoly) -> Vec<MPoly> {
    let deg = p.degree_in(VAR_N).unwrap_or(0) as usize;
    let zero = Rational::from_integer(0.into());
    let mut out = Vec::with_capacity(deg + 1);
    let mut d = p.clone();
    let mut fact = Rational::from_integer(1.into());
    for k in 0..=deg {
        if k > 0 {
            fact *= Rational::from_integer((k as i64).into());
            d = &d.shift_n(1) - &d;
        }
        out.push(d.specialize(VAR_N, &zero).scale(&fact.recip()));
    }
    out
}
