//! One-step Darboux transformation of a monic tridiagonal recurrence
//! operator `Lam = T + u(n) I + v(n) T^-1`, and completion of a polynomial
//! sequence to a differential operator having it as eigenfunctions.
//!
//! `Lam - c I = D1 D2` with `D1 = T + f(n) I`, `D2 = I + h(n) T^-1`, which
//! unrolls to `h(n+1) = u(n) - c - f(n)`, `f(n) = v(n) / h(n)`. Swapping the
//! factors gives `Lam^ = D2 D1 + c I`, with `u^(n) = f(n) + h(n) + c` and
//! `v^(n) = h(n) f(n-1)`, and the new sequence `P^_n = P_n + h(n) P_{n-1}`.

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::diffop::{DiffOp, XPoly};
use crate::exactnum::{falling_factorial, ExactError, Rational};
use crate::linalg::Echelon;
use crate::recurrence::{reconstruct_rational, EigenSeq, RecurrenceError};
use crate::shiftop::ShiftOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DarbouxError {
    #[error("factorization breaks down: h({0}) = 0")]
    Breakdown(usize),
    #[error("operator is not monic tridiagonal with nonzero v: {0}")]
    NotTridiagonal(String),
    #[error("sequence too short: need {need} polynomials, have {have}")]
    TooShort { have: usize, need: usize },
    #[error("no operator of order <= {0} has these eigenfunctions")]
    NoOperator(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

/// Initial value `h(0)` of the lower factor.
#[derive(Clone, Debug, PartialEq)]
pub enum Seed {
    Value(Rational),
    /// `h(0) = 1`.
    Auto,
}

impl Seed {
    pub fn value(&self) -> Rational {
        match self {
            Seed::Value(v) => v.clone(),
            Seed::Auto => Rational::one(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DarbouxFactors {
    pub c: Rational,
    /// `h(0..=N)`.
    pub h: Vec<Rational>,
    /// `f(0..=N)`.
    pub f: Vec<Rational>,
    /// `u(0..=N)` and `v(0..=N)` of the factored operator.
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
}

fn tridiagonal_entries(lam: &ShiftOp, big_n: usize) -> Result<(Vec<Rational>, Vec<Rational>), DarbouxError> {
    if lam.band().keys().any(|k| !(-1..=1).contains(k)) {
        return Err(DarbouxError::NotTridiagonal("band wider than {-1, 0, 1}".into()));
    }
    if lam.coeff(1).constant_value() != Some(Rational::one()) {
        return Err(DarbouxError::NotTridiagonal("coefficient of T is not 1".into()));
    }
    let (u, v) = (lam.coeff(0), lam.coeff(-1));
    let u = (0..=big_n as i64).map(|n| u.eval_n(n)).collect::<Result<Vec<_>, _>>()?;
    let v = (0..=big_n as i64).map(|n| v.eval_n(n)).collect::<Result<Vec<_>, _>>()?;
    Ok((u, v))
}

/// Factors `Lam - c I = (T + f) (I + h T^-1)` on `n = 0..=N`.
pub fn factor_lu(lam: &ShiftOp, c: &Rational, seed: Seed, big_n: usize) -> Result<DarbouxFactors, DarbouxError> {
    let (u, v) = tridiagonal_entries(lam, big_n + 1)?;
    let mut h = vec![seed.value()];
    let mut f = Vec::with_capacity(big_n + 1);
    for n in 0..=big_n {
        if h[n].is_zero() {
            return Err(DarbouxError::Breakdown(n));
        }
        f.push(&v[n] / &h[n]);
        h.push(&u[n] - c - &f[n]);
    }
    if h[big_n + 1].is_zero() {
        return Err(DarbouxError::Breakdown(big_n + 1));
    }
    Ok(DarbouxFactors {
        c: c.clone(),
        h,
        f,
        u,
        v,
    })
}

impl DarbouxFactors {
    pub fn max_index(&self) -> usize {
        self.f.len() - 1
    }

    /// `D1 D2 + c I` reproduces `u` and `v` at every `n < N`.
    pub fn certifies(&self) -> bool {
        (0..self.max_index()).all(|n| {
            let u = &self.f[n] + &self.h[n + 1] + &self.c;
            let v = &self.f[n] * &self.h[n];
            u == self.u[n] && v == self.v[n]
        })
    }

    /// `D1` and `D2` as shift operators, when `h` and `f` are rational in `n`
    /// over the sampled range.
    pub fn operators(&self) -> Result<(ShiftOp, ShiftOp), DarbouxError> {
        let fit = |vals: &[Rational]| {
            let samples: Vec<(i64, Rational)> = vals.iter().enumerate().map(|(n, v)| (n as i64, v.clone())).collect();
            let room = samples.len().saturating_sub(5) / 2;
            reconstruct_rational(&samples, room.min(6), room.min(6))
        };
        let f = fit(&self.f)?;
        let h = fit(&self.h)?;
        Ok((
            ShiftOp::t(1).add(&ShiftOp::mul_op(f)),
            ShiftOp::identity().add(&ShiftOp::term(-1, h)),
        ))
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        json!({ "c": self.c.to_string(), "h": s(&self.h), "f": s(&self.f) })
    }
}

/// `P^_n = P_n + h(n) P_{n-1}` with its recurrence `Lam^ = D2 D1 + c I`.
#[derive(Clone, Debug)]
pub struct TransformedSeq {
    pub polys: Vec<XPoly<Rational>>,
    /// `u^(n)` for `n = 0..=N`.
    pub u_hat: Vec<Rational>,
    /// `v^(n)` for `n = 0..=N` (`v^(0)` is unused).
    pub v_hat: Vec<Rational>,
}

impl TransformedSeq {
    pub fn as_eigen_seq(&self) -> EigenSeq<Rational> {
        EigenSeq::from_polys(self.polys.clone()).expect("transformed polynomials are monic of degree n")
    }

    /// `x P^_n - P^_{n+1} - u^(n) P^_n - v^(n) P^_{n-1} = 0` for `n = 1..N-1`.
    pub fn conjugation_holds(&self) -> bool {
        (1..self.polys.len() - 1).all(|n| {
            let r = &(&self.polys[n].mul_x() - &self.polys[n + 1]) - &self.polys[n].scale(&self.u_hat[n]);
            (&r - &self.polys[n - 1].scale(&self.v_hat[n])).is_zero()
        })
    }

    /// `Lam^` as a shift operator, when `u^` and `v^` are rational in `n`.
    pub fn lamhat(&self) -> Result<ShiftOp, DarbouxError> {
        let fit = |vals: &[Rational], from: usize| {
            let samples: Vec<(i64, Rational)> =
                vals.iter().enumerate().skip(from).map(|(n, v)| (n as i64, v.clone())).collect();
            let room = samples.len().saturating_sub(5) / 2;
            reconstruct_rational(&samples, room.min(6), room.min(6))
        };
        Ok(ShiftOp::t(1)
            .add(&ShiftOp::mul_op(fit(&self.u_hat, 0)?))
            .add(&ShiftOp::term(-1, fit(&self.v_hat, 1)?)))
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        json!({
            "polys": self.polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "u_hat": s(&self.u_hat),
            "v_hat": s(&self.v_hat),
        })
    }
}

/// Applies `D2` to the sequence and swaps the factors.
pub fn swap_and_transform(factors: &DarbouxFactors, seq: &EigenSeq<Rational>) -> Result<TransformedSeq, DarbouxError> {
    if factors.v.iter().skip(1).all(Zero::is_zero) {
        return Err(DarbouxError::NotTridiagonal("v vanishes identically".into()));
    }
    let big_n = seq.max_index().min(factors.max_index());
    let ps = seq.polys();
    let polys: Vec<XPoly<Rational>> = (0..=big_n)
        .map(|n| {
            if n == 0 {
                ps[0].clone()
            } else {
                &ps[n] + &ps[n - 1].scale(&factors.h[n])
            }
        })
        .collect();
    let u_hat = (0..=big_n).map(|n| &factors.f[n] + &factors.h[n] + &factors.c).collect();
    let v_hat = (0..=big_n)
        .map(|n| if n == 0 { Rational::zero() } else { &factors.h[n] * &factors.f[n - 1] })
        .collect();
    let t = TransformedSeq { polys, u_hat, v_hat };
    debug_assert!(t.conjugation_holds());
    Ok(t)
}

/// Unknown `a_ij` (coefficient of `x^j` in `a_i`), `i = 1..=max_order`,
/// `j = 0..=i + slack`.
fn unknowns(max_order: usize, slack: usize) -> Vec<(usize, usize)> {
    (1..=max_order).flat_map(|i| (0..=i + slack).map(move |j| (i, j))).collect()
}

/// Equations `[x^m] (L P_n - mu(n) P_n) = 0` for one `n`.
fn rows_for(p: &XPoly<Rational>, n: usize, vars: &[(usize, usize)]) -> Vec<Vec<Rational>> {
    let max_i = vars.iter().map(|v| v.0).max().unwrap_or(0);
    let derivs: Vec<XPoly<Rational>> = (0..=max_i).scan(p.clone(), |d, _| {
        let cur = d.clone();
        *d = d.derivative();
        Some(cur)
    }).collect();
    let top = vars.iter().map(|&(i, j)| (n + j).saturating_sub(i)).max().unwrap_or(0).max(n);
    (0..=top)
        .map(|m| {
            vars.iter()
                .map(|&(i, j)| {
                    let mut v = if m >= j { derivs[i].coeff(m - j) } else { Rational::zero() };
                    if i == j {
                        v -= falling_factorial(n as i64, i) * p.coeff(m);
                    }
                    v
                })
                .collect()
        })
        .collect()
}

fn to_operator(vec: &[Rational], vars: &[(usize, usize)], max_order: usize) -> Option<DiffOp<Rational>> {
    let mut coeffs: Vec<Vec<Rational>> = (1..=max_order).map(|i| vec![Rational::zero(); i + 1]).collect();
    for (x, &(i, j)) in vec.iter().zip(vars) {
        let c = &mut coeffs[i - 1];
        if c.len() <= j {
            c.resize(j + 1, Rational::zero());
        }
        c[j] = x.clone();
    }
    let mut polys: Vec<XPoly<Rational>> = coeffs.into_iter().map(XPoly::from_coeffs).collect();
    while polys.last().is_some_and(XPoly::is_zero) {
        polys.pop();
    }
    DiffOp::new(polys).ok()
}

/// `L P_n = lambda_L(n) P_n` for every polynomial of the sequence.
pub fn satisfies_all(op: &DiffOp<Rational>, polys: &[XPoly<Rational>]) -> bool {
    polys
        .iter()
        .enumerate()
        .all(|(n, p)| op.apply(p) == p.scale(&op.lambda_at(n as i64)))
}

/// Basis of the operators `sum_{i<=max_order} a_i d^i`, `deg a_i <= i + slack`,
/// having every polynomial of `seq` as an eigenfunction. The last three
/// indices are held out of the solve and used for validation; if validation
/// fails they are added to the system.
pub fn bispectral_completion(
    seq: &EigenSeq<Rational>,
    max_order: usize,
    slack: usize,
) -> Result<Vec<DiffOp<Rational>>, DarbouxError> {
    let vars = unknowns(max_order, slack);
    let polys = seq.polys();
    let need = vars.len() + 5;
    if polys.len() < need {
        return Err(DarbouxError::TooShort {
            have: polys.len(),
            need,
        });
    }
    let split = polys.len() - 3;
    let mut ech = Echelon::new(vars.len());
    for (n, p) in polys.iter().enumerate().take(split) {
        for r in rows_for(p, n, &vars) {
            ech.insert(r);
        }
    }
    let mut basis: Vec<DiffOp<Rational>> = ech.nullspace().iter().filter_map(|v| to_operator(v, &vars, max_order)).collect();
    if !basis.iter().all(|op| satisfies_all(op, polys)) {
        for (n, p) in polys.iter().enumerate().skip(split) {
            for r in rows_for(p, n, &vars) {
                ech.insert(r);
            }
        }
        basis = ech.nullspace().iter().filter_map(|v| to_operator(v, &vars, max_order)).collect();
    }
    if basis.is_empty() {
        return Err(DarbouxError::NoOperator(max_order));
    }
    Ok(basis)
}
