//! Finite-band difference operators `sum_j c_j(n) T^j` with rational
//! coefficients, where `(T f)(n) = f(n + 1)`.
//!
//! A sequence operator acts on polynomial sequences by
//! `(A P)_n = sum_j c_j(n) P_{n+j}` with `P_m = 0` for `m < 0`; this is the
//! action under which `x P_n = (Lambda P)_n`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::diffop::{DiffOp, XPoly};
use crate::exactnum::{falling_factorial_poly, ExactError, MPoly, RatFn, Rational};
use crate::field::ExactField;
use crate::recurrence::RecTable;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShiftError {
    #[error("{stage}: mismatch at offset {offset}, difference {difference}")]
    Mismatch {
        stage: String,
        offset: i64,
        difference: RatFn,
    },
    #[error("recurrence table has no reconstructed closed forms")]
    NotReconstructed,
    #[error("recurrence bandwidth is unbounded")]
    Unbounded,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, PartialEq, Default)]
pub struct ShiftOp {
    band: BTreeMap<i64, RatFn>,
}

impl ShiftOp {
    pub fn zero() -> Self {
        ShiftOp::default()
    }

    pub fn identity() -> Self {
        Self::t(0)
    }

    /// `T^k`.
    pub fn t(k: i64) -> Self {
        Self::term(k, RatFn::one())
    }

    /// `c(n) T^k`.
    pub fn term(k: i64, c: RatFn) -> Self {
        let mut band = BTreeMap::new();
        if !c.is_zero() {
            band.insert(k, c);
        }
        ShiftOp { band }
    }

    /// Multiplication by `f(n)`.
    pub fn mul_op(f: RatFn) -> Self {
        Self::term(0, f)
    }

    pub fn from_band(entries: impl IntoIterator<Item = (i64, RatFn)>) -> Self {
        let mut op = ShiftOp::zero();
        for (k, c) in entries {
            op = op.add(&Self::term(k, c));
        }
        op
    }

    pub fn band(&self) -> &BTreeMap<i64, RatFn> {
        &self.band
    }

    pub fn coeff(&self, k: i64) -> RatFn {
        self.band.get(&k).cloned().unwrap_or_else(RatFn::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.band.is_empty()
    }

    pub fn top(&self) -> Option<i64> {
        self.band.keys().next_back().copied()
    }

    pub fn bottom(&self) -> Option<i64> {
        self.band.keys().next().copied()
    }

    fn insert_add(band: &mut BTreeMap<i64, RatFn>, k: i64, c: RatFn) {
        if c.is_zero() {
            return;
        }
        let v = match band.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            band.insert(k, v);
        }
    }

    pub fn add(&self, other: &ShiftOp) -> ShiftOp {
        let mut band = self.band.clone();
        for (k, c) in &other.band {
            Self::insert_add(&mut band, *k, c.clone());
        }
        ShiftOp { band }
    }

    pub fn sub(&self, other: &ShiftOp) -> ShiftOp {
        self.add(&other.scale(&RatFn::from_i64(-1)))
    }

    /// Left multiplication by `f(n)`.
    pub fn scale(&self, f: &RatFn) -> ShiftOp {
        if f.is_zero() {
            return ShiftOp::zero();
        }
        ShiftOp {
            band: self.band.iter().map(|(k, c)| (*k, c * f)).collect(),
        }
    }

    /// `(f T^i)(g T^j) = f(n) g(n+i) T^(i+j)`.
    pub fn compose(&self, other: &ShiftOp) -> ShiftOp {
        let mut band = BTreeMap::new();
        for (i, f) in &self.band {
            for (j, g) in &other.band {
                Self::insert_add(&mut band, i + j, f * &g.shift_n(*i));
            }
        }
        ShiftOp { band }
    }

    pub fn pow(&self, e: u32) -> ShiftOp {
        (0..e).fold(ShiftOp::identity(), |acc, _| acc.compose(self))
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &ShiftOp) -> ShiftOp {
        self.compose(other).sub(&other.compose(self))
    }

    /// `sum_i c_i self^i` by Horner; `coeffs[i]` multiplies `self^i`.
    pub fn poly_in(&self, coeffs: &[RatFn]) -> ShiftOp {
        coeffs
            .iter()
            .rev()
            .fold(ShiftOp::zero(), |acc, c| acc.compose(self).add(&ShiftOp::mul_op(c.clone())))
    }

    /// `(A P)_n`, or `None` when it needs `P_m` with `m > N`.
    pub fn apply_at(&self, polys: &[XPoly<Rational>], n: usize) -> Result<Option<XPoly<Rational>>, ExactError> {
        let mut acc = XPoly::zero();
        for (j, c) in &self.band {
            let m = n as i64 + j;
            if m < 0 {
                continue;
            }
            let Some(p) = polys.get(m as usize) else {
                return Ok(None);
            };
            acc = &acc + &p.scale(&c.eval_n(n as i64)?);
        }
        Ok(Some(acc))
    }

    /// `Lambda = T + sum_j b_j(n) T^(-j)` from a reconstructed recurrence table.
    pub fn from_rectable(table: &RecTable<Rational>) -> Result<ShiftOp, ShiftError> {
        if table.d().is_none() {
            return Err(ShiftError::Unbounded);
        }
        let rec = table.reconstructed().ok_or(ShiftError::NotReconstructed)?;
        let mut op = ShiftOp::t(1);
        for (j, b) in rec {
            op = op.add(&ShiftOp::term(-(*j as i64), b.clone()));
        }
        Ok(op)
    }

    pub fn to_json(&self) -> Value {
        let m: serde_json::Map<String, Value> =
            self.band.iter().map(|(k, c)| (k.to_string(), Value::String(c.to_string()))).collect();
        Value::Object(m)
    }
}

impl fmt::Display for ShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.band.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .band
            .iter()
            .rev()
            .map(|(k, c)| {
                let t = match k {
                    0 => "I".to_string(),
                    1 => "T".to_string(),
                    _ => format!("T^{k}"),
                };
                if c.constant_value().is_some_and(|v| v == Rational::from_integer(1.into())) {
                    t
                } else {
                    format!("({c})*{t}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShiftOp({self})")
    }
}

/// `ad_Lam^k (lambda I)` with `ad_Lam X = Lam X - X Lam`.
///
/// The `T^j` coefficient of the first power is `c_j(n) (lambda(n+j) - lambda(n))`.
pub fn ad_power(lam_op: &ShiftOp, lambda: &RatFn, k: usize) -> ShiftOp {
    let mut x = ShiftOp::mul_op(lambda.clone());
    for _ in 0..k {
        x = lam_op.commutator(&x);
    }
    x
}

/// Outcome of a successful ad-condition check.
#[derive(Clone, Debug)]
pub struct AdCertificate {
    pub order: usize,
    /// `ad^k`.
    pub ad_k: ShiftOp,
    /// `ad^(k+1)`, identically zero when the certificate exists.
    pub ad_k1: ShiftOp,
    /// `k! (a_kk, ..., a_k0)`, highest power first; for order 3 these are
    /// `(alpha, beta, gamma, delta)`.
    pub coefficients: Vec<RatFn>,
    pub matches: bool,
}

impl AdCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "ad_k": self.ad_k.to_json(),
            "ad_k_plus_1": self.ad_k1.to_json(),
            "coefficients": self.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "matches": self.matches,
        })
    }
}

fn first_mismatch(stage: &str, diff: &ShiftOp) -> Result<(), ShiftError> {
    match diff.band.iter().next() {
        None => Ok(()),
        Some((k, c)) => Err(ShiftError::Mismatch {
            stage: stage.to_string(),
            offset: *k,
            difference: c.clone(),
        }),
    }
}

/// Checks `ad^k_Lam lambda = k! a_k(Lam)` and `ad^(k+1)_Lam lambda = 0` for an
/// order-`k` operator; a failure names the lowest offending offset.
pub fn ad_condition_check<F: ExactField>(l: &DiffOp<F>, lam_op: &ShiftOp) -> Result<AdCertificate, ShiftError> {
    let k = l.order();
    let lambda = l.lambda();
    let ad_k = ad_power(lam_op, &lambda, k);
    let fact = (1..=k as i64).product::<i64>();
    let ak = l.coeff(k);
    let coeffs: Vec<RatFn> = ak.coeffs().iter().map(|c| c.to_ratfn().scale(&Rational::from_integer(fact.into()))).collect();
    let expected = lam_op.poly_in(&coeffs);
    first_mismatch(&format!("ad^{k} vs {k}! a_{k}(Lambda)"), &ad_k.sub(&expected))?;
    let ad_k1 = lam_op.commutator(&ad_k);
    first_mismatch(&format!("ad^{}", k + 1), &ad_k1)?;
    let mut descending = coeffs;
    descending.resize(k + 1, RatFn::zero());
    descending.reverse();
    Ok(AdCertificate {
        order: k,
        ad_k,
        ad_k1,
        coefficients: descending,
        matches: true,
    })
}

/// Checks `ad_x^j L (P_n) = (-1)^j (ad^j_Lam lambda)(P)_n` for `j = 1..=jmax`
/// and every `n` in `ns` where the right side is defined; returns the first
/// failing `(j, n)`.
pub fn duality_check(
    l: &DiffOp<Rational>,
    polys: &[XPoly<Rational>],
    lam_op: &ShiftOp,
    jmax: usize,
    ns: std::ops::RangeInclusive<usize>,
) -> Result<usize, (usize, usize)> {
    let lambda = l.lambda();
    let general = l.to_general();
    let mut checked = 0;
    for j in 1..=jmax {
        let lhs_op = general.ad_x_power(j);
        let rhs_op = ad_power(lam_op, &lambda, j);
        let sign = Rational::from_integer(if j % 2 == 0 { 1 } else { -1 }.into());
        for n in ns.clone() {
            let Some(p) = polys.get(n) else { break };
            let rhs = match rhs_op.apply_at(polys, n) {
                Ok(Some(r)) => r,
                Ok(None) => continue,
                Err(_) => return Err((j, n)),
            };
            if lhs_op.apply(p) != rhs.scale(&sign) {
                return Err((j, n));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// The three difference identities for
/// `lambda(n) = (n)_3 + nu (n)_2 + mu n` with symbolic `nu`, `mu`.
#[derive(Clone, Debug)]
pub struct DeltaReport {
    /// `Delta^3 lambda`.
    pub third_difference: MPoly,
    /// `-lambda(n-6) + 3 lambda(n-4) - 3 lambda(n-2) + lambda(n)`.
    pub step_two: MPoly,
    /// `lambda(n-3) - 3 lambda(n-2) + 3 lambda(n-1) - lambda(n)`.
    pub step_one: MPoly,
}

impl DeltaReport {
    pub fn holds(&self) -> bool {
        self.third_difference == MPoly::from_i64(6)
            && self.step_two == MPoly::from_i64(48)
            && self.step_one == MPoly::from_i64(-6)
    }
}

pub fn delta_identities() -> DeltaReport {
    let lam = &(&falling_factorial_poly(0, 3) + &(&MPoly::var("nu") * &falling_factorial_poly(0, 2)))
        + &(&MPoly::var("mu") * &MPoly::var_n());
    let s = |k: i64| lam.shift_n(k);
    let three = |p: MPoly| p.scale(&Rational::from_integer(3.into()));
    DeltaReport {
        third_difference: &(&(&s(3) - &three(s(2))) + &three(s(1))) - &lam,
        step_two: &(&(&three(s(-4)) - &s(-6)) - &three(s(-2))) + &lam,
        step_one: &(&(&s(-3) - &three(s(-2))) + &three(s(-1))) - &lam,
    }
}
