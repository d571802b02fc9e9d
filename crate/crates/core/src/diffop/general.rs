use std::fmt;

use super::{DiffOp, XPoly};
use crate::field::Field;

/// `sum_{i=0..k} a_i(x) d^i` with no shape restriction.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyDiffOp<F> {
    coeffs: Vec<XPoly<F>>,
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t as i64 + 1))
}

impl<F: Field> PolyDiffOp<F> {
    /// `coeffs[i]` is `a_i`; trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<XPoly<F>>) -> Self {
        while coeffs.last().is_some_and(XPoly::is_zero) {
            coeffs.pop();
        }
        PolyDiffOp { coeffs }
    }

    pub fn zero() -> Self {
        PolyDiffOp { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::new(vec![XPoly::one()])
    }

    /// Multiplication by `x`.
    pub fn x() -> Self {
        Self::new(vec![XPoly::x()])
    }

    /// `d/dx`.
    pub fn d() -> Self {
        Self::new(vec![XPoly::zero(), XPoly::one()])
    }

    pub fn coeff(&self, i: usize) -> XPoly<F> {
        self.coeffs.get(i).cloned().unwrap_or_else(XPoly::zero)
    }

    pub fn coeffs(&self) -> &[XPoly<F>] {
        &self.coeffs
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn apply(&self, q: &XPoly<F>) -> XPoly<F> {
        let mut acc = XPoly::zero();
        let mut d = q.clone();
        for a in &self.coeffs {
            if d.is_zero() {
                break;
            }
            acc = &acc + &(a * &d);
            d = d.derivative();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// `self ∘ other`, by Leibniz: `d^i b = sum_k C(i,k) b^(k) d^(i-k)`.
    pub fn compose(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![XPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let mut bk = b.clone();
                for k in 0..=i {
                    if bk.is_zero() {
                        break;
                    }
                    let term = (a * &bk).scale(&F::from_i64(binomial(i, k)));
                    out[i + j - k] = &out[i + j - k] + &term;
                    bk = bk.derivative();
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    /// `ad_x L = x L - L x`.
    pub fn ad_x(&self) -> Self {
        Self::x().commutator(self)
    }

    /// `ad_x^j L`.
    pub fn ad_x_power(&self, j: usize) -> Self {
        (0..j).fold(self.clone(), |acc, _| acc.ad_x())
    }

    /// Back to the restricted shape when `a_0 = 0`.
    pub fn to_diffop(&self) -> Option<DiffOp<F>> {
        if !self.coeff(0).is_zero() || self.coeffs.len() < 2 {
            return None;
        }
        DiffOp::new(self.coeffs[1..].to_vec()).ok()
    }
}

impl<F: Field> fmt::Display for PolyDiffOp<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| {
                let d = match i {
                    0 => String::new(),
                    1 => "D".to_string(),
                    _ => format!("D^{i}"),
                };
                match (i, a.to_string().as_str()) {
                    (0, s) => s.to_string(),
                    (_, "1") => d,
                    (_, s) => format!("({s})*{d}"),
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
