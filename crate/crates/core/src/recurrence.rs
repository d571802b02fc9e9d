//! Finite recurrences `x P_n = P_{n+1} + sum_j b_j(n) P_{n-j}` extracted from
//! concrete eigenpolynomial sequences, and rational reconstruction of the
//! coefficient columns.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::diffop::{DiffOp, XPoly};
use crate::exactnum::{ratfn_reduce, MPoly, RatFn, Rational};
use crate::field::Field;
use crate::linalg::Echelon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("polynomial of degree {degree} exceeds the sequence length {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("need N >= 2, got {0}")]
    TooShort(usize),
    #[error("entry {0} is not monic of degree {0}")]
    NotMonic(usize),
    #[error("need at least {need} samples, have {have}")]
    InsufficientSamples { have: usize, need: usize },
    #[error("no rational function fits: {0}")]
    NoFit(String),
}

/// Monic polynomials `P_0..=P_N` with `deg P_n = n`.
#[derive(Clone, Debug)]
pub struct EigenSeq<F> {
    operator: Option<DiffOp<F>>,
    polys: Vec<XPoly<F>>,
}

impl<F: Field> EigenSeq<F> {
    pub(crate) fn new(operator: Option<DiffOp<F>>, polys: Vec<XPoly<F>>) -> Self {
        EigenSeq { operator, polys }
    }

    /// A sequence without a known operator (e.g. a Darboux transform).
    pub fn from_polys(polys: Vec<XPoly<F>>) -> Result<Self, RecurrenceError> {
        for (n, p) in polys.iter().enumerate() {
            if p.degree() != Some(n) || !p.is_monic() {
                return Err(RecurrenceError::NotMonic(n));
            }
        }
        Ok(EigenSeq { operator: None, polys })
    }

    pub fn operator(&self) -> Option<&DiffOp<F>> {
        self.operator.as_ref()
    }

    pub fn polys(&self) -> &[XPoly<F>] {
        &self.polys
    }

    /// Largest index `N`.
    pub fn max_index(&self) -> usize {
        self.polys.len().saturating_sub(1)
    }
}

/// Coefficients `c` with `q = sum c_m P_m`, `c.len() = N + 1`.
pub fn expand_in_eigenbasis<F: Field>(seq: &EigenSeq<F>, q: &XPoly<F>) -> Result<Vec<F>, RecurrenceError> {
    let max = seq.max_index();
    let mut out = vec![F::zero(); max + 1];
    let Some(deg) = q.degree() else {
        return Ok(out);
    };
    if deg > max || seq.polys.is_empty() {
        return Err(RecurrenceError::DegreeTooHigh { degree: deg, max });
    }
    let mut r = q.clone();
    for m in (0..=deg).rev() {
        let c = r.coeff(m);
        if c.is_zero() {
            continue;
        }
        r = &r - &seq.polys[m].scale(&c);
        out[m] = c;
    }
    Ok(out)
}

/// Detected recurrence bandwidth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bandwidth {
    Finite(usize),
    /// The largest nonzero offset keeps growing; `row` is the first row
    /// whose largest nonzero offset `j` exceeds everything in the first half.
    Unbounded { row: usize, j: usize },
}

#[derive(Clone, Debug)]
pub struct RecTable<F> {
    rows: Vec<Vec<F>>,
    bandwidth: Bandwidth,
    support: BTreeSet<usize>,
    reconstructed: Option<BTreeMap<usize, RatFn>>,
    valid_from: BTreeMap<usize, usize>,
}

/// `b_j(n)` for `n = 0..N-1`, `j = 0..=n`.
pub fn recurrence_table<F: Field>(seq: &EigenSeq<F>) -> Result<RecTable<F>, RecurrenceError> {
    let big_n = seq.max_index();
    if seq.polys.len() < 3 {
        return Err(RecurrenceError::TooShort(big_n));
    }
    let mut rows = Vec::with_capacity(big_n);
    for n in 0..big_n {
        let rest = &seq.polys[n].mul_x() - &seq.polys[n + 1];
        let c = expand_in_eigenbasis(seq, &rest)?;
        rows.push((0..=n).map(|j| c[n - j].clone()).collect::<Vec<F>>());
    }
    let top: Vec<Option<usize>> = rows
        .iter()
        .map(|r: &Vec<F>| r.iter().rposition(|b| !b.is_negligible()))
        .collect();
    let mut support = BTreeSet::new();
    for r in &rows {
        for (j, b) in r.iter().enumerate() {
            if !b.is_negligible() {
                support.insert(j);
            }
        }
    }
    let half = big_n / 2;
    let first = top[..half].iter().flatten().max().copied();
    let bandwidth = match top[half..].iter().enumerate().find(|(_, t)| match (t, first) {
        (Some(t), Some(f)) => *t > f,
        (Some(_), None) => half > 0,
        _ => false,
    }) {
        Some((k, t)) => Bandwidth::Unbounded {
            row: half + k,
            j: t.expect("nonzero row"),
        },
        None => Bandwidth::Finite(top.iter().flatten().max().copied().unwrap_or(0)),
    };
    Ok(RecTable {
        rows,
        bandwidth,
        support,
        reconstructed: None,
        valid_from: BTreeMap::new(),
    })
}

impl<F: Field> RecTable<F> {
    /// Number of rows, i.e. `N`.
    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// `b_j(n)`, `None` when `j > n` or `n >= N`.
    pub fn b(&self, j: usize, n: usize) -> Option<&F> {
        self.rows.get(n).and_then(|r| r.get(j))
    }

    pub fn bandwidth(&self) -> &Bandwidth {
        &self.bandwidth
    }

    pub fn d(&self) -> Option<usize> {
        match self.bandwidth {
            Bandwidth::Finite(d) => Some(d),
            Bandwidth::Unbounded { .. } => None,
        }
    }

    /// Offsets `j` with some nonzero `b_j(n)`.
    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn reconstructed(&self) -> Option<&BTreeMap<usize, RatFn>> {
        self.reconstructed.as_ref()
    }

    /// First `n` at which the reconstructed `b_j` agrees with the table.
    pub fn valid_from(&self, j: usize) -> Option<usize> {
        self.valid_from.get(&j).copied()
    }

    /// `(n, b_j(n))` for every recorded `n >= j`.
    pub fn column(&self, j: usize) -> Vec<(i64, F)> {
        (j..self.rows.len()).map(|n| (n as i64, self.rows[n][j].clone())).collect()
    }

    /// Re-checks `x P_n - P_{n+1} - sum b_j(n) P_{n-j} = 0` on every row.
    pub fn verify(&self, seq: &EigenSeq<F>) -> bool {
        self.rows.iter().enumerate().all(|(n, r)| {
            let mut rest = &seq.polys[n].mul_x() - &seq.polys[n + 1];
            for (j, b) in r.iter().enumerate() {
                rest = &rest - &seq.polys[n - j].scale(b);
            }
            rest.is_negligible()
        })
    }

    /// Columns `j = 0..=d` (all recorded columns when unbounded).
    fn width(&self) -> usize {
        match self.bandwidth {
            Bandwidth::Finite(d) => d,
            Bandwidth::Unbounded { .. } => self.support.last().copied().unwrap_or(0),
        }
    }

    /// CSV with header `n,b0,..,bd`; entries with `j > n` are left empty.
    pub fn to_csv(&self) -> String {
        let d = self.width();
        let mut out = String::from("n");
        for j in 0..=d {
            let _ = write!(out, ",b{j}");
        }
        out.push('\n');
        for (n, r) in self.rows.iter().enumerate() {
            let _ = write!(out, "{n}");
            for j in 0..=d {
                match r.get(j) {
                    Some(b) => {
                        let _ = write!(out, ",{b}");
                    }
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let bandwidth = match &self.bandwidth {
            Bandwidth::Finite(d) => json!({ "d": d }),
            Bandwidth::Unbounded { row, j } => json!({ "unbounded": { "row": row, "j": j } }),
        };
        let rows: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .map(|(n, r)| json!({ "n": n, "b": r.iter().map(|b| b.to_string()).collect::<Vec<_>>() }))
            .collect();
        let mut v = json!({
            "N": self.rows.len(),
            "bandwidth": bandwidth,
            "support": self.support.iter().collect::<Vec<_>>(),
            "rows": rows,
        });
        if let Some(rec) = &self.reconstructed {
            let m: serde_json::Map<String, Value> =
                rec.iter().map(|(j, f)| (format!("b{j}"), Value::String(f.to_string()))).collect();
            v["reconstructed"] = Value::Object(m);
            let from: serde_json::Map<String, Value> =
                self.valid_from.iter().map(|(j, n)| (format!("b{j}"), json!(n))).collect();
            v["valid_from"] = Value::Object(from);
        }
        v
    }
}

/// Degree bounds and validation size for column reconstruction.
#[derive(Clone, Copy, Debug)]
pub struct ReconstructOptions {
    pub max_num_degree: usize,
    pub max_den_degree: usize,
    pub holdout: usize,
    /// Leading samples of a column that may be skipped when no single
    /// rational function fits them all (a closed form can degenerate to
    /// `0/0` at small `n`, as Bessel `b_0(0)` does).
    pub max_skip: usize,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions {
            max_num_degree: 8,
            max_den_degree: 8,
            holdout: 3,
            max_skip: 2,
        }
    }
}

impl RecTable<Rational> {
    /// Fits every column `j <= d` as a rational function of `n`.
    pub fn reconstruct(&mut self, opts: ReconstructOptions) -> Result<&BTreeMap<usize, RatFn>, RecurrenceError> {
        let mut out = BTreeMap::new();
        let mut from = BTreeMap::new();
        for j in 0..=self.width() {
            let full = self.column(j);
            let mut last = None;
            for skip in 0..=opts.max_skip.min(full.len()) {
                let col = &full[skip..];
                let room = col.len().saturating_sub(opts.holdout.max(3) + 2);
                let dn = opts.max_num_degree.min(room);
                let dd = opts.max_den_degree.min(room - dn);
                match reconstruct_rational_with(col, dn, dd, opts.holdout) {
                    Ok(f) => {
                        out.insert(j, f);
                        from.insert(j, j + skip);
                        last = None;
                        break;
                    }
                    Err(e) => last = Some(e),
                }
            }
            if let Some(e) = last {
                return Err(RecurrenceError::NoFit(format!("b{j}: {e}")));
            }
        }
        self.reconstructed = Some(out);
        self.valid_from = from;
        Ok(self.reconstructed.as_ref().expect("just set"))
    }
}

/// Fits `value = P(n)/Q(n)` with `deg P <= deg_num`, `deg Q <= deg_den`,
/// holding back three samples for validation.
pub fn reconstruct_rational(samples: &[(i64, Rational)], deg_num: usize, deg_den: usize) -> Result<RatFn, RecurrenceError> {
    reconstruct_rational_with(samples, deg_num, deg_den, 3)
}

/// As [`reconstruct_rational`] with `holdout` (at least 3) validation samples.
/// Degree pairs are scanned by increasing total degree; the first pair whose
/// fit reproduces every sample wins.
pub fn reconstruct_rational_with(
    samples: &[(i64, Rational)],
    deg_num: usize,
    deg_den: usize,
    holdout: usize,
) -> Result<RatFn, RecurrenceError> {
    let holdout = holdout.max(3);
    let need = deg_num + deg_den + 2 + holdout;
    if samples.len() < need {
        return Err(RecurrenceError::InsufficientSamples {
            have: samples.len(),
            need,
        });
    }
    let fit = &samples[..samples.len() - holdout];
    let powers: Vec<Vec<Rational>> = samples
        .iter()
        .map(|(n, _)| {
            let n = Rational::from_integer((*n).into());
            let mut v = vec![Rational::one()];
            for _ in 0..deg_num.max(deg_den) {
                let next = v.last().expect("nonempty") * &n;
                v.push(next);
            }
            v
        })
        .collect();
    for total in 0..=deg_num + deg_den {
        for a in 0..=total.min(deg_num) {
            let b = total - a;
            if b > deg_den {
                continue;
            }
            let mut ech = Echelon::new(a + b + 2);
            for (i, (_, v)) in fit.iter().enumerate() {
                let mut row = powers[i][..=a].to_vec();
                row.extend(powers[i][..=b].iter().map(|p| -(p * v)));
                ech.insert(row);
            }
            for sol in ech.nullspace() {
                let (p, q) = sol.split_at(a + 1);
                let eval = |c: &[Rational], i: usize| {
                    c.iter().zip(&powers[i]).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
                };
                let ok = samples.iter().enumerate().all(|(i, (_, v))| {
                    let den = eval(q, i);
                    !den.is_zero() && eval(p, i) / den == *v
                });
                if ok {
                    let to_poly = |c: &[Rational]| {
                        MPoly::from_coeffs_in(
                            crate::exactnum::VAR_N,
                            &c.iter().map(|x| MPoly::constant(x.clone())).collect::<Vec<_>>(),
                        )
                    };
                    return ratfn_reduce(&to_poly(p), &to_poly(q)).map_err(|e| RecurrenceError::NoFit(e.to_string()));
                }
            }
        }
    }
    Err(RecurrenceError::NoFit(format!(
        "no fit with numerator degree <= {deg_num} and denominator degree <= {deg_den}"
    )))
}
