use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::format_rational;
use super::{ExactError, Rational};

/// Name of the discrete spectral variable. Always ordered first in a context.
pub const VAR_N: &str = "n";

fn var_order(a: &str, b: &str) -> Ordering {
    match (a == VAR_N, b == VAR_N) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        // descending, so a32 > a31 > a30 > a21 > ... reads like the usual notation
        _ => b.cmp(a),
    }
}

/// Immutable, canonically ordered list of variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Context(Arc<[String]>);

impl Context {
    pub fn new<I, S>(vars: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = vars.into_iter().map(Into::into).collect();
        v.sort_by(|a, b| var_order(a, b));
        v.dedup();
        Context(v.into())
    }

    pub fn empty() -> Self {
        Context(Vec::new().into())
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn union(&self, other: &Context) -> Context {
        if self == other || other.is_empty() {
            return self.clone();
        }
        if self.is_empty() {
            return other.clone();
        }
        Context::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    fn is_subset_of(&self, other: &Context) -> bool {
        self.0.iter().all(|v| other.index_of(v).is_some())
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector, ordered graded-lexicographically (context order decides ties).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len].into())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored. Binary operations align contexts by variable-name union, so
/// values built in different contexts can be mixed freely.
#[derive(Clone)]
pub struct MPoly {
    ctx: Context,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            ctx: Context::empty(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(0), c);
        }
        MPoly {
            ctx: Context::empty(),
            terms,
        }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(name: &str) -> Self {
        let ctx = Context::new([name]);
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1].into()), Rational::one());
        MPoly { ctx, terms }
    }

    pub fn var_n() -> Self {
        Self::var(VAR_N)
    }

    /// Builds from `(exponents, coefficient)` pairs in the given context.
    pub fn from_terms<I>(ctx: Context, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), ctx.len(), "exponent vector length must match context");
            let slot = map.entry(Monomial(e.into())).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        MPoly { ctx, terms: map }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// The value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Leading term under graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        Some(match self.ctx.index_of(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        })
    }

    /// Variables that actually occur.
    pub fn vars_used(&self) -> Vec<String> {
        self.ctx
            .vars()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn contains_var(&self, var: &str) -> bool {
        match self.ctx.index_of(var) {
            Some(i) => self.terms.keys().any(|m| m.0[i] > 0),
            None => false,
        }
    }

    /// Re-expresses in a larger context.
    pub fn lift(&self, ctx: &Context) -> MPoly {
        if &self.ctx == ctx {
            return self.clone();
        }
        debug_assert!(self.ctx.is_subset_of(ctx));
        let map: Vec<usize> = self
            .ctx
            .vars()
            .iter()
            .map(|v| ctx.index_of(v).expect("context must be a superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; ctx.len()];
                for (old, &new) in map.iter().enumerate() {
                    e[new] = m.0[old];
                }
                (Monomial(e.into()), c.clone())
            })
            .collect();
        MPoly {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Drops variables that do not occur.
    pub fn compact(&self) -> MPoly {
        let used = self.vars_used();
        if used.len() == self.ctx.len() {
            return self.clone();
        }
        let ctx = Context::new(used.iter().cloned());
        let keep: Vec<usize> = ctx
            .vars()
            .iter()
            .map(|v| self.ctx.index_of(v).unwrap())
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        MPoly { ctx, terms }
    }

    fn aligned<'a>(a: &'a MPoly, b: &'a MPoly) -> (Context, Cow<'a, MPoly>, Cow<'a, MPoly>) {
        if a.ctx == b.ctx {
            return (a.ctx.clone(), Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let ctx = a.ctx.union(&b.ctx);
        let ca = if a.ctx == ctx { Cow::Borrowed(a) } else { Cow::Owned(a.lift(&ctx)) };
        let cb = if b.ctx == ctx { Cow::Borrowed(b) } else { Cow::Owned(b.lift(&ctx)) };
        (ctx, ca, cb)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_scaled(&self, other: &MPoly, sign: &Rational) -> MPoly {
        let (ctx, a, b) = Self::aligned(self, other);
        let mut terms = a.terms.clone();
        for (m, c) in b.terms.iter() {
            match terms.get_mut(m) {
                Some(v) => {
                    *v += c * sign;
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c * sign);
                }
            }
        }
        MPoly { ctx, terms }
    }

    fn mul_impl(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        let (ctx, a, b) = Self::aligned(self, other);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in a.terms.iter() {
            for (mb, cb) in b.terms.iter() {
                let m = ma.mul(mb);
                let p = ca * cb;
                match terms.get_mut(&m) {
                    Some(v) => *v += p,
                    None => {
                        terms.insert(m, p);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { ctx, terms }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (ctx, a, b) = Self::aligned(self, d);
        let (lm, lc) = b.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let lc_inv = lc.recip();
        let mut rem = a.into_owned().terms;
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = &c * &lc_inv;
            for (dm, dc) in b.terms.iter() {
                let key = dm.mul(&qm);
                let delta = dc * &qc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quot.insert(qm, qc);
        }
        Some(MPoly { ctx, terms: quot })
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// Splits into `(c, p)` with `self = c * p`, `p` integral, primitive and with
    /// positive leading coefficient.
    pub fn primitive(&self) -> (Rational, MPoly) {
        if self.is_zero() {
            return (Rational::zero(), MPoly::zero());
        }
        let mut c = self.content();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        (c.clone(), self.scale(&c.recip()))
    }

    /// Coefficients with respect to `var`, indexed by power; each is free of `var`.
    pub fn coeffs_in(&self, var: &str) -> Vec<MPoly> {
        let Some(idx) = self.ctx.index_of(var) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in self.terms.iter() {
            let e = m.0[idx] as usize;
            let mut rest = m.0.to_vec();
            rest[idx] = 0;
            out[e].insert(Monomial(rest.into()), c.clone());
        }
        out.into_iter()
            .map(|terms| MPoly {
                ctx: self.ctx.clone(),
                terms,
            })
            .collect()
    }

    /// Inverse of [`MPoly::coeffs_in`].
    pub fn from_coeffs_in(var: &str, coeffs: &[MPoly]) -> MPoly {
        let v = MPoly::var(var);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &v) + c;
        }
        acc
    }

    /// Substitutes `var -> var + k`.
    pub fn shift(&self, var: &str, k: i64) -> MPoly {
        let Some(idx) = self.ctx.index_of(var) else {
            return self.clone();
        };
        if k == 0 {
            return self.clone();
        }
        let kq = Rational::from_integer(k.into());
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            let e = m.0[idx];
            // (v + k)^e = sum_i C(e, i) k^(e-i) v^i
            let mut binom = BigInt::one();
            for i in (0..=e).rev() {
                let coeff = c * Rational::from_integer(binom.clone()) * num_traits::pow(kq.clone(), (e - i) as usize);
                let mut ex = m.0.to_vec();
                ex[idx] = i;
                let key = Monomial(ex.into());
                match terms.get_mut(&key) {
                    Some(v) => *v += coeff,
                    None => {
                        terms.insert(key, coeff);
                    }
                }
                if i > 0 {
                    // C(e, i-1) = C(e, i) * i / (e - i + 1)
                    binom = binom * BigInt::from(i) / BigInt::from(e - i + 1);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Substitutes `n -> n + k`.
    pub fn shift_n(&self, k: i64) -> MPoly {
        self.shift(VAR_N, k)
    }

    /// Substitutes a polynomial for a variable.
    pub fn substitute(&self, var: &str, value: &MPoly) -> MPoly {
        if !self.contains_var(var) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(var);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc.drop_var(var)
    }

    fn drop_var(&self, var: &str) -> MPoly {
        match self.ctx.index_of(var) {
            Some(i) if !self.contains_var(var) => {
                let ctx = Context::new(self.ctx.vars().iter().filter(|v| *v != var).cloned());
                let terms = self
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let mut e = m.0.to_vec();
                        e.remove(i);
                        (Monomial(e.into()), c.clone())
                    })
                    .collect();
                MPoly { ctx, terms }
            }
            _ => self.clone(),
        }
    }

    /// Substitutes a rational value for a variable; the variable leaves the context.
    pub fn specialize(&self, var: &str, value: &Rational) -> MPoly {
        self.substitute(var, &MPoly::constant(value.clone()))
    }

    /// Specializes every bound variable.
    pub fn evaluate(&self, bindings: &BTreeMap<String, Rational>) -> MPoly {
        let mut p = self.clone();
        for (k, v) in bindings {
            p = p.specialize(k, v);
        }
        p
    }

    /// Value at an integer `n`; any other free variable is an error.
    pub fn eval_n(&self, n: i64) -> Result<Rational, ExactError> {
        let p = self.specialize(VAR_N, &Rational::from_integer(n.into()));
        match p.constant_value() {
            Some(c) => Ok(c),
            None => Err(ExactError::Unbound(p.vars_used().join(","))),
        }
    }

    /// Keeps the terms whose combined degree in `vars` is at most `max`.
    pub fn truncate_degree_in(&self, vars: &[String], max: u32) -> MPoly {
        let idx: Vec<usize> = vars.iter().filter_map(|v| self.ctx.index_of(v)).collect();
        MPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| idx.iter().map(|&i| m.0[i]).sum::<u32>() <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (v, &e) in self.ctx.vars().iter().zip(m.0.iter()) {
            match e {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx == other.ctx {
            return self.terms == other.terms;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (_, a, b) = Self::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for MPoly {}

impl fmt::Display for MPoly {
    /// Prints in the parser's grammar, highest term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = self.fmt_monomial(m);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.add_scaled(rhs, &Rational::one())
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        self.add_scaled(rhs, &-Rational::one())
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly::one()
    }
}

impl From<Rational> for MPoly {
    fn from(c: Rational) -> Self {
        MPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> MPoly {
        MPoly::var_n()
    }
    fn c(v: i64) -> MPoly {
        MPoly::from_i64(v)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&n() + &c(1)) * &(&n() - &c(1));
        assert_eq!(p, &n().pow(2) - &c(1));
        assert_eq!(p.to_string(), "n^2 - 1");
    }

    #[test]
    fn additive_identity_and_mixed_contexts() {
        let a31 = MPoly::var("a31");
        let p = &(&n() * &a31) * &n();
        assert_eq!(p.to_string(), "n^2*a31");
        assert_eq!(&p + &MPoly::zero(), p);
        assert_eq!(p.context().vars(), ["n", "a31"]);
    }

    #[test]
    fn shifts() {
        assert_eq!(n().pow(2).shift_n(1), &(&n().pow(2) + &c(2).mul(n())) + &c(1));
        let a31 = MPoly::var("a31");
        let p = &a31 * &n();
        assert_eq!(p.shift_n(-2), &p - &(&c(2) * &a31));
        assert_eq!(p.shift_n(5).shift_n(-5), p);
    }

    #[test]
    fn third_difference_of_falling_cubic() {
        // Δ³ (n)_3 = 6
        let f = crate::exactnum::falling_factorial_poly(0, 3);
        let d3 = &(&(&f.shift_n(3) - &f.shift_n(2).scale(&Rational::from_integer(3.into())))
            + &f.shift_n(1).scale(&Rational::from_integer(3.into())))
            - &f;
        assert_eq!(d3, c(6));
    }

    #[test]
    fn exact_division() {
        let p = &n().pow(2) - &c(1);
        assert_eq!(p.exact_div(&(&n() - &c(1))), Some(&n() + &c(1)));
        assert_eq!(p.exact_div(&(&n() - &c(2))), None);
        let a = MPoly::var("a11");
        let q = &(&n() + &a) * &(&n() - &a.pow(2));
        assert_eq!(q.exact_div(&(&n() + &a)), Some(&n() - &a.pow(2)));
    }

    #[test]
    fn primitive_part_has_positive_leading_coefficient() {
        let p = (&n().scale(&Rational::new((-4).into(), 3.into()))) + &c(2);
        let (k, q) = p.primitive();
        assert_eq!(q.to_string(), "2*n - 3");
        assert_eq!(k, Rational::new((-2).into(), 3.into()));
    }

    #[test]
    fn coefficients_round_trip() {
        let a = MPoly::var("a20");
        let p = &(&n().pow(3) * &a) + &(&n() * &c(7));
        let cs = p.coeffs_in(VAR_N);
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[3], a);
        assert_eq!(MPoly::from_coeffs_in(VAR_N, &cs), p);
    }

    #[test]
    fn specialize_removes_variable() {
        let a = MPoly::var("a11");
        let p = &(&c(6) * &n()) + &(&(&c(3) * &a) - &c(12));
        let q = p.specialize("a11", &Rational::from_integer(4.into()));
        assert_eq!(q, &c(6) * &n());
        assert_eq!(q.context().vars(), ["n"]);
    }
}
