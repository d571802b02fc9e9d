//! Polynomial gcd over Q.
//!
//! `gcd` is the recursive primitive-PRS algorithm: pick a main variable,
//! split off contents (gcds of coefficients, computed recursively), then run
//! pseudo-remainder sequences on the primitive parts. It is only used on the
//! comparatively small denominators met by `RatFn`, so no modular machinery.

use num_traits::Zero;

use super::MPoly;

/// Normalized gcd: integral, primitive, positive leading coefficient.
/// `gcd(0, 0) = 0`; the gcd of nonzero constants is `1`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a == b {
        return a.primitive().1;
    }
    let mut vars = a.vars_used();
    vars.extend(b.vars_used());
    let ctx = super::Context::new(vars);
    let v = ctx.vars()[0].clone();

    if !a.contains_var(&v) {
        return gcd(a, &content_in(b, &v));
    }
    if !b.contains_var(&v) {
        return gcd(&content_in(a, &v), b);
    }
    if ctx.len() == 1 {
        return univariate_gcd(a, b);
    }
    let ca = content_in(a, &v);
    let cb = content_in(b, &v);
    let gc = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = prs_gcd(pa, pb, &v);
    (&gc * &g).primitive().1
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub(crate) fn content_in(p: &MPoly, var: &str) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_in(p: &MPoly, var: &str) -> MPoly {
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides")
}

fn prem(f: &MPoly, g: &MPoly, var: &str) -> MPoly {
    let mut r = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let dg = gc.len() - 1;
    let lc = &gc[dg];
    if r.len() <= dg {
        return f.clone();
    }
    for k in (dg..r.len()).rev() {
        let t = r[k].clone();
        for ri in r.iter_mut().take(k + 1) {
            *ri = lc * &*ri;
        }
        if !t.is_zero() {
            for (j, gj) in gc.iter().enumerate() {
                r[k - dg + j] = &r[k - dg + j] - &(&t * gj);
            }
        }
        debug_assert!(r[k].is_zero());
    }
    r.truncate(dg);
    MPoly::from_coeffs_in(var, &r)
}

fn prs_gcd(a: MPoly, b: MPoly, var: &str) -> MPoly {
    let (mut f, mut g) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        let r = prem(&f, &g, var);
        if r.is_zero() {
            return primitive_in(&g, var).primitive().1;
        }
        if r.degree_in(var) == Some(0) {
            return MPoly::one();
        }
        f = g;
        g = primitive_in(&r, var);
    }
}

/// Euclid over Q for polynomials in (at most) one common variable.
pub fn univariate_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let mut vars = a.vars_used();
    vars.extend(b.vars_used());
    vars.sort();
    vars.dedup();
    assert!(vars.len() <= 1, "univariate_gcd called on a multivariate input");
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    let Some(v) = vars.first() else {
        return MPoly::one();
    };
    let mut f = a.coeffs_in(v);
    let mut g = b.coeffs_in(v);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    let as_q = |c: &MPoly| c.constant_value().expect("univariate coefficients are constants");
    while g.iter().any(|c| !c.is_zero()) {
        // f mod g
        let dg = g.len() - 1;
        let lg = as_q(&g[dg]);
        while f.len() > dg && !f.is_empty() {
            let k = f.len() - 1;
            let t = as_q(&f[k]) / &lg;
            if !t.is_zero() {
                for (j, gj) in g.iter().enumerate() {
                    f[k - dg + j] = &f[k - dg + j] - &gj.scale(&t);
                }
            }
            f.pop();
        }
        while f.last().is_some_and(|c| c.is_zero()) {
            f.pop();
        }
        std::mem::swap(&mut f, &mut g);
    }
    MPoly::from_coeffs_in(v, &f).primitive().1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn n() -> MPoly {
        MPoly::var_n()
    }
    fn c(v: i64) -> MPoly {
        MPoly::from_i64(v)
    }

    #[test]
    fn univariate_common_factor() {
        let a = &(&n() - &c(1)) * &(&n() + &c(2));
        let b = &(&n() - &c(1)) * &(&n() - &c(3));
        assert_eq!(univariate_gcd(&a, &b), &n() - &c(1));
        assert_eq!(gcd(&a, &b), &n() - &c(1));
        assert!(gcd(&(&n() + &c(1)), &(&n() + &c(2))).is_one());
    }

    #[test]
    fn multivariate_common_factor() {
        let a11 = MPoly::var("a11");
        let a20 = MPoly::var("a20");
        let f = &(&(&c(2) * &n()) + &a11) - &c(4);
        let g1 = &(&a20 * &n()) + &c(1);
        let g2 = &a11.pow(2) - &(&n() * &a20);
        let a = &f * &g1;
        let b = &(&f * &f) * &g2;
        assert_eq!(gcd(&a, &b), f);
        assert!(gcd(&g1, &g2).is_one());
    }

    #[test]
    fn content_only_gcd() {
        let a = MPoly::var("a11");
        let p = &a * &(&n() + &c(2));
        let q = &a * &(&n() - &c(2));
        assert_eq!(gcd(&p, &q), a);
        let half = MPoly::constant(Rational::new(1.into(), 2.into()));
        assert!(gcd(&half, &p).is_one());
    }
}
