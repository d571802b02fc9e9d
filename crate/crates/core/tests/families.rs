use bochner_lab::catalog::{family_operator, sample_specs, FamilySpec};
use bochner_lab::recurrence::{recurrence_table, ReconstructOptions};
use bochner_lab::{Rational, XPoly};

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

#[test]
fn every_sample_has_a_verified_finite_recurrence() {
    for spec in sample_specs() {
        let op = family_operator(&spec).unwrap();
        let seq = op.eigen_sequence(24).unwrap();
        let t = recurrence_table(&seq).unwrap();
        assert!(t.verify(&seq), "{spec}");
        let d = t.d().unwrap_or_else(|| panic!("{spec}: unbounded"));
        assert!(d <= spec.order().unwrap(), "{spec}: d = {d}");
    }
}

#[test]
fn eigenpolynomials_are_monic_with_matching_degree() {
    let op = family_operator(&FamilySpec::Jacobi { alpha: q(1, 2), beta: q(-1, 3) }).unwrap();
    let seq = op.eigen_sequence(12).unwrap();
    for (n, p) in seq.polys().iter().enumerate() {
        assert_eq!(p.degree(), Some(n));
        assert_eq!(p.coeff(n), q(1, 1));
    }
}

#[test]
fn hermite_recurrence_by_hand() {
    // x He_n = He_{n+1} + n He_{n-1} with He_0 = 1, He_1 = x
    let op = family_operator(&FamilySpec::Hermite).unwrap();
    let seq = op.eigen_sequence(10).unwrap();
    let x = XPoly::from_coeffs(vec![q(0, 1), q(1, 1)]);
    let mut prev = XPoly::from_coeffs(vec![q(1, 1)]);
    let mut cur = x.clone();
    assert_eq!(seq.polys()[0], prev);
    assert_eq!(seq.polys()[1], cur);
    for n in 1..10 {
        let next = &(&x * &cur) - &prev.scale(&q(n, 1));
        prev = cur;
        cur = next;
        assert_eq!(seq.polys()[n as usize + 1], cur);
    }
}

#[test]
fn laguerre_closed_forms_extrapolate() {
    let op = family_operator(&FamilySpec::Laguerre { alpha: q(3, 1) }).unwrap();
    let mut t = recurrence_table(&op.eigen_sequence(30).unwrap()).unwrap();
    let rec = t.reconstruct(ReconstructOptions::default()).unwrap().clone();
    for n in 0..100 {
        assert_eq!(rec[&0].eval_n(n).unwrap(), q(2 * n + 4, 1));
        assert_eq!(rec[&1].eval_n(n).unwrap(), q(n * (n + 3), 1));
    }
}
