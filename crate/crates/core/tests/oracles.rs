//! Hand-derived values and cross-module identities.

use num_complex::Complex64;
use num_traits::Zero;

use quadalg::coherent::{self, CompactParameter, HypergeomSeries};
use quadalg::diffreal;
use quadalg::fock3::{self, FockSpace};
use quadalg::measures::{self, QuadratureSpec};
use quadalg::polyalg::{self, StructurePoly};
use quadalg::rational::{self, Rational};
use quadalg::reps::{self, AlgebraLabel, RepLabel, GENERATORS};
use quadalg::{defosc, spectrum, Poly};

fn q(s: &str) -> Rational {
    rational::parse(s).unwrap()
}

fn compact(k: &str, l: &str) -> AlgebraLabel {
    AlgebraLabel::compact(q(k), q(l)).unwrap()
}

fn noncompact(k: &str, l: &str) -> AlgebraLabel {
    AlgebraLabel::noncompact(q(k), q(l)).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn casimir_polynomials() {
    let g = polyalg::discrete_antiderivative(&StructurePoly::su2());
    assert_eq!(g.g, Poly::new(vec![q("0"), q("1"), q("1")]));
    let g = polyalg::discrete_antiderivative(&StructurePoly::new(Poly::zero()));
    assert!(g.g.is_zero());

    // compact: (x+1)^3 + (l-2)(x+1)^2 + (K - l^2 - 2l + 1)(x+1)
    let (k, l) = (q("3/2"), q("7/4"));
    let kk = &k * (q("1") - &k);
    let g = polyalg::discrete_antiderivative(&StructurePoly::compact(&k, &l));
    for x in -3..6 {
        let y = rational::int(x) + q("1");
        let want = rational::pow(&y, 3) + (&l - q("2")) * &y * &y + (&kk - &l * &l - q("2") * &l + q("1")) * &y;
        assert_eq!(g.eval(&rational::int(x)), want);
    }
}

#[test]
fn casimir_values() {
    let su2 = reps::su2_rep(&q("1/2")).unwrap();
    let c = su2.casimir_value();
    assert_eq!(c.exact, q("3/4"));

    let c = reps::compact_rep(&compact("1", "1")).unwrap().casimir_value();
    assert!(c.exact.is_zero() && c.deviation <= 1e-12);

    let small = compact("1/2", "1/4");
    let c = reps::compact_rep(&small).unwrap().casimir_value();
    assert_eq!(c.exact, small.closed_form_casimir());
    assert_eq!(c.exact, q("1/64") + q("5/4") * (q("1/4") - q("1")) + q("1"));

    // g(-1) = 0 fixes the noncompact constant; the closed form is reported alongside
    let c = reps::noncompact_rep(&noncompact("1/2", "1/4"), 6).unwrap().casimir_value();
    assert_eq!(c.exact, q("-1/64"));
    assert!(c.closed_form.is_zero());
}

#[test]
fn representation_matrices() {
    let r = reps::compact_rep(&compact("1/2", "5/4")).unwrap();
    assert_eq!(r.dim, 3);
    assert!(close(r.qp[(1, 0)], 2f64.sqrt(), 1e-15) && close(r.qp[(2, 1)], 2.0, 1e-15));

    let r = reps::noncompact_rep(&noncompact("1/2", "1/4"), 4).unwrap();
    for n in 0..3 {
        assert!(close(r.qp[(n + 1, n)], ((n + 1) as f64).powf(1.5), 1e-12));
    }
    // [Q+, Q-] on interior n is -(3n^2 + 3n + 1)
    let c = &r.qp * &r.qm - &r.qm * &r.qp;
    for n in 0..3 {
        let nf = n as f64;
        assert!(close(c[(n, n)], -(3.0 * nf * nf + 3.0 * nf + 1.0), 1e-12));
    }

    let r = reps::su11_rep(&q("1/2"), 3).unwrap();
    assert!(close(r.qp[(1, 0)], 1.0, 1e-15) && close(r.qp[(2, 1)], 2.0, 1e-15));
    let r = reps::su2_rep(&q("0")).unwrap();
    assert_eq!(r.dim, 1);
    assert_eq!(r.qp[(0, 0)], 0.0);
}

#[test]
fn two_dim_family_is_compact_rep() {
    for tk in 1..=10 {
        let k = rational::frac(tk, 2);
        let fam = reps::two_dim_family(&k).unwrap();
        let l = (&k + q("1")) / q("2");
        let rep = reps::compact_rep(&AlgebraLabel::compact(k.clone(), l).unwrap()).unwrap();
        assert_eq!(fam.q0, rep.q0);
        assert_eq!(fam.qp, rep.qp);
        assert_eq!(fam.casimir_value().exact, reps::two_dim_family_casimir(&k));
    }
    assert_eq!(reps::two_dim_family_casimir(&q("2")), q("-25/8"));
}

#[test]
fn fock_restriction_matches_reps() {
    for (k, l) in [("1", "1"), ("3/2", "7/4"), ("1/2", "5/4"), ("5/2", "9/4")] {
        let lab = compact(k, l);
        let rep = reps::compact_rep(&lab).unwrap();
        for swap in [false, true] {
            let states = fock3::compact_eigenbasis(&lab, swap).unwrap();
            let cut = fock3::cutoffs_for(&states);
            let space = FockSpace::three_mode([cut[0], cut[1], cut[2]]).unwrap();
            let ops = fock3::realize_compact(&space).unwrap();
            let (q0, qp, qm) = ops.restrict(&states).unwrap();
            assert!((q0 - &rep.q0).amax() <= 1e-12);
            assert!((qp - &rep.qp).amax() <= 1e-12);
            assert!((qm - &rep.qm).amax() <= 1e-12);
        }
    }
    let lab = noncompact("3/2", "1/4");
    let rep = reps::noncompact_rep(&lab, 5).unwrap();
    let states = fock3::noncompact_eigenbasis(&lab, 5, false).unwrap();
    let cut = fock3::cutoffs_for(&states);
    let space = FockSpace::three_mode([cut[0], cut[1], cut[2]]).unwrap();
    let (q0, qp, qm) = fock3::realize_noncompact(&space).unwrap().restrict(&states).unwrap();
    assert!((q0 - &rep.q0).amax() <= 1e-12);
    assert!((qp - &rep.qp).amax() <= 1e-12);
    assert!((qm - &rep.qm).amax() <= 1e-12);
}

#[test]
fn differential_realization_matches_reps() {
    let cases: Vec<(RepLabel, Option<usize>)> = vec![
        (RepLabel::Su2 { j: q("3/2") }, None),
        (RepLabel::Su11 { k: q("1") }, Some(6)),
        (RepLabel::Quadratic(compact("3/2", "11/4")), None),
        (RepLabel::Quadratic(noncompact("5/2", "1/4")), Some(7)),
    ];
    for (label, size) in cases {
        let (ops, basis) = diffreal::build_realization(&label, size).unwrap();
        let rep = match &label {
            RepLabel::Su2 { j } => reps::su2_rep(j).unwrap(),
            RepLabel::Su11 { k } => reps::su11_rep(k, size.unwrap()).unwrap(),
            RepLabel::Quadratic(l) if l.dim().is_some() => reps::compact_rep(l).unwrap(),
            RepLabel::Quadratic(l) => reps::noncompact_rep(l, size.unwrap()).unwrap(),
        };
        let tables = diffreal::matrix_elements(&ops, &basis).unwrap();
        for (t, g) in tables.iter().zip(GENERATORS) {
            assert_eq!(t, &rep.exact_elements(g), "{label:?} {g:?}");
        }
    }
}

#[test]
fn hypergeometric_values() {
    let v = coherent::hypergeom(&HypergeomSeries::f02(1.0, 1.0).unwrap(), 0.0, 1e-15).unwrap();
    assert_eq!(v.value(), 1.0);
    let v = coherent::hypergeom(&HypergeomSeries::f11(1.0, 2.0).unwrap(), 1.0, 1e-16).unwrap();
    assert!(close(v.value(), 1.718_281_828_459_045, 1e-14));
}

#[test]
fn coherent_state_examples() {
    let lab = noncompact("3/2", "1/4");
    let s = coherent::bg_state(&lab, Complex64::new(0.0, 0.0), 3).unwrap();
    assert_eq!(s.coeffs, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]);

    let s = coherent::perelomov_noncompact(&lab, Complex64::new(0.0, 0.0), 3).unwrap();
    assert_eq!(s.coeffs[0], Complex64::new(1.0, 0.0));
    assert!(!s.divergence_flag);
    assert!(coherent::perelomov_noncompact(&lab, Complex64::new(0.1, 0.0), 3).unwrap().divergence_flag);

    let one =
        coherent::perelomov_compact(&compact("3/2", "3/4"), CompactParameter::Alpha(Complex64::new(0.0, 4.0))).unwrap();
    assert_eq!(one.coeffs.len(), 1);

    let two =
        coherent::perelomov_compact(&compact("1", "1"), CompactParameter::Alpha(Complex64::new(0.6, 0.0))).unwrap();
    assert!(close(two.coeffs[1].re / two.coeffs[0].re, 2f64.sqrt() * 0.6, 1e-14));
}

#[test]
fn moment_examples() {
    use std::f64::consts::PI;
    let lab = noncompact("1", "1/2");
    assert!(close(measures::bg_moment_target(&lab, 0).unwrap().value, 1.0 / (2.0 * PI), 1e-15));
    assert!(close(measures::bg_moment_target(&lab, 2).unwrap().value, 12.0 / PI, 1e-13));
    assert!(close(measures::perelomov_moment_target(&lab, 0).unwrap().value, 1.0 / PI, 1e-15));

    let spec = QuadratureSpec::default();
    let r = measures::kummer_integral_check(3.0, 1.0, 4.0, &spec).unwrap();
    assert_eq!(r.analytic, 1.5);
    assert!(r.error <= 1e-8);
    assert!(measures::kummer_integral_check(2.0, 2.0, 3.0, &spec).is_err());

    let rows = measures::verify_compact_resolution(&compact("1", "1"), &spec).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.deviation <= 1e-6));
    for n in 0..=3 {
        assert_eq!(measures::compact_moment_exact(&compact("3/2", "9/4"), n).unwrap(), q("1"));
    }
}

#[test]
fn spectrum_and_oscillator() {
    let degs: Vec<u64> = (0..8).map(|n| spectrum::degeneracy_report(n).degeneracy_bruteforce).collect();
    assert_eq!(degs, vec![1, 2, 4, 6, 9, 12, 16, 20]);
    assert!(spectrum::hamiltonian_deviation([6, 6, 4]).unwrap() <= 1e-12);

    let report = defosc::fermion_check().unwrap();
    assert!(report.passed());
    assert!(defosc::deform_label(&compact("1/2", "1/4")).unwrap().f.eval(&q("0")) == q("1"));
}
