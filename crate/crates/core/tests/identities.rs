//! The algebraic identities: Beardon's relation, `S_n^{(n)} = p_n`, the
//! pair expansion, Christoffel proportionality and the mixed recurrences.

mod common;

use common::*;
use ortho_bounds_core::christoffel::{
    build_mixed_recurrence, christoffel_eval, degree_law, poly_pair_expansion, CSpec,
};
use ortho_bounds_core::recurrence::corollary_inner_bounds;
use ortho_bounds_core::{bounds, BigReal, FamilySpec, Poly, Recurrence};

#[test]
fn beardon_all_families_all_m() {
    let tol = identity_tol(P);
    let mut r = rng(1);
    for fam in one_per_family() {
        let rec = Recurrence::for_family(&fam, 25, P).unwrap();
        for n in 3..=25 {
            let xs: Vec<BigReal> = (0..10).map(|_| random_point(&fam, n, &mut r, P)).collect();
            for m in 2..n {
                for x in &xs {
                    let res = rec.beardon_residual(n, m, x).unwrap();
                    assert!(res < tol, "{:?} n={n} m={m} x={x:?}: residual {res:?}", fam.id());
                }
            }
        }
    }
}

#[test]
fn full_associated_polynomial_is_p_n() {
    let mut r = rng(2);
    for fam in one_per_family() {
        let rec = Recurrence::for_family(&fam, 20, P).unwrap();
        for n in [1, 5, 12, 20] {
            let s = rec.associated_poly(n, n).unwrap();
            for _ in 0..20 {
                let x = random_point(&fam, n, &mut r, P);
                let a = s.eval(&x);
                let b = rec.eval(n, &x).unwrap();
                // coefficient-form evaluation: compare against the term scale
                let scale = s
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (c * x.powi(i as i64)).abs())
                    .fold(BigReal::zero(P), BigReal::max);
                assert!((&a - &b).abs() <= identity_tol(P) * scale, "{:?} n={n}", fam.id());
            }
        }
    }
}

#[test]
fn pair_expansion_is_beardon() {
    for fam in one_per_family() {
        let rec = Recurrence::for_family(&fam, 12, P).unwrap();
        let n = 12;
        for m in 2..n {
            let (a, b) = poly_pair_expansion(&fam, n, n - m, P).unwrap();
            let lam = rec.lambda_product(n, m);
            let want_b = rec.associated_poly(n, m - 1).unwrap().scale(&lam.recip());
            let want_a = -&rec.associated_poly(n - 1, m - 2).unwrap().scale(&lam.recip());
            for (got, want) in [(&a, &want_a), (&b, &want_b)] {
                assert_eq!(got.degree(), want.degree(), "{:?} m={m}", fam.id());
                for (g, w) in got.coeffs().iter().zip(want.coeffs()) {
                    assert!(BigReal::rel_diff(g, w) < v("1e-50"), "{:?} m={m}: {g:?} vs {w:?}", fam.id());
                }
            }
        }
        // upward targets reproduce p_target too
        let x = v("0.3");
        let (a, b) = poly_pair_expansion(&fam, 8, 11, P).unwrap();
        let p = rec.eval_all(11, &x);
        let got = a.eval(&x) * &p[8] + b.eval(&x) * &p[7];
        assert!(BigReal::rel_diff(&got, &p[11]) < v("1e-50"));
    }
}

/// The six configurations used by the closed-form bounds.
fn builder_configs() -> Vec<(FamilySpec, usize, usize)> {
    vec![
        (FamilySpec::laguerre(v("-0.5")).unwrap(), 3, 6),
        (FamilySpec::laguerre(v("10")).unwrap(), 4, 8),
        (FamilySpec::laguerre(v("10")).unwrap(), 4, 0),
        (FamilySpec::little_q_jacobi(v("0.5"), v("1"), v("0.6")).unwrap(), 2, 4),
        (FamilySpec::alt_q_charlier(v("0.5"), v("0.55")).unwrap(), 2, 4),
        (FamilySpec::alt_q_charlier(v("0.5"), v("0.55")).unwrap(), 3, 6),
    ]
}

#[test]
fn general4_residuals() {
    let tol = identity_tol(P);
    let mut r = rng(3);
    for (fam, m, k) in builder_configs() {
        for n in [10, 20] {
            let c = CSpec::monomial(k, P);
            let mr = build_mixed_recurrence(&fam, n, m, &c, P).unwrap();
            assert!(!mr.degree_warning);
            assert_eq!(mr.g.degree(), Some(m - 1), "{:?} m={m} k={k}", fam.id());
            for _ in 0..10 {
                let x = random_point(&fam, n, &mut r, P);
                let res = mr.residual(&x).unwrap();
                assert!(res < tol, "{:?} n={n} m={m} k={k}: {res:?}", fam.id());
            }
        }
    }
}

#[test]
fn christoffel_proportional_to_shifted_family() {
    let cases = [
        FamilySpec::laguerre(v("0.5")).unwrap(),
        FamilySpec::little_q_jacobi(v("0.5"), v("1"), v("0.6")).unwrap(),
        FamilySpec::alt_q_charlier(v("0.5"), v("0.55")).unwrap(),
    ];
    let pts = ["0.11", "0.27", "0.43", "0.71", "0.89"];
    for fam in cases {
        for k in [1, 2, 4, 6] {
            let n = 7;
            let shifted = fam.shifted_by_monomial(k, P).unwrap();
            let srec = Recurrence::for_family(&shifted, n, P).unwrap();
            let c = CSpec::monomial(k, P);
            let ratios: Vec<BigReal> = pts
                .iter()
                .map(|s| {
                    let x = v(s);
                    let det = christoffel_eval(&fam, n, &c, &x, P).unwrap();
                    det / (c.eval(&x) * srec.eval(n, &x).unwrap())
                })
                .collect();
            for q in &ratios[1..] {
                assert!(BigReal::rel_diff(q, &ratios[0]) < v("1e-30"), "{:?} k={k}", fam.id());
            }
        }
    }
}

#[test]
fn christoffel_non_monomial_is_orthogonal_polynomial_of_modified_weight() {
    // c = (x - 0)(x + 1) for Laguerre: the determinant / c must be a degree-n
    // polynomial, i.e. the determinant vanishes at the zeros of c.
    let fam = FamilySpec::laguerre(v("1.5")).unwrap();
    let c = CSpec::new(vec![(v("0"), 1), (v("-1"), 1)]);
    for z in ["0", "-1"] {
        let d = christoffel_eval(&fam, 6, &c, &v(z), P).unwrap();
        assert!(d.abs() < v("1e-60"), "{d:?}");
    }
    // a repeated zero where the determinant is singular is reported
    let deg = CSpec::new(vec![(v("0"), 1), (v("0"), 1)]);
    assert!(christoffel_eval(&fam, 6, &deg, &v("1"), P).is_err());
}

#[test]
fn degree_law_grid() {
    let fam = FamilySpec::laguerre(v("0.5")).unwrap();
    for m in 2..=4 {
        for k in 0..=(2 * m).min(8) {
            let mr = build_mixed_recurrence(&fam, 12, m, &CSpec::monomial(k, P), P).unwrap();
            let (dg, dr) = degree_law(m, k);
            assert_eq!(mr.g.degree(), Some(dg), "m={m} k={k}");
            assert_eq!(mr.r.degree(), Some(dr), "m={m} k={k}");
        }
    }
    // outside k <= 2m the builder warns and G grows
    let mr = build_mixed_recurrence(&fam, 12, 2, &CSpec::monomial(6, P), P).unwrap();
    assert!(mr.degree_warning);
    assert_eq!(mr.g.degree(), Some(degree_law(2, 6).0));
}

#[test]
fn m2_without_shift_is_linear_recurrence_factor() {
    for fam in one_per_family() {
        let mr = build_mixed_recurrence(&fam, 9, 2, &CSpec::empty(), P).unwrap();
        let rec = Recurrence::for_family(&fam, 9, P).unwrap();
        let root = &mr.g_roots().unwrap()[0];
        assert!(BigReal::rel_diff(root, rec.c(9)) < v("1e-60"));
    }
}

fn same_roots(a: &[BigReal], b: &[BigReal], what: &str) {
    assert_eq!(a.len(), b.len(), "{what}: {a:?} vs {b:?}");
    for (x, y) in a.iter().zip(b) {
        assert!(BigReal::rel_diff(x, y) < v("1e-25"), "{what}: {x:?} vs {y:?}");
    }
}

fn g_roots(fam: &FamilySpec, n: usize, m: usize, k: usize, prec: usize) -> Vec<BigReal> {
    build_mixed_recurrence(fam, n, m, &CSpec::monomial(k, prec), prec)
        .unwrap()
        .g_roots()
        .unwrap()
}

fn roots(p: &Poly) -> Vec<BigReal> {
    ortho_bounds_core::zeros::low_degree_roots(p).unwrap()
}

#[test]
fn closed_forms_match_builder() {
    for (n, a) in [(10, "-0.5"), (10, "10"), (100, "10"), (100, "-0.5")] {
        let al = v(a);
        let fam = FamilySpec::laguerre(al.clone()).unwrap();
        same_roots(&roots(&bounds::laguerre_g2_shift6(n, &al)), &g_roots(&fam, n, 3, 6, P), "lag m3");
        same_roots(&roots(&bounds::laguerre_g3_shift8(n, &al)), &g_roots(&fam, n, 4, 8, P), "lag m4 k8");
        same_roots(&roots(&bounds::laguerre_g3_unshifted(n, &al)), &g_roots(&fam, n, 4, 0, P), "lag m4 k0");
        let rep = bounds::laguerre_bounds(n, &al, P).unwrap();
        let g2 = g_roots(&fam, n, 3, 6, P);
        same_roots(
            &[rep.value("b3_minus").unwrap().clone(), rep.value("b3_plus").unwrap().clone()],
            &g2,
            "lag b3",
        );
    }
    for (n, b, q) in [(10, "1", "0.6"), (30, "-10", "0.6"), (100, "-10", "0.9")] {
        let p = if n >= 70 { 512 } else { P };
        let fam = FamilySpec::little_q_jacobi(vp("0.5", p), vp(b, p), vp(q, p)).unwrap();
        let b2 = bounds::little_qjacobi_upper_x1(n, &vp("0.5", p), &vp(b, p), &vp(q, p), p).unwrap();
        same_roots(&[b2], &g_roots(&fam, n, 2, 4, p), "lqj b2");
    }
    for (n, q, a) in [(10, "0.55", "0.5"), (10, "0.99", "10"), (10, "0.45", "100"), (70, "0.45", "10"), (70, "0.8", "100")]
    {
        let p = if n >= 70 { 512 } else { P };
        let fam = FamilySpec::alt_q_charlier(vp(a, p), vp(q, p)).unwrap();
        let rep = bounds::alt_qcharlier_bounds(n, &vp(a, p), &vp(q, p), p).unwrap();
        same_roots(&[rep.value("b2_upper_x1").unwrap().clone()], &g_roots(&fam, n, 2, 4, p), "aqc b2");
        same_roots(&[rep.value("b3_upper_x1").unwrap().clone()], &g_roots(&fam, n, 3, 6, p)[..1], "aqc b3");
        same_roots(&[rep.value("bn_upper_x1").unwrap().clone()], &g_roots(&fam, n, 2, 0, p), "aqc bn");
    }
    for (n, q) in [(10, "0.5"), (10, "0.9"), (70, "0.5"), (70, "0.9")] {
        let p = if n >= 70 { 512 } else { P };
        let fam = FamilySpec::stieltjes_wigert(vp(q, p)).unwrap();
        let rep = bounds::stieltjes_wigert_lower_xn(n, &vp(q, p), p).unwrap();
        let m3 = corollary_inner_bounds(&fam, n, 3, p).unwrap();
        let m4 = corollary_inner_bounds(&fam, n, 4, p).unwrap();
        same_roots(&[rep.value("b3_lower_xn").unwrap().clone()], &[m3.hi], "sw b3");
        same_roots(&bounds::stieltjes_wigert_a3_roots(n, &vp(q, p), p).unwrap(), &m4.zeros, "sw a3");
        same_roots(&roots(&bounds::stieltjes_wigert_g2(n, &vp(q, p))), &m3.zeros, "sw g2");
    }
    for (n, q) in [(10, "0.5"), (10, "0.98"), (100, "0.5"), (100, "0.98")] {
        let p = if n >= 70 { 512 } else { P };
        let fam = FamilySpec::discrete_q_hermite_ii(vp(q, p)).unwrap();
        let rep = bounds::qhermite2_bounds(n, &vp(q, p), p).unwrap();
        let m5 = corollary_inner_bounds(&fam, n, 5, p).unwrap();
        same_roots(&[rep.value("b5_lower_xn").unwrap().clone()], std::slice::from_ref(&m5.hi), "qh b5");
        same_roots(&[rep.value("b5_upper_x1").unwrap().clone()], &[m5.lo], "qh -b5");
        same_roots(&roots(&bounds::qhermite2_g4(n, &vp(q, p))), &m5.zeros, "qh g4");
    }
}
