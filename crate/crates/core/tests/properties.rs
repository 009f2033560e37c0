//! Structural properties: positivity of the recurrence, reality, simplicity
//! and location of zeros, interlacing, the bound sandwich and the completed
//! interlacing of the mixed-recurrence factors.

mod common;

use common::*;
use nalgebra::DMatrix;
use ortho_bounds_core::bounds::{bounds_for, verify_bound_report};
use ortho_bounds_core::zeros::{common_zeros, family_zeros, interlacing_violations};
use ortho_bounds_core::{BigReal, FamilySpec, Recurrence};
use proptest::prelude::*;

fn rtol() -> BigReal {
    v("1e-40")
}

#[test]
fn lambda_positive_on_grid() {
    for fam in grid() {
        let rec = Recurrence::for_family(&fam, 60, P).unwrap();
        for n in 2..=60 {
            assert!(rec.lambda(n).is_positive(), "{:?} n={n}", fam.id());
        }
    }
}

#[test]
fn zeros_real_simple_in_support_and_interlacing() {
    for fam in grid() {
        let support = fam.support(P);
        let mut prev: Vec<BigReal> = Vec::new();
        for n in 1..=30 {
            let zs = family_zeros(&fam, n, &rtol(), P).unwrap();
            assert_eq!(zs.zeros.len(), n, "{:?} n={n}", fam.id());
            for z in &zs.zeros {
                // Near a finite endpoint the true gap can be below the working
                // resolution (e.g. 1 - x_{19,19} ~ 1e-86 for little q-Jacobi at
                // q = 0.6); accept a zero that rounds onto the endpoint.
                let at_end = [&support.lo, &support.hi]
                    .into_iter()
                    .flatten()
                    .any(|e| BigReal::rel_diff(z, e) <= identity_tol(P) || (z - e).abs() <= identity_tol(P));
                assert!(support.contains(z) || at_end, "{:?} n={n}: {z:?} outside support", fam.id());
            }
            for w in zs.zeros.windows(2) {
                assert!(w[0] < w[1], "{:?} n={n}: zeros not simple", fam.id());
            }
            // zeros that coincide at working precision are excused
            let tol = v("1e-20");
            let common = common_zeros(&zs.zeros, &prev, &tol);
            let strict: Vec<_> = interlacing_violations(&zs.zeros, &prev)
                .into_iter()
                .filter(|(i, _, _)| !common.iter().any(|c| BigReal::rel_diff(c, &prev[*i]) <= tol))
                .collect();
            assert!(strict.is_empty(), "{:?} n={n}: {strict:?}", fam.id());
            prev = zs.zeros;
        }
    }
}

#[test]
fn zeros_match_jacobi_matrix_eigenvalues() {
    for fam in grid() {
        for n in [5, 15, 40] {
            let rec = Recurrence::for_family(&fam, n, P).unwrap();
            let mut j = DMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                j[(i, i)] = rec.c(i + 1).to_f64();
                if i + 1 < n {
                    let off = rec.lambda(i + 2).to_f64().sqrt();
                    j[(i, i + 1)] = off;
                    j[(i + 1, i)] = off;
                }
            }
            let mut eig: Vec<f64> = j.symmetric_eigen().eigenvalues.iter().copied().collect();
            eig.sort_by(f64::total_cmp);
            let zs = family_zeros(&fam, n, &rtol(), P).unwrap();
            let scale = zs.zeros.iter().map(|z| z.to_f64().abs()).fold(0.0, f64::max);
            for (z, e) in zs.zeros.iter().zip(&eig) {
                assert!((z.to_f64() - e).abs() <= 1e-8 * scale, "{:?} n={n}: {z:?} vs {e}", fam.id());
            }
        }
    }
}

#[test]
fn sandwich_and_completed_interlacing_grid() {
    let mut failures = Vec::new();
    for fam in grid() {
        for n in [6, 10, 20] {
            let report = match bounds_for(&fam, n, P) {
                Ok(r) => r,
                Err(e) => panic!("{:?} n={n}: {e:?}", fam.id()),
            };
            let zs = family_zeros(&fam, n, &rtol(), P).unwrap();
            let check = verify_bound_report(&report, &zs, P).unwrap();
            if !check.holds {
                failures.push(format!("{:?} {:?} n={n}: {check:?}", fam.id(), fam.params().collect::<Vec<_>>()));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn laguerre_bounds_sandwich(alpha in -0.95f64..30.0, n in 5usize..25) {
        let fam = FamilySpec::laguerre(BigReal::from_f64(alpha, P)).unwrap();
        let report = bounds_for(&fam, n, P).unwrap();
        let zs = family_zeros(&fam, n, &rtol(), P).unwrap();
        let check = verify_bound_report(&report, &zs, P).unwrap();
        prop_assert!(check.holds, "{check:?}");
    }

    #[test]
    fn alt_qcharlier_bounds_sandwich(alpha in 0.01f64..100.0, q in 0.05f64..0.95, n in 5usize..20) {
        let fam = FamilySpec::alt_q_charlier(BigReal::from_f64(alpha, P), BigReal::from_f64(q, P)).unwrap();
        let report = bounds_for(&fam, n, P).unwrap();
        let zs = family_zeros(&fam, n, &rtol(), P).unwrap();
        let check = verify_bound_report(&report, &zs, P).unwrap();
        prop_assert!(check.holds, "{check:?}");
    }

    #[test]
    fn count_zeros_above_is_monotone(x in -5.0f64..50.0, dx in 0.0f64..10.0, n in 1usize..30) {
        let fam = FamilySpec::laguerre(v("0.5")).unwrap();
        let rec = Recurrence::for_family(&fam, n, P).unwrap();
        let a = rec.count_zeros_above(n, &BigReal::from_f64(x, P));
        let b = rec.count_zeros_above(n, &BigReal::from_f64(x + dx, P));
        prop_assert!(b <= a && a <= n);
    }
}
